#include <doctest.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <sys/wait.h>

#include "truncinv/harness.hpp"

using namespace truncinv;
using groups::GroupSpec;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run cli(const std::string& args) {
  const std::string cmd = std::string(TRUNCINV_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p);
  std::array<char, 4096> buf;
  while (std::size_t k = std::fread(buf.data(), 1, buf.size(), p)) r.out.append(buf.data(), k);
  const int st = pclose(p);
  r.code = WIFEXITED(st) ? WEXITSTATUS(st) : -1;
  return r;
}

fs::path scratch_dir(const std::string& tag) {
  auto d = fs::temp_directory_path() / ("truncinv_test_" + tag + "_" + std::to_string(::getpid()));
  fs::remove_all(d);
  return d;
}

}

TEST_SUITE("harness") {

TEST_CASE("Borel pipeline on the smallest cases") {
  auto F = gf::field_new(2, 1);
  const auto r = harness::verify_borel(F, 1, 2);
  CHECK(r.passed());
  REQUIRE(r.computed.has_value());
  CHECK(*r.computed == series::TSeries({1, 1, 1}));
  CHECK(r.basis_count == 3);
  CHECK(r.orbit_count == 3);
  CHECK(r.flag_count == 3);
  for (std::size_t n = 1; n <= 3; ++n) {
    const auto t = harness::verify_borel(F, 0, n);
    CHECK(t.passed());
    CHECK(t.basis_count == 1);
  }
  const auto d = harness::verify_borel(F, 2, 2);
  CHECK(d.passed());
  CHECK(*d.computed == series::borel_n2_display(2, 2));
}

TEST_CASE("conjecture pipelines report as conjectures") {
  auto F = gf::field_new(2, 1);
  const auto g = harness::verify_gl(F, 2, 2);
  CHECK(g.conjecture);
  CHECK(g.passed());
  const auto p = harness::verify_parabolic(F, 2, {1, 2});
  CHECK(p.conjecture);
  CHECK(p.passed());
  CHECK(p.group == "parabolic(1,2)");
}

TEST_CASE("cached oracle matches the uncached one") {
  auto F = gf::field_new(3, 1);
  const auto dir = scratch_dir("cache");
  ResultCache cache(dir);
  harness::Options with;
  with.cache = &cache;
  for (const auto& spec : {GroupSpec::borel(2), GroupSpec::gl(2)}) {
    const auto plain = harness::oracle(F, spec, 2, {});
    const auto first = harness::oracle(F, spec, 2, with);   // fills the cache
    const auto second = harness::oracle(F, spec, 2, with);  // reads it back
    REQUIRE(plain.size() == second.size());
    for (const auto& [d, di] : plain) {
      CHECK(first.at(d).dim == di.dim);
      CHECK(second.at(d).dim == di.dim);
      CHECK(second.at(d).basis == di.basis);
    }
  }
  CHECK(!fs::is_empty(dir));
  const auto a = harness::verify_borel(F, 2, 2, with);
  const auto b = harness::verify_borel(F, 2, 2);
  CHECK(a.passed() == b.passed());
  CHECK(a.computed == b.computed);
  fs::remove_all(dir);
}

TEST_CASE("cache round trip") {
  const auto dir = scratch_dir("rt");
  ResultCache cache(dir);
  CHECK_FALSE(cache.get("k/with:odd chars").has_value());
  cache.put("k/with:odd chars", nlohmann::json{{"x", 1}});
  CHECK(cache.get("k/with:odd chars") == nlohmann::json{{"x", 1}});
  CHECK_FALSE(cache.get("k_with_odd_chars").has_value());
  fs::remove_all(dir);
}

TEST_CASE("grid helpers and formats") {
  CHECK(harness::compositions(3).size() == 4);
  CHECK(harness::default_grid().size() == 12 + 6 + 2);
  auto F = gf::field_new(2, 1);
  std::vector<harness::VerifyReport> rs{harness::verify_borel(F, 1, 1)};
  for (const char* f : {"text", "json", "csv", "latex"})
    CHECK_FALSE(harness::format_reports(rs, harness::parse_format(f)).empty());
  CHECK_THROWS_AS(harness::parse_format("yaml"), Error);
  const auto j = nlohmann::json::parse(harness::format_reports(rs, harness::Format::Json));
  CHECK(j[0]["status"] == "pass");
}

TEST_CASE("failing checks carry a witness") {
  harness::VerifyReport r;
  r.add("x", false, nlohmann::json{{"degree", 3}});
  r.add("y", true);
  CHECK_FALSE(r.passed());
  CHECK(r.find("x")->witness["degree"] == 3);
  CHECK(r.find("y")->witness.is_null());
}

TEST_CASE("CLI") {
  {
    const auto r = cli("verify --field 2 --m 1 --n 2 --group borel");
    CHECK(r.code == 0);
    CHECK(r.out.find("1 + t + t^2") != std::string::npos);
  }
  {
    const auto r = cli("basis --field 2 --m 1 --n 2 --format json");
    CHECK(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["size"] == 3);
  }
  {
    const auto r = cli("hilbert --field 2 --m 2 --n 2 --alpha 1,1");
    CHECK(r.code == 0);
    CHECK(r.out.find(series::to_string(series::borel_n2_display(2, 2))) != std::string::npos);
  }
  CHECK(cli("orbits --field 2 --m 1 --n 2").code == 0);
  CHECK(cli("verify --field 4 --m 1 --n 1").code == 1);
  CHECK(cli("verify --field 2 --m 1 --n 2 --group parabolic --alpha 1,0").code == 1);
  CHECK(cli("verify --no-such-flag").code == 1);
  CHECK(cli("").code == 1);
  CHECK(cli("orbits --field 2 --m 8 --n 8").code == 4);
}

}
