// truncinv: command-line front end for the basis, series, orbit and
// verification routines.
//
// Exit codes: 0 success, 1 usage error, 3 a verification check failed
// (the failing checks are written to stderr as JSON), 4 library error.

#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "truncinv/basis.hpp"
#include "truncinv/expr.hpp"
#include "truncinv/groups.hpp"
#include "truncinv/harness.hpp"
#include "truncinv/series.hpp"

using namespace truncinv;
using nlohmann::json;

namespace {

constexpr int kExitCheckFailed = 3;
constexpr int kExitError = 4;

struct Common {
  std::string field = "2";
  std::uint32_t m = 1;
  std::size_t n = 2;
  std::string group = "borel";
  std::string alpha;
  std::string format = "text";
  std::string cache_dir;
  std::uint64_t seed = 0;
  std::uint64_t max_cells = 50'000'000;
  unsigned threads = 1;
};

void add_case_flags(CLI::App* sub, Common& c, bool with_group, bool reports = false) {
  sub->add_option("--field", c.field, "Field as p or p^e")->capture_default_str();
  sub->add_option("--m", c.m, "Truncation exponent m (x_i^{q^m} = 0)")->capture_default_str();
  sub->add_option("--n", c.n, "Number of variables")->capture_default_str()->check(CLI::Range(1, 8));
  if (with_group) {
    sub->add_option("--group", c.group, "borel, gl or parabolic")
        ->capture_default_str()
        ->check(CLI::IsMember({"borel", "gl", "parabolic"}));
    sub->add_option("--alpha", c.alpha, "Composition of n, e.g. 1,2 (parabolic)");
  }
  if (reports)
    sub->add_option("--format", c.format, "text, json, csv or latex")
        ->capture_default_str()
        ->check(CLI::IsMember({"text", "json", "csv", "latex"}));
  else
    sub->add_option("--format", c.format, "text or json")->capture_default_str()->check(CLI::IsMember({"text", "json"}));
}

groups::GroupSpec make_spec(const Common& c) {
  if (c.group == "gl") return groups::GroupSpec::gl(c.n);
  if (c.group == "parabolic") {
    if (c.alpha.empty()) throw CLI::ValidationError("--alpha", "parabolic needs --alpha");
    auto spec = groups::GroupSpec::parabolic(basis::parse_composition(c.alpha));
    if (spec.n != c.n) throw CLI::ValidationError("--alpha", "composition must sum to --n");
    return spec;
  }
  return groups::GroupSpec::borel(c.n);
}

std::vector<std::size_t> alpha_of(const groups::GroupSpec& spec) { return spec.blocks(); }

int cmd_basis(const Common& c, bool eval) {
  const auto field = gf::parse_field(c.field);
  const auto spec = make_spec(c);
  const std::uint64_t q = field->q();
  expr::Evaluator ev(field);
  json out = json::array();
  if (spec.kind == groups::Kind::Borel) {
    for (const auto& y : basis::enumerate_basis(q, c.m, c.n)) {
      json j = basis::to_json(y);
      j["label"] = basis::to_string(y);
      j["degree"] = basis::smallest_monomial(y, q, c.m).degree();
      if (eval) j["poly"] = mpoly::to_string(ev.eval_poly(basis::y_expr(y)));
      out.push_back(std::move(j));
    }
  } else {
    const auto cands = spec.kind == groups::Kind::GL ? basis::gl_candidate_basis(q, c.m, c.n)
                                                     : basis::parabolic_candidate_basis(q, c.m, spec.alpha);
    for (const auto& cand : cands) {
      json j{{"label", cand.label}};
      if (eval) j["poly"] = mpoly::to_string(ev.eval_poly(cand.node));
      out.push_back(std::move(j));
    }
  }
  if (c.format == "json") {
    std::cout << json{{"field", field->name()}, {"m", c.m}, {"n", c.n}, {"group", spec.name()}, {"size", out.size()},
                      {"elements", out}}
                     .dump(2)
              << "\n";
  } else {
    std::cout << spec.name() << " q=" << field->name() << " m=" << c.m << " n=" << c.n << ": " << out.size()
              << " elements\n";
    for (const auto& j : out) {
      std::cout << "  " << j["label"].get<std::string>();
      if (j.contains("degree")) std::cout << "  deg " << j["degree"];
      if (j.contains("poly")) std::cout << "  = " << j["poly"].get<std::string>();
      std::cout << "\n";
    }
  }
  return 0;
}

int cmd_hilbert(const Common& c, bool with_oracle) {
  const auto field = gf::parse_field(c.field);
  const std::uint64_t q = field->q();
  std::vector<std::size_t> alpha = c.alpha.empty() ? std::vector<std::size_t>(c.n, 1) : basis::parse_composition(c.alpha);
  std::size_t n = 0;
  for (auto a : alpha) n += a;
  const auto conj = series::c_alpha_m(q, c.m, alpha);
  json out{{"field", field->name()}, {"m", c.m}, {"alpha", alpha}, {"c_alpha", series::to_string(conj)},
           {"coeffs", series::to_json(conj)}};
  if (std::all_of(alpha.begin(), alpha.end(), [](auto a) { return a == 1; })) {
    out["f_recursive"] = series::to_string(series::f_nm(n, c.m, q));
    if (n == 2 && c.m >= 2) out["n2_display"] = series::to_string(series::borel_n2_display(q, c.m));
  }
  if (alpha.size() == 1) out["c_gl"] = series::to_string(series::c_nm_gl(q, c.m, n));
  if (with_oracle) {
    const auto spec = alpha.size() == 1 ? groups::GroupSpec::gl(n) : groups::GroupSpec::parabolic(alpha);
    const bool borel = std::all_of(alpha.begin(), alpha.end(), [](auto a) { return a == 1; });
    std::map<std::uint64_t, std::size_t> dims;
    for (const auto& [d, di] : groups::invariant_dims(field, borel ? groups::GroupSpec::borel(n) : spec, c.m,
                                                      {c.max_cells, c.threads}))
      dims[d] = di.dim;
    out["oracle"] = series::to_string(series::hilbert_of_dims(dims));
  }
  if (c.format == "json") {
    std::cout << out.dump(2) << "\n";
  } else {
    for (auto it = out.begin(); it != out.end(); ++it)
      if (it.key() != "coeffs") std::cout << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
  }
  return 0;
}

int cmd_orbits(const Common& c) {
  const auto field = gf::parse_field(c.field);
  const auto spec = make_spec(c);
  json out{{"field", field->name()}, {"m", c.m}, {"n", c.n}, {"group", spec.name()},
           {"orbits", groups::orbit_count(field, spec, c.m)}};
  if (spec.kind == groups::Kind::Borel) {
    out["flags"] = series::flag_count(field->q(), c.m, c.n);
    out["basis"] = basis::enumerate_basis(field->q(), c.m, c.n).size();
  }
  out["c_alpha_at_1"] = series::c_alpha_m(field->q(), c.m, alpha_of(spec)).value_at_one();
  if (c.format == "json") std::cout << out.dump(2) << "\n";
  else
    for (auto it = out.begin(); it != out.end(); ++it)
      std::cout << it.key() << ": " << (it->is_string() ? it->get<std::string>() : it->dump()) << "\n";
  return 0;
}

int emit(const std::vector<harness::VerifyReport>& reports, const std::string& format) {
  std::cout << harness::format_reports(reports, harness::parse_format(format));
  json failures = json::array();
  for (const auto& r : reports) {
    if (r.passed()) continue;
    json f{{"case", r.case_id()}, {"failed", json::array()}};
    for (const auto& ch : r.checks)
      if (ch.status == harness::Status::Fail) f["failed"].push_back({{"check", ch.name}, {"witness", ch.witness}});
    failures.push_back(std::move(f));
  }
  if (failures.empty()) return 0;
  std::cerr << failures.dump() << "\n";
  return kExitCheckFailed;
}

harness::Options options(const Common& c, std::unique_ptr<ResultCache>& cache) {
  harness::Options o;
  o.threads = c.threads;
  o.max_cells = c.max_cells;
  o.seed = c.seed;
  if (!c.cache_dir.empty()) {
    cache = std::make_unique<ResultCache>(c.cache_dir);
    o.cache = cache.get();
  }
  return o;
}

int cmd_verify(const Common& c, bool grid) {
  std::unique_ptr<ResultCache> cache;
  const auto opt = options(c, cache);
  std::vector<harness::VerifyReport> reports;
  if (grid) {
    const auto g = c.group == "gl" ? harness::GroupChoice::GL
                   : c.group == "parabolic" ? harness::GroupChoice::Parabolic
                                            : harness::GroupChoice::Borel;
    auto pts = harness::default_grid();
    if (g != harness::GroupChoice::Borel) {
      // The conjecture grid: q = 2, m <= 3, n <= 3.
      std::erase_if(pts, [](const auto& p) { return p.field->q() != 2; });
    }
    reports = harness::run_grid(pts, g, opt);
  } else {
    const auto field = gf::parse_field(c.field);
    const auto spec = make_spec(c);
    switch (spec.kind) {
      case groups::Kind::Borel: reports.push_back(harness::verify_borel(field, c.m, c.n, opt)); break;
      case groups::Kind::GL: reports.push_back(harness::verify_gl(field, c.m, c.n, opt)); break;
      case groups::Kind::Parabolic: reports.push_back(harness::verify_parabolic(field, c.m, spec.alpha, opt)); break;
    }
  }
  return emit(reports, c.format);
}

int cmd_identities(const Common& c, std::size_t trials, bool composite) {
  std::unique_ptr<ResultCache> cache;
  const auto opt = options(c, cache);
  const auto field = gf::parse_field(c.field);
  harness::IdentityOptions io;
  io.random_trials = trials;
  io.composite = composite;
  std::vector<harness::VerifyReport> reports{harness::verify_identities(field, io, opt),
                                             harness::verify_dickson(field)};
  if (field->e() == 1) reports.push_back(harness::verify_nabla_delta(field->q()));
  return emit(reports, c.format);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bases and Hilbert series for invariants of truncated polynomial rings over finite fields"};
  app.require_subcommand(1);
  Common c;
  bool eval = false, with_oracle = false, grid = false, no_composite = false;
  std::size_t trials = 10;

  auto* basis_cmd = app.add_subcommand("basis", "List basis indices or candidate labels");
  add_case_flags(basis_cmd, c, true);
  basis_cmd->add_flag("--eval", eval, "Also print the polynomials");

  auto* hilbert_cmd = app.add_subcommand("hilbert", "Conjectured and recursive Hilbert series");
  add_case_flags(hilbert_cmd, c, false);
  hilbert_cmd->add_option("--alpha", c.alpha, "Composition (default 1^n)");
  hilbert_cmd->add_flag("--oracle", with_oracle, "Also compute the series from the invariant oracle");
  hilbert_cmd->add_option("--max-cells", c.max_cells, "Oracle size bound")->capture_default_str();

  auto* orbits_cmd = app.add_subcommand("orbits", "Count orbits on F_{q^m}^n");
  add_case_flags(orbits_cmd, c, true);

  auto* verify_cmd = app.add_subcommand("verify", "Verify a basis or candidate family against the oracle");
  add_case_flags(verify_cmd, c, true, true);
  verify_cmd->add_flag("--grid", grid, "Run the default grid instead of a single case");

  auto* id_cmd = app.add_subcommand("identities", "Run the operator identity suite");
  id_cmd->add_option("--field", c.field, "Field as p or p^e")->capture_default_str();
  id_cmd->add_option("--format", c.format, "text, json, csv or latex")
      ->capture_default_str()
      ->check(CLI::IsMember({"text", "json", "csv", "latex"}));
  id_cmd->add_option("--trials", trials, "Random inputs per case")->capture_default_str();
  id_cmd->add_flag("--no-composite", no_composite, "Skip the composite-delta grid");

  for (auto* sub : {verify_cmd, id_cmd, orbits_cmd}) {
    sub->add_option("--cache-dir", c.cache_dir, "Directory for cached oracle results");
    sub->add_option("--seed", c.seed, "Seed for randomized checks")->capture_default_str();
    sub->add_option("--threads", c.threads, "Worker threads")->capture_default_str();
  }
  verify_cmd->add_option("--max-cells", c.max_cells, "Oracle size bound")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }

  try {
    if (*basis_cmd) return cmd_basis(c, eval);
    if (*hilbert_cmd) return cmd_hilbert(c, with_oracle);
    if (*orbits_cmd) return cmd_orbits(c);
    if (*verify_cmd) return cmd_verify(c, grid);
    if (*id_cmd) return cmd_identities(c, trials, !no_composite);
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.code()) {
      case ErrorCode::ParseError:
      case ErrorCode::CompositionInvalid:
      case ErrorCode::NotPrime:
      case ErrorCode::FieldTooLarge: return 1;
      default: return kExitError;
    }
  }
  return 0;
}
