#include <doctest.h>

#include <random>

#include "truncinv/basis.hpp"
#include "truncinv/groups.hpp"
#include "truncinv/harness.hpp"
#include "truncinv/linalg.hpp"
#include "truncinv/series.hpp"

using namespace truncinv;
using groups::GroupSpec;
using mpoly::MPoly;

TEST_SUITE("groups") {

TEST_CASE("generators") {
  auto F = gf::field_new(2, 1);
  CHECK(groups::generators(F, GroupSpec::borel(1)).empty());
  const auto g = groups::generators(F, GroupSpec::borel(2));
  REQUIRE(g.size() == 1);
  CHECK(g[0].entries() == std::vector<gf::Code>{1, 1, 0, 1});
  CHECK(GroupSpec::parabolic({1, 2}).name() == "parabolic(1,2)");
  CHECK_THROWS_AS(GroupSpec::parabolic({}), Error);
}

TEST_CASE("generated group orders") {
  auto order = [](std::uint32_t q, GroupSpec s) { return groups::group_order(gf::field_new(q, 1), s); };
  // Borel: (q-1)^n q^{n(n-1)/2}
  CHECK(order(2, GroupSpec::borel(2)) == 2);
  CHECK(order(2, GroupSpec::borel(3)) == 8);
  CHECK(order(3, GroupSpec::borel(2)) == 12);
  CHECK(order(2, GroupSpec::gl(3)) == 168);
  CHECK(order(3, GroupSpec::gl(2)) == 48);
  // |GL_1| |GL_2| q^2
  CHECK(order(2, GroupSpec::parabolic({1, 2})) == 24);
  CHECK(order(2, GroupSpec::parabolic({2, 1})) == 24);
  CHECK(groups::group_order(gf::field_new(2, 2), GroupSpec::borel(2)) == 36);
}

TEST_CASE("determinants of generators are units") {
  auto F = gf::field_new(3, 1);
  for (const auto& g : groups::generators(F, GroupSpec::gl(3))) CHECK(groups::det(g) != 0);
}

TEST_CASE("action law") {
  // substituting x -> xA and then x -> xB gives x -> xBA
  std::mt19937_64 rng(2);
  for (const char* fn : {"2", "3"}) {
    auto F = gf::parse_field(fn);
    const auto gens = groups::generators(F, GroupSpec::gl(3));
    for (int t = 0; t < 5; ++t) {
      const auto f = harness::random_poly(F, 3, 4, 3, rng);
      for (const auto& A : gens)
        for (const auto& B : gens) {
          const auto lhs = mpoly::apply_matrix(mpoly::apply_matrix(f, A.entries(), 3), B.entries(), 3);
          CHECK(lhs == mpoly::apply_matrix(f, (B * A).entries(), 3));
        }
    }
  }
}

TEST_CASE("invariance") {
  auto F = gf::field_new(2, 1);
  const auto B2 = GroupSpec::borel(2);
  CHECK(groups::is_invariant(MPoly::one(F, 2), F, B2, 1));
  CHECK(groups::is_invariant(MPoly::variable(F, 2, 0), F, B2, 1));
  CHECK_FALSE(groups::is_invariant(MPoly::variable(F, 2, 1), F, B2, 1));
}

TEST_CASE("oracle dimensions") {
  auto F = gf::field_new(2, 1);
  {
    const auto d = groups::invariant_dims(F, GroupSpec::borel(3), 0);
    REQUIRE(d.size() == 1);
    CHECK(d.at(0).dim == 1);
  }
  {
    const auto d = groups::invariant_dims(F, GroupSpec::borel(2), 1);
    REQUIRE(d.size() == 3);
    for (std::uint64_t k = 0; k <= 2; ++k) CHECK(d.at(k).dim == 1);
  }
  {
    const auto d = groups::invariant_dims(F, GroupSpec::gl(2), 2);
    std::map<std::uint64_t, std::size_t> dims;
    for (const auto& [k, v] : d) dims[k] = v.dim;
    CHECK(series::hilbert_of_dims(dims) == series::c_nm_gl(2, 2, 2));
  }
  CHECK_THROWS_AS(groups::invariant_dims(F, GroupSpec::borel(3), 3, {.max_cells = 10}), Error);
}

TEST_CASE("kernel vectors are invariant") {
  for (const char* fn : {"2", "3"}) {
    auto F = gf::parse_field(fn);
    const auto spec = GroupSpec::borel(2);
    for (const auto& [deg, di] : groups::invariant_dims(F, spec, 1))
      for (const auto& v : di.basis) {
        CHECK(v.degree() == deg);
        CHECK(groups::is_invariant(v, F, spec, 1));
      }
  }
}

TEST_CASE("dimensions shrink as the group grows") {
  auto F = gf::field_new(2, 1);
  auto dims = [&](GroupSpec s) {
    std::map<std::uint64_t, std::size_t> m;
    for (const auto& [k, v] : groups::invariant_dims(F, s, 2)) m[k] = v.dim;
    return m;
  };
  const auto b = dims(GroupSpec::borel(3)), p = dims(GroupSpec::parabolic({1, 2})), g = dims(GroupSpec::gl(3));
  auto at = [](const auto& m, std::uint64_t d) { auto it = m.find(d); return it == m.end() ? 0 : it->second; };
  for (std::uint64_t d = 0; d <= 9; ++d) {
    CHECK(at(g, d) <= at(p, d));
    CHECK(at(p, d) <= at(b, d));
  }
}

TEST_CASE("family rank") {
  auto F = gf::field_new(3, 1);
  CHECK(groups::rank_of_family({}).total == 0);
  const auto x = MPoly::variable(F, 2, 0), y = MPoly::variable(F, 2, 1);
  CHECK(groups::rank_of_family({x, x, y, x + y}).total == 2);
  CHECK_THROWS_AS(groups::rank_of_family({x + MPoly::one(F, 2)}), Error);
}

TEST_CASE("orbits") {
  auto F = gf::field_new(2, 1);
  CHECK(groups::orbit_count(F, GroupSpec::borel(2), 1) == 3);
  for (std::uint32_t m = 0; m <= 2; ++m)
    for (std::size_t n = 1; n <= 3; ++n) {
      const auto o = groups::orbit_count(F, GroupSpec::borel(n), m);
      CHECK(o == series::flag_count(2, m, n));
      CHECK(o == basis::enumerate_basis(2, m, n).size());
    }
  CHECK_THROWS_AS(groups::orbit_count(F, GroupSpec::borel(3), 3, 100), Error);
}

TEST_CASE("row reduction") {
  auto F = gf::field_new(3, 1);
  linalg::Matrix a(2, 3);
  a.data = {1, 2, 0, 2, 1, 0};  // second row = 2 * first
  CHECK(linalg::rank(*F, a) == 1);
  const auto K = linalg::kernel(*F, a);
  CHECK(K.size() == 2);
  for (const auto& v : K)
    for (std::size_t i = 0; i < 2; ++i) {
      gf::Code s = 0;
      for (std::size_t j = 0; j < 3; ++j) s = F->add(s, F->mul(a.at(i, j), v[j]));
      CHECK(s == 0);
    }
}

}
