#include <doctest.h>

#include <algorithm>
#include <set>

#include <nlohmann/json.hpp>

#include "truncinv/basis.hpp"
#include "truncinv/expr.hpp"
#include "truncinv/invariants.hpp"
#include "truncinv/series.hpp"

using namespace truncinv;
using basis::YIndex;
using mpoly::MPoly;

TEST_SUITE("basis") {

TEST_CASE("q-integers") {
  CHECK(basis::q_int(0, 5) == 0);
  CHECK(basis::q_int(1, 5) == 1);
  CHECK(basis::q_int(3, 2) == 7);
  CHECK(basis::q_int(2, 3) == 4);
}

TEST_CASE("small bases") {
  for (std::uint64_t q : {2, 3, 4})
    for (std::size_t n = 1; n <= 3; ++n) CHECK(basis::enumerate_basis(q, 0, n).size() == 1);
  for (std::uint64_t q : {2, 3})
    for (std::uint32_t m = 0; m <= 3; ++m) CHECK(basis::enumerate_basis(q, m, 1).size() == basis::q_int(m, q) + 1);

  auto B = basis::enumerate_basis(2, 1, 2);
  std::set<YIndex> got(B.begin(), B.end());
  std::set<YIndex> want{YIndex{1, {1}, {0}}, YIndex{1, {1}, {1}}, YIndex{1, {0, 0}, {0, 0}}};
  CHECK(got == want);
}

TEST_CASE("recursive and closed enumerations agree") {
  for (std::uint64_t q : {2, 3, 4})
    for (std::uint32_t m = 0; m <= 3; ++m)
      for (std::size_t n = 1; n <= 4; ++n) {
        auto a = basis::enumerate_inductive(q, m, n), b = basis::enumerate_closed(q, m, n);
        std::sort(a.begin(), a.end(), basis::canonical_less);
        std::sort(b.begin(), b.end(), basis::canonical_less);
        CHECK(a == b);
        for (const auto& y : b) CHECK(basis::is_basis_index(y, q, m, n));
      }
}

TEST_CASE("basis size is the series at t = 1") {
  for (std::uint64_t q : {2, 3})
    for (std::uint32_t m = 0; m <= 3; ++m)
      for (std::size_t n = 1; n <= 3; ++n)
        CHECK(static_cast<std::int64_t>(basis::enumerate_basis(q, m, n).size()) ==
              series::f_nm(n, m, q).value_at_one());
}

TEST_CASE("phi on indices") {
  for (std::uint32_t j = 0; j <= 3; ++j) CHECK(basis::phi(YIndex{2, {0}, {j}}) == YIndex{3, {0, 0}, {0, j}});
  CHECK(basis::yindex_from_json(basis::to_json(YIndex{2, {0, 1}, {1, 0}})) == YIndex{2, {0, 1}, {1, 0}});
}

TEST_CASE("smallest monomial formula") {
  for (std::uint64_t q : {2, 3})
    for (std::uint32_t j = 0; j <= 2; ++j) {
      auto mono = basis::smallest_monomial(YIndex{2, {0}, {j}}, q, 2);
      CHECK(mono == mpoly::Monomial{static_cast<mpoly::Exp>(j * (q - 1))});
    }
  CHECK(basis::smallest_monomial(YIndex{1, {1}, {1}}, 2, 1) == mpoly::Monomial{1, 1});
  // against evaluation, small grid
  for (std::uint32_t q : {2u, 3u}) {
    auto F = gf::field_new(q, 1);
    expr::Evaluator ev(F);
    for (std::uint32_t m = 1; m <= 2; ++m)
      for (std::size_t n = 1; n <= 2; ++n)
        for (const auto& y : basis::enumerate_basis(q, m, n))
          CHECK(mpoly::leading_monomial(ev.eval_poly(basis::y_expr(y))) == basis::smallest_monomial(y, q, m));
  }
}

TEST_CASE("nabla and Delta") {
  for (std::uint64_t q : {2, 3})
    for (std::uint32_t m = 1; m <= 3; ++m) {
      CHECK(basis::nabla(q, m, 0).size() == 1);
      const auto n1 = basis::nabla(q, m, 1);
      CHECK(n1.size() == basis::q_int(m, q));
      std::vector<std::uint64_t> degs;
      for (const auto& c : n1) degs.push_back(basis::nabla_degree(q, c));
      std::sort(degs.begin(), degs.end());
      for (std::size_t k = 0; k < degs.size(); ++k) CHECK(degs[k] == k * (q - 1));
    }
}

TEST_CASE("GL candidates for n = 2") {
  for (std::uint32_t q : {2u, 3u}) {
    auto F = gf::field_new(q, 1);
    expr::Evaluator ev(F);
    for (std::uint32_t m = 1; m <= 2; ++m) {
      const auto C = basis::gl_candidate_basis(q, m, 2);
      std::size_t want = 0;
      for (std::size_t s = 0; s <= std::min<std::size_t>(m, 2); ++s) want += basis::nabla(q, m, s).size();
      CHECK(C.size() == want);
      const auto top = MPoly::variable(F, 2, 0).pow(inv::qpow(q, m) - 1) * MPoly::variable(F, 2, 1).pow(inv::qpow(q, m) - 1);
      CHECK(std::any_of(C.begin(), C.end(), [&](const auto& c) { return ev.eval_poly(c.node) == top; }));
    }
  }
}

TEST_CASE("parabolic candidates") {
  for (std::uint64_t q : {2, 3})
    for (std::uint32_t m = 1; m <= 2; ++m) {
      CHECK(basis::parabolic_candidate_basis(q, m, {1, 1}).size() == basis::enumerate_basis(q, m, 2).size());
      CHECK(basis::parabolic_candidate_basis(q, m, {2}).size() == basis::gl_candidate_basis(q, m, 2).size());
    }
  CHECK_THROWS_AS(basis::parabolic_candidate_basis(2, 1, {}), Error);
  CHECK_THROWS_AS(basis::parabolic_candidate_basis(2, 1, {1, 0}), Error);
}

TEST_CASE("parse compositions") {
  CHECK(basis::parse_composition("1,2") == std::vector<std::size_t>{1, 2});
  for (const char* bad : {"", "1,,2", "0", "a", "1,-1"}) CHECK_THROWS_AS(basis::parse_composition(bad), Error);
}

}
