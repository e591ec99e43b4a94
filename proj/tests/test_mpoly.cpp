#include <doctest.h>

#include <random>

#include "truncinv/harness.hpp"
#include "truncinv/invariants.hpp"
#include "truncinv/mpoly.hpp"

using namespace truncinv;
using mpoly::Monomial;
using mpoly::MPoly;

namespace {
MPoly P(const gf::FieldPtr& F, std::size_t n, const char* s) { return mpoly::parse_poly(F, n, s); }
}

TEST_SUITE("mpoly") {

TEST_CASE("ring ops") {
  auto f2 = gf::field_new(2, 1);
  auto x = P(f2, 2, "x1 + x2");
  CHECK(x * x == P(f2, 2, "x1^2 + x2^2"));
  CHECK(x + MPoly(f2, 2) == x);
  auto f3 = gf::field_new(3, 1);
  CHECK(P(f3, 2, "x1 + x2") * P(f3, 2, "x1 + 2*x2") == P(f3, 2, "x1^2 + 2*x2^2"));
}

TEST_CASE("text round trip and grlex order") {
  auto F = gf::field_new(3, 1);
  auto f = P(F, 3, "2*x1*x3 + x2^2 + x1^2 - 1");
  CHECK(mpoly::to_string(f) == "x1^2 + 2*x1*x3 + x2^2 + 2");
  CHECK(P(F, 3, mpoly::to_string(f).c_str()) == f);
  CHECK(mpoly::from_json(F, 3, mpoly::to_json(f)) == f);
}

TEST_CASE("apply_matrix") {
  auto F = gf::field_new(2, 1);
  auto f = P(F, 2, "x1*x2");
  std::vector<gf::Code> id{1, 0, 0, 1}, tr{1, 1, 0, 1};
  CHECK(mpoly::apply_matrix(f, id, 2) == f);
  CHECK(mpoly::apply_matrix(f, tr, 2) == P(F, 2, "x1*x2 + x1^2"));
  auto F5 = gf::field_new(5, 1);
  auto g = P(F5, 2, "x1^4");
  std::vector<gf::Code> diag{3, 0, 0, 1};
  CHECK(mpoly::apply_matrix(g, diag, 2) == g);
}

TEST_CASE("remap_vars and embed") {
  auto F = gf::field_new(2, 1);
  std::vector<std::size_t> m1{1};
  CHECK(mpoly::remap_vars(P(F, 1, "x1^3"), m1, 3) == P(F, 3, "x2^3"));
  std::vector<std::size_t> m2{1, 2};
  CHECK(mpoly::remap_vars(P(F, 2, "x1 + x2^2"), m2, 3) == P(F, 3, "x2 + x3^2"));
  std::vector<std::size_t> bad{0, 0};
  CHECK_THROWS_AS(mpoly::remap_vars(P(F, 2, "x1"), bad, 2), Error);
  CHECK(mpoly::embed(P(F, 1, "x1"), 2) == P(F, 2, "x1"));
}

TEST_CASE("det_poly") {
  auto F = gf::field_new(3, 1);
  auto x1 = P(F, 2, "x1"), x2 = P(F, 2, "x2");
  CHECK(mpoly::det_poly({{x1}}) == x1);
  const auto L2 = mpoly::det_poly({{x1, x2}, {x1.pow(3), x2.pow(3)}});
  CHECK(L2 == P(F, 2, "x1*x2^3 - x2*x1^3"));
  CHECK(mpoly::det_poly({{x1, x2}, {x1, x2}}).is_zero());
  CHECK(L2 == inv::moore_L(F, 2, 2));
  // Laplace and Bareiss agree on a random 4x4
  std::mt19937_64 rng(7);
  mpoly::PolyMatrix M(4, std::vector<MPoly>(4, MPoly(F, 2)));
  for (auto& row : M)
    for (auto& e : row) e = harness::random_poly(F, 2, 3, 2, rng);
  CHECK(mpoly::det_poly(M, mpoly::DetMethod::Laplace) == mpoly::det_poly(M, mpoly::DetMethod::FractionFree));
}

TEST_CASE("exact division") {
  for (auto q : {2u, 3u}) {
    auto F = gf::field_new(q, 1);
    const auto L2 = inv::moore_L(F, 2, 2), L1 = inv::moore_L(F, 1, 2);
    CHECK(mpoly::exact_div(L2, MPoly::one(F, 2)) == L2);
    CHECK(mpoly::exact_div(L2, L1) == inv::v_poly(F, std::vector<std::size_t>{0}, 1, 2));
    CHECK_THROWS_AS(mpoly::exact_div(L2, P(F, 2, "x1 + 1")), mpoly::NotDivisibleError);
    CHECK_THROWS_AS(mpoly::exact_div(L2, MPoly(F, 2)), Error);
  }
}

TEST_CASE("truncate") {
  auto F = gf::field_new(2, 1);
  CHECK(mpoly::truncate(P(F, 2, "x1^2 + x1*x2"), mpoly::make_truncation(2, 1)) == P(F, 2, "x1*x2"));
  CHECK(mpoly::truncate(MPoly(F, 2), mpoly::make_truncation(2, 1)).is_zero());
  CHECK(mpoly::truncate(P(F, 2, "x1^3*x2^4"), mpoly::make_truncation(2, 2)).is_zero());
}

TEST_CASE("smallest and largest monomials") {
  auto F = gf::field_new(2, 1);
  CHECK(mpoly::leading_monomial(P(F, 2, "x1^2 + x1*x2 + x2^2")) == Monomial{0, 2});
  CHECK(mpoly::leading_monomial(P(F, 1, "1 + x1")) == Monomial{0});
  CHECK(mpoly::largest_monomial(P(F, 2, "x1^2 + x1*x2 + x2^2")) == Monomial{2, 0});
  CHECK_THROWS_AS(mpoly::leading_monomial(MPoly(F, 2)), Error);
}

TEST_CASE("frobenius is the q-th power") {
  auto F = gf::field_new(2, 2);
  std::mt19937_64 rng(3);
  for (int t = 0; t < 5; ++t) {
    auto f = harness::random_poly(F, 3, 4, 3, rng);
    CHECK(mpoly::frobenius(f) == f.pow(4));
  }
}

TEST_CASE("ring axioms on random inputs") {
  std::mt19937_64 rng(11);
  for (const char* fn : {"2", "3", "2^2"}) {
    auto F = gf::parse_field(fn);
    for (int t = 0; t < 10; ++t) {
      auto a = harness::random_poly(F, 3, 5, 4, rng), b = harness::random_poly(F, 3, 5, 4, rng),
           c = harness::random_poly(F, 3, 5, 4, rng);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a - a == MPoly(F, 3));
      CHECK(mpoly::exact_div(a * b, b) == a);
    }
  }
}

}
