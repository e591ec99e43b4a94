#include <doctest.h>

#include <random>

#include "truncinv/harness.hpp"
#include "truncinv/invariants.hpp"
#include "truncinv/rational.hpp"

using namespace truncinv;
using mpoly::MPoly;
using rational::RationalFn;

TEST_SUITE("rational") {

TEST_CASE("as_poly") {
  auto F = gf::field_new(3, 1);
  auto f = mpoly::parse_poly(F, 2, "x1^2 + x2");
  CHECK(RationalFn(f).as_poly() == f);
  const auto V = RationalFn::quotient(inv::moore_L(F, 2, 2), inv::moore_L(F, 1, 2));
  CHECK(V.as_poly() == inv::v_poly(F, std::vector<std::size_t>{0}, 1, 2));
  const auto g = RationalFn::quotient(f, mpoly::parse_poly(F, 2, "x1 + x2"));
  CHECK((g + (-g)).as_poly().is_zero());
  CHECK_FALSE(g.try_poly().has_value());
  CHECK_THROWS_AS(g.as_poly(), Error);
  CHECK_THROWS_AS(RationalFn::quotient(f, MPoly(F, 2)), Error);
}

TEST_CASE("forms") {
  auto F = gf::field_new(3, 1);
  // [2]_3 = 4 normalized forms supported on x1, x2
  CHECK(rational::forms_up_to(*F, 3, 2).size() == 4);
  const auto fp = inv::moore_factored(F, 2, 2);
  CHECK(rational::forms_product(F, 2, fp.forms).scale(fp.scalar) == inv::moore_L(F, 2, 2));
}

TEST_CASE("field laws on random quotients") {
  std::mt19937_64 rng(5);
  auto F = gf::field_new(2, 1);
  auto rnd = [&] {
    auto den = inv::v_poly(F, std::vector<std::size_t>{0}, 1, 2) * harness::random_poly(F, 2, 2, 1, rng);
    return RationalFn::quotient(harness::random_poly(F, 2, 4, 3, rng), den);
  };
  for (int t = 0; t < 10; ++t) {
    auto a = rnd(), b = rnd(), c = rnd();
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + b == b + a);
    CHECK((a - a).is_zero());
    CHECK(a.simplify() == a);
  }
}

TEST_CASE("common denominator") {
  auto F = gf::field_new(3, 1);
  std::vector<RationalFn> fs{
      RationalFn::quotient(MPoly::one(F, 2), mpoly::parse_poly(F, 2, "x1")),
      RationalFn::quotient(MPoly::one(F, 2), mpoly::parse_poly(F, 2, "x1 + x2")),
  };
  const auto cd = rational::common_denominator(fs);
  const auto den = rational::forms_product(F, 2, cd.forms) * cd.rest;
  for (std::size_t i = 0; i < fs.size(); ++i) CHECK(RationalFn::quotient(cd.nums[i], den) == fs[i]);
}

}
