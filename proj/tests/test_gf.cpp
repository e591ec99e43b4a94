#include <doctest.h>

#include "truncinv/error.hpp"
#include "truncinv/gf.hpp"

using namespace truncinv;
using gf::FqElem;

TEST_SUITE("gf") {

TEST_CASE("prime fields") {
  auto f2 = gf::field_new(2, 1);
  CHECK(f2->q() == 2);
  CHECK(f2->add(1, 1) == 0);
  auto f3 = gf::field_new(3, 1);
  CHECK(f3->inv(2) == 2);
  CHECK(f3->name() == "3");
}

TEST_CASE("F4 modulus and x*x") {
  auto f4 = gf::field_new(2, 2);
  CHECK(f4->modulus() == std::vector<std::uint32_t>{1, 1, 1});
  // class of x has code 2 (coefficients (0,1))
  const gf::Code x = 2;
  CHECK(f4->mul(x, x) == f4->add(x, 1));
  CHECK(f4->name() == "2^2");
}

TEST_CASE("modulus is irreducible: no roots, x^(q-1) = 1 for all units") {
  for (auto [p, e] : {std::pair{2u, 3u}, {3u, 2u}, {5u, 2u}, {2u, 4u}}) {
    auto F = gf::field_new(p, e);
    for (gf::Code a = 1; a < F->q(); ++a) {
      CHECK(F->pow(a, F->q() - 1) == 1);
      CHECK(F->mul(a, F->inv(a)) == 1);
    }
  }
}

TEST_CASE("field axioms exhaustively on small fields") {
  for (const char* name : {"2", "3", "2^2", "3^2", "2^3"}) {
    auto F = gf::parse_field(name);
    const auto q = F->q();
    for (gf::Code a = 0; a < q; ++a)
      for (gf::Code b = 0; b < q; ++b) {
        CHECK(F->add(a, b) == F->add(b, a));
        CHECK(F->mul(a, b) == F->mul(b, a));
        CHECK(F->sub(F->add(a, b), b) == a);
        for (gf::Code c = 0; c < q; ++c)
          CHECK(F->mul(a, F->add(b, c)) == F->add(F->mul(a, b), F->mul(a, c)));
      }
  }
}

TEST_CASE("primitive element") {
  CHECK(gf::primitive_element(gf::field_new(2, 1)).code() == 1);
  CHECK(gf::primitive_element(gf::field_new(3, 1)).code() == 2);
  CHECK(gf::primitive_element(gf::field_new(2, 2)).code() == 2);
  auto F = gf::field_new(3, 2);
  CHECK(gf::multiplicative_order(*F, gf::primitive_element(F).code()) == 8);
}

TEST_CASE("coefficient round trip") {
  auto F = gf::field_new(3, 2);
  for (gf::Code a = 0; a < F->q(); ++a) CHECK(F->from_coeffs(F->coeffs(a)) == a);
}

TEST_CASE("errors") {
  auto code_of = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::ParseError;
  };
  CHECK(code_of([] { gf::field_new(4, 1); }) == ErrorCode::NotPrime);
  CHECK(code_of([] { gf::field_new(2, 20); }) == ErrorCode::FieldTooLarge);
  CHECK(code_of([] { gf::field_new(3, 1)->inv(0); }) == ErrorCode::DivisionByZero);
  CHECK(code_of([] { gf::parse_field("2^x"); }) == ErrorCode::ParseError);
  auto a = FqElem::one(gf::field_new(2, 1));
  auto b = FqElem::one(gf::field_new(3, 1));
  CHECK(code_of([&] { (void)(a + b); }) == ErrorCode::FieldMismatch);
}

}
