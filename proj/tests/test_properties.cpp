#include <doctest.h>

#include <cstdlib>
#include <random>

#include "truncinv/basis.hpp"
#include "truncinv/expr.hpp"
#include "truncinv/groups.hpp"
#include "truncinv/harness.hpp"
#include "truncinv/invariants.hpp"

// Randomized properties.  TRUNCINV_SEED overrides the seed; failures print it.

using namespace truncinv;
using groups::GroupSpec;
using mpoly::MPoly;
using rational::RationalFn;

namespace {

std::uint64_t seed() {
  if (const char* s = std::getenv("TRUNCINV_SEED")) return std::strtoull(s, nullptr, 10);
  return 20261017;
}

}

TEST_SUITE("properties") {

TEST_CASE("delta_{s+2} delta_{s+1} vanishes") {
  INFO("seed " << seed());
  std::mt19937_64 rng(seed());
  for (const char* fn : {"2", "3"}) {
    auto F = gf::parse_field(fn);
    for (std::size_t s = 0; s <= 2; ++s)
      for (int t = 0; t < 10; ++t) {
        const auto f = harness::random_poly(F, s, 4, F->q() + 1, rng);
        for (std::uint32_t b = static_cast<std::uint32_t>(s + 1); b <= s + 2; ++b) {
          INFO(fn << " s=" << s << " b=" << b << " f=" << mpoly::to_string(f));
          CHECK(inv::delta(s + 2, b, inv::delta(s + 1, b, f)).is_zero());
        }
      }
  }
}

TEST_CASE("iterated delta equals its closed form") {
  INFO("seed " << seed());
  std::mt19937_64 rng(seed() + 1);
  for (const char* fn : {"2", "3"}) {
    auto F = gf::parse_field(fn);
    for (std::size_t r = 0; r <= 2; ++r)
      for (int t = 0; t < 3; ++t) {
        const RationalFn f(harness::random_poly(F, r, 3, F->q(), rng));
        for (std::uint32_t b = 0; b <= 2; ++b) CHECK(inv::delta_iter(r + 1, b, 2, f) == inv::delta_iter_closed(r, b, 2, f));
      }
  }
}

TEST_CASE("delta raises degree by q^b - q^(a-1)") {
  std::mt19937_64 rng(seed() + 2);
  for (const char* fn : {"2", "3"}) {
    auto F = gf::parse_field(fn);
    const std::uint64_t q = F->q();
    for (int t = 0; t < 10; ++t) {
      // a homogeneous random input: keep the top-degree part
      auto f = harness::random_poly(F, 2, 4, 4, rng);
      MPoly top(F, 2);
      for (const auto& [mono, c] : f.terms())
        if (mono.degree() == f.degree()) top += MPoly::monomial(F, mono, c);
      for (std::size_t a = 1; a <= 3; ++a)
        for (std::uint32_t b = static_cast<std::uint32_t>(a); b <= 3; ++b) {
          // not a polynomial in general, so compare numerator and denominator degrees
          const auto v = inv::delta(a, b, top);
          if (v.is_zero()) continue;
          const auto den = v.den();
          CHECK(v.num().is_homogeneous());
          CHECK(den.is_homogeneous());
          CHECK(v.num().degree() - den.degree() == top.degree() + inv::qpow(q, b) - inv::qpow(q, a - 1));
        }
    }
  }
}

TEST_CASE("random combinations of oracle vectors stay invariant, random polys mostly do not") {
  std::mt19937_64 rng(seed() + 3);
  for (const char* fn : {"2", "3"}) {
    auto F = gf::parse_field(fn);
    for (const auto& spec : {GroupSpec::borel(2), GroupSpec::gl(2), GroupSpec::borel(3)}) {
      if (spec.n == 3 && F->q() == 3) continue;
      const std::uint32_t m = 1;
      std::uniform_int_distribution<gf::Code> coef(0, F->q() - 1);
      for (const auto& [d, di] : groups::invariant_dims(F, spec, m)) {
        MPoly f(F, spec.n);
        for (const auto& v : di.basis) f += v.scale(coef(rng));
        CHECK(groups::is_invariant(f, F, spec, m));
      }
      // a non-invariant: x_n is moved by a transvection
      CHECK_FALSE(groups::is_invariant(MPoly::variable(F, spec.n, spec.n - 1), F, spec, m));
    }
  }
}

TEST_CASE("sampled Borel basis elements are invariant and nonzero after truncation") {
  std::mt19937_64 rng(seed() + 4);
  for (const auto& pt : harness::default_grid()) {
    const auto q = pt.field->q();
    auto B = basis::enumerate_basis(q, pt.m, pt.n);
    std::shuffle(B.begin(), B.end(), rng);
    B.resize(std::min<std::size_t>(B.size(), 4));
    expr::Evaluator ev(pt.field);
    for (const auto& y : B) {
      INFO(basis::to_string(y) << " q=" << q << " m=" << pt.m << " n=" << pt.n);
      const auto f = ev.eval_poly(basis::y_expr(y));
      CHECK(groups::is_invariant(f, pt.field, GroupSpec::borel(pt.n), pt.m));
      CHECK_FALSE(mpoly::truncate(f, mpoly::make_truncation(q, pt.m)).is_zero());
    }
  }
}

TEST_CASE("Frobenius commutes with linear substitution") {
  std::mt19937_64 rng(seed() + 5);
  for (const char* fn : {"3", "2^2"}) {
    auto F = gf::parse_field(fn);
    for (const auto& g : groups::generators(F, GroupSpec::gl(2))) {
      const auto f = harness::random_poly(F, 2, 4, 3, rng);
      CHECK(mpoly::frobenius(mpoly::apply_matrix(f, g.entries(), 2)) ==
            mpoly::apply_matrix(mpoly::frobenius(f), g.entries(), 2));
    }
  }
}

}
