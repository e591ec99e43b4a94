#include <doctest.h>

#include "truncinv/basis.hpp"
#include "truncinv/series.hpp"

using namespace truncinv;
using series::TSeries;

namespace {
std::uint64_t ipow(std::uint64_t q, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= q;
  return r;
}

std::vector<series::Weak> weak_compositions(std::uint32_t k, std::size_t parts) {
  if (parts == 1) return {{k}};
  std::vector<series::Weak> out;
  for (std::uint32_t a = 0; a <= k; ++a)
    for (auto rest : weak_compositions(k - a, parts - 1)) {
      rest.insert(rest.begin(), a);
      out.push_back(rest);
    }
  return out;
}
}

TEST_SUITE("series") {

TEST_CASE("arithmetic and printing") {
  const TSeries a({1, 1, 2});
  CHECK(series::to_string(a) == "1 + t + 2*t^2");
  CHECK(series::to_string(TSeries()) == "0");
  CHECK(a.value_at_one() == 4);
  CHECK(a.dilate(2) == TSeries({1, 0, 1, 0, 2}));
  CHECK(a.shift(1) == TSeries({0, 1, 1, 2}));
  CHECK((a * TSeries::one_minus(3)).exact_div(TSeries::one_minus(3)) == a);
  CHECK_FALSE(TSeries::one_minus(3).try_div(TSeries::one_minus(2)).has_value());
  CHECK_THROWS_AS(TSeries::one_minus(3).exact_div(TSeries::one_minus(2)), Error);
  CHECK(series::first_mismatch(a, TSeries({1, 1, 3})) == 2u);
  CHECK_FALSE(series::first_mismatch(a, a).has_value());
}

TEST_CASE("(q,t)-multinomials") {
  for (std::uint32_t k = 0; k <= 4; ++k) CHECK(series::qt_multinomial(k, {k}, 2) == TSeries::one());
  CHECK(series::qt_multinomial(2, {1, 1}, 2) == TSeries({1, 1, 1}));
  for (std::uint64_t q : {2, 3})
    for (std::uint32_t m = 0; m <= 4; ++m)
      for (std::uint32_t s = 0; s <= m; ++s) {
        TSeries num = TSeries::one(), den = TSeries::one();
        for (std::uint32_t i = 0; i < s; ++i) {
          num = num * TSeries::one_minus(ipow(q, m) - ipow(q, i));
          den = den * TSeries::one_minus(ipow(q, s) - ipow(q, i));
        }
        CHECK(series::qt_binomial(m, s, q) == num.exact_div(den));
      }
}

TEST_CASE("multinomials divide with nonnegative coefficients") {
  for (std::uint64_t q : {2, 3})
    for (std::uint32_t k = 0; k <= 6; ++k)
      for (std::size_t parts = 1; parts <= 3; ++parts)
        for (const auto& a : weak_compositions(k, parts)) {
          const auto s = series::qt_multinomial(k, a, q);
          CHECK(s.nonnegative());
          // at t = 1 it counts flags of subspaces, so it is at least 1
          CHECK(s.value_at_one() >= 1);
        }
}

TEST_CASE("conjectured series") {
  CHECK(series::c_alpha_m(2, 1, {1, 1}) == TSeries({1, 1, 1}));
  CHECK(series::c_alpha_m(2, 1, {1}) == TSeries({1, 1}));
  CHECK(series::c_alpha_m(2, 2, {1}) == TSeries({1, 1, 1, 1}));
  for (std::uint64_t q : {2, 3})
    for (std::uint32_t m = 2; m <= 3; ++m) CHECK(series::borel_n2_display(q, m) == series::c_alpha_m(q, m, {1, 1}));
  for (std::uint64_t q : {2, 3})
    for (std::uint32_t m = 0; m <= 3; ++m)
      for (std::size_t n = 1; n <= 3; ++n) {
        const std::vector<std::size_t> ones(n, 1);
        const auto c = series::c_alpha_m(q, m, ones);
        CHECK(c.degree() == static_cast<std::int64_t>(n * (basis::q_int(m, q) * (q - 1))));
        CHECK(c == series::f_nm(n, m, q));
      }
  CHECK(series::c_nm_gl(2, 3, 0) == TSeries::one());
  CHECK(series::c_nm_gl(3, 0, 2) == TSeries::one());
  CHECK(series::c_nm_gl(2, 2, 2) == TSeries({1, 0, 1, 1, 1, 0, 1}));
}

TEST_CASE("F recursion") {
  for (std::uint64_t q : {2, 3}) {
    for (std::uint32_t m = 0; m <= 3; ++m) CHECK(series::f_nm(0, m, q) == TSeries::one());
    for (std::size_t n = 0; n <= 3; ++n) CHECK(series::f_nm(n, 0, q) == TSeries::one());
    for (std::size_t n = 0; n <= 5; ++n)
      for (std::uint32_t m = 0; m <= 5; ++m)
        CHECK(series::f_nm(n, m, q, series::FMode::Recursive) == series::f_nm(n, m, q, series::FMode::Direct));
  }
  CHECK(series::f_nm(1, 1, 2) == TSeries({1, 1}));
}

TEST_CASE("Hilbert series of families") {
  CHECK(series::hilbert_of_degrees({0}) == TSeries::one());
  CHECK(series::hilbert_of_degrees({2, 0, 1}) == TSeries({1, 1, 1}));
}

TEST_CASE("flags") {
  const auto by = series::flag_count_by_beta(2, 1, 2);
  CHECK(by.size() == 3);
  CHECK(by.at({0, 0}) == 1);
  CHECK(by.at({1, 0}) == 1);
  CHECK(by.at({0, 1}) == 1);
  for (std::uint64_t q : {2, 3})
    for (std::uint32_t m = 0; m <= 3; ++m) {
      CHECK(series::flag_count(q, 0, 3) == 1);
      CHECK(series::flag_count(q, m, 1) == 1 + basis::q_int(m, q));
    }
}

TEST_CASE("summand decomposition") {
  const auto parts = series::summand_decomposition(2, 1, 2);
  CHECK(parts.size() == 3);
  TSeries total;
  for (const auto& p : parts) {
    CHECK(p.members == 1);
    CHECK(p.ok);
    total += p.computed;
  }
  CHECK(total == TSeries({1, 1, 1}));
  for (std::uint64_t q : {2, 3})
    for (std::uint32_t m = 0; m <= 3; ++m)
      for (std::size_t n = 1; n <= 3; ++n) CHECK(series::summand_decomposition_check(q, m, n));
}

}
