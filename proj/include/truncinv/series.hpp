#pragma once

// Hilbert series in t with integer coefficients: (q,t)-multinomials, the
// conjectured series C_{alpha,m} and C_{n,m}, the F_{n,m} recursion, and flag
// counts.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "truncinv/basis.hpp"
#include "truncinv/mpoly.hpp"

namespace truncinv::series {

using Weak = std::vector<std::uint32_t>;

class TSeries {
 public:
  TSeries() = default;
  explicit TSeries(std::vector<std::int64_t> coeffs);
  static TSeries one() { return TSeries({1}); }
  static TSeries monomial(std::uint64_t d, std::int64_t c = 1);
  /// 1 - t^k.
  static TSeries one_minus(std::uint64_t k);

  const std::vector<std::int64_t>& coeffs() const noexcept { return c_; }
  std::int64_t operator[](std::uint64_t d) const noexcept { return d < c_.size() ? c_[d] : 0; }
  bool is_zero() const noexcept { return c_.empty(); }
  /// -1 for zero.
  std::int64_t degree() const noexcept { return static_cast<std::int64_t>(c_.size()) - 1; }
  std::int64_t value_at_one() const noexcept;
  bool nonnegative() const noexcept;

  TSeries operator+(const TSeries& o) const;
  TSeries operator-(const TSeries& o) const;
  TSeries operator*(const TSeries& o) const;
  TSeries& operator+=(const TSeries& o) { return *this = *this + o; }
  TSeries shift(std::uint64_t k) const;
  /// t -> t^k.
  TSeries dilate(std::uint64_t k) const;
  /// Exact quotient; nullopt if the divisor leaves a remainder.
  std::optional<TSeries> try_div(const TSeries& d) const;
  /// Throws NotDivisible.
  TSeries exact_div(const TSeries& d) const;

  bool operator==(const TSeries& o) const = default;

 private:
  void trim();
  std::vector<std::int64_t> c_;
};

/// "1 + t + 2*t^2"; "0" for zero.
std::string to_string(const TSeries& s);
nlohmann::json to_json(const TSeries& s);
/// Lowest degree where the two differ, or nullopt.
std::optional<std::uint64_t> first_mismatch(const TSeries& a, const TSeries& b);

using basis::q_int;

/// [k; alpha]_{q,t} for a weak composition alpha of k.  Throws NotDivisible
/// if the quotient is not a polynomial (it always is for valid input).
TSeries qt_multinomial(std::uint32_t k, const Weak& alpha, std::uint64_t q);
/// [m; s]_{q,t} from the product over i < s.
TSeries qt_binomial(std::uint32_t m, std::uint32_t s, std::uint64_t q);
/// Variant of [m; beta, m-|beta|] that drops the last block from the
/// denominator; nullopt when it does not divide.
std::optional<TSeries> qt_multinomial_short(std::uint32_t m, const Weak& beta, std::uint64_t q);

/// Weak compositions beta <= alpha with |beta| <= m.
std::vector<Weak> betas_below(const std::vector<std::size_t>& alpha, std::uint32_t m);
/// e(m, alpha, beta) = sum (alpha_i - beta_i)(q^m - q^{B_i}).
std::uint64_t e_exponent(std::uint64_t q, std::uint32_t m, const std::vector<std::size_t>& alpha, const Weak& beta);
TSeries c_alpha_term(std::uint64_t q, std::uint32_t m, const std::vector<std::size_t>& alpha, const Weak& beta);
TSeries c_alpha_m(std::uint64_t q, std::uint32_t m, const std::vector<std::size_t>& alpha);

enum class FMode { Recursive, Direct };
TSeries f_nm(std::size_t n, std::uint32_t m, std::uint64_t q, FMode mode = FMode::Recursive);
TSeries c_nm_gl(std::uint64_t q, std::uint32_t m, std::size_t n);
/// The four-term closed form for alpha = (1,1), m >= 2.
TSeries borel_n2_display(std::uint64_t q, std::uint32_t m);

/// Throws NotHomogeneous.
TSeries hilbert_of_family(const std::vector<mpoly::MPoly>& polys);
TSeries hilbert_of_degrees(const std::vector<std::uint64_t>& degrees);
TSeries hilbert_of_dims(const std::map<std::uint64_t, std::size_t>& dims);

std::map<Weak, std::uint64_t> flag_count_by_beta(std::uint64_t q, std::uint32_t m, std::size_t n);
std::uint64_t flag_count(std::uint64_t q, std::uint32_t m, std::size_t n);

/// The beta attached to a basis index by the summand rule.
Weak beta_of(const basis::YIndex& y, std::uint64_t q, std::uint32_t m, std::size_t n);

struct SummandResult {
  Weak beta;
  TSeries computed, expected;
  std::size_t members = 0;
  bool ok = false;
};
/// Splits B_m(n) by beta_of and compares each part with its summand of F_{n,m}.
std::vector<SummandResult> summand_decomposition(std::uint64_t q, std::uint32_t m, std::size_t n);
bool summand_decomposition_check(std::uint64_t q, std::uint32_t m, std::size_t n);

}  // namespace truncinv::series
