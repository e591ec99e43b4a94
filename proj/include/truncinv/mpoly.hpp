#pragma once

// Sparse multivariate polynomials over F_q.
//
// Terms are kept sorted in graded-lex descending order (x_1 > x_2 > ... > x_n),
// without zero coefficients, so structural equality is polynomial equality.
// Variables are 0-based in the API (index 0 is x_1); text output is 1-based.

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "truncinv/error.hpp"
#include "truncinv/gf.hpp"

namespace truncinv::mpoly {

inline constexpr std::size_t kMaxVars = 8;
using Exp = std::uint32_t;

class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::size_t nvars);
  Monomial(std::initializer_list<Exp> exps);
  explicit Monomial(std::span<const Exp> exps);

  std::size_t nvars() const noexcept { return nvars_; }
  Exp operator[](std::size_t i) const noexcept { return exps_[i]; }
  void set(std::size_t i, Exp e);
  std::uint64_t degree() const noexcept { return degree_; }
  std::vector<Exp> exponents() const { return {exps_.begin(), exps_.begin() + nvars_}; }

  /// Throws ExponentOverflow if any exponent leaves 32 bits.
  Monomial operator*(const Monomial& o) const;
  bool divides(const Monomial& o) const noexcept;
  /// Requires divides(o).
  Monomial quotient_of(const Monomial& o) const noexcept;

  bool operator==(const Monomial& o) const noexcept {
    return nvars_ == o.nvars_ && exps_ == o.exps_;
  }

  std::size_t hash() const noexcept;

 private:
  std::array<Exp, kMaxVars> exps_{};
  std::uint64_t degree_ = 0;
  std::uint8_t nvars_ = 0;
};

/// Graded-lex comparison: total degree first, then exponent of x_1, x_2, ...
std::strong_ordering grlex(const Monomial& a, const Monomial& b) noexcept;

struct GrlexGreater {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept { return grlex(a, b) > 0; }
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

struct DivisionResult;

class MPoly {
 public:
  using Term = std::pair<Monomial, gf::Code>;

  MPoly(gf::FieldPtr field, std::size_t nvars);

  static MPoly constant(gf::FieldPtr field, std::size_t nvars, gf::Code c);
  static MPoly one(gf::FieldPtr field, std::size_t nvars) { return constant(std::move(field), nvars, 1); }
  /// x_{i+1}.
  static MPoly variable(gf::FieldPtr field, std::size_t nvars, std::size_t i);
  static MPoly monomial(gf::FieldPtr field, const Monomial& m, gf::Code c = 1);
  /// Sums duplicates, drops zeros, sorts.
  static MPoly from_terms(gf::FieldPtr field, std::size_t nvars, std::vector<Term> terms);

  const gf::FieldPtr& field() const noexcept { return field_; }
  const gf::Field& F() const noexcept { return *field_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Constant term (0 if absent).
  gf::Code constant_term() const noexcept;
  gf::Code coeff(const Monomial& m) const noexcept;
  /// Total degree; 0 for the zero polynomial.
  std::uint64_t degree() const noexcept;
  bool is_homogeneous() const noexcept;

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly operator-() const;
  MPoly& operator+=(const MPoly& o) { return *this = *this + o; }
  MPoly& operator-=(const MPoly& o) { return *this = *this - o; }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }

  MPoly scale(gf::Code c) const;
  MPoly mul_term(const Monomial& m, gf::Code c) const;
  MPoly pow(std::uint64_t k) const;

  bool operator==(const MPoly& o) const;

 private:
  void check_compatible(const MPoly& o) const;
  // Takes terms already sorted, merged and nonzero.
  static MPoly adopt(gf::FieldPtr field, std::size_t nvars, std::vector<Term> terms);
  friend DivisionResult divide(const MPoly&, const MPoly&);
  friend std::optional<MPoly> try_exact_div(const MPoly&, const MPoly&);

  gf::FieldPtr field_;
  std::size_t nvars_ = 0;
  std::vector<Term> terms_;
};

MPoly scalar_mul(const gf::FqElem& c, const MPoly& f);

/// Linear substitution x_j -> sum_i sigma(i, j) x_i (column j of sigma).
/// `entries` is row-major n x n.
MPoly apply_matrix(const MPoly& f, std::span<const gf::Code> entries, std::size_t n);

/// x_i -> x_{map[i]} in a polynomial with `target_nvars` variables.
/// Throws NotInjective, IndexOutOfRange, ArityMismatch.
MPoly remap_vars(const MPoly& f, std::span<const std::size_t> map, std::size_t target_nvars);

/// Keeps x_1..x_n in place and adds trailing variables.
MPoly embed(const MPoly& f, std::size_t target_nvars);

/// Order-preserving injection of c variables into c + 1 that skips `skip`.
std::vector<std::size_t> skip_map(std::size_t c, std::size_t skip);

/// Exponent cap for Q_m(n): every exponent must stay below q^m.
struct TruncationSpec {
  std::uint32_t m = 0;
  std::uint32_t q = 0;
  std::uint64_t cap = 1;
};
TruncationSpec make_truncation(std::uint32_t q, std::uint32_t m);

MPoly truncate(const MPoly& f, const TruncationSpec& spec);

struct DivisionResult {
  MPoly quotient;
  MPoly remainder;
};

/// Multivariate division by a single divisor in graded-lex order.
DivisionResult divide(const MPoly& f, const MPoly& g);

/// Error raised by exact_div; carries the nonzero remainder.
class NotDivisibleError : public Error {
 public:
  NotDivisibleError(MPoly remainder, const std::string& what)
      : Error(ErrorCode::NotDivisible, what), remainder_(std::move(remainder)) {}
  const MPoly& remainder() const noexcept { return remainder_; }

 private:
  MPoly remainder_;
};

/// h with f = g h.  Throws NotDivisibleError or DivisionByZero.
MPoly exact_div(const MPoly& f, const MPoly& g);
/// Same as exact_div but gives up at the first irreducible leading term.
std::optional<MPoly> try_exact_div(const MPoly& f, const MPoly& g);

/// Graded-lex smallest monomial.  Throws ZeroPolynomial.
Monomial leading_monomial(const MPoly& f);
/// Graded-lex largest monomial.  Throws ZeroPolynomial.
Monomial largest_monomial(const MPoly& f);

/// f^q.  Coefficients are fixed by Frobenius on F_q, so only exponents move.
MPoly frobenius(const MPoly& f);
/// f with x_{var+1} set to 0 (variable count unchanged).
MPoly set_var_zero(const MPoly& f, std::size_t var);
/// Drops variable `var`, which must not occur in f.
MPoly drop_var(const MPoly& f, std::size_t var);

/// "x1^3*x2 + 2*x2^2".
std::string to_string(const MPoly& f);
std::string to_string(const Monomial& m);

/// [{"exponents": [...], "coeff": [...]}, ...] with little-endian coefficient lists.
nlohmann::json to_json(const MPoly& f);
MPoly from_json(const gf::FieldPtr& field, std::size_t nvars, const nlohmann::json& j);

/// Parses the text form, e.g. "x1^2 + 2*x1*x2 - x3".  Coefficients are
/// integers (reduced into the prime field).
MPoly parse_poly(const gf::FieldPtr& field, std::size_t nvars, std::string_view text);

// ---------------------------------------------------------------------------
// Determinants of polynomial matrices.

using PolyMatrix = std::vector<std::vector<MPoly>>;

enum class DetMethod { Auto, Laplace, FractionFree };

/// Leibniz determinant.  Auto uses Laplace expansion along the last row up
/// to size 6 and fraction-free (Bareiss) elimination above.  Throws NotSquare.
MPoly det_poly(const PolyMatrix& m, DetMethod method = DetMethod::Auto);

}  // namespace truncinv::mpoly
