#pragma once

// Quotients of polynomials over F_q.
//
// Every denominator that the invariant constructions produce is a product of
// linear forms (Moore determinants and their relabelings), so the denominator
// is kept factored: a multiset of normalized linear forms times an optional
// residual polynomial.  Sums take the lcm of the form multisets instead of
// the product of denominators, which keeps numerators small.  No gcd is ever
// computed; reduction is exact division on demand.

#include <map>
#include <span>
#include <vector>

#include "truncinv/mpoly.hpp"

namespace truncinv::rational {

using mpoly::MPoly;

/// Coefficients of c_1 x_1 + ... + c_n x_n with the last nonzero c_i equal to 1.
using LinearForm = std::vector<gf::Code>;
using FormSet = std::map<LinearForm, std::uint32_t>;

MPoly form_poly(const gf::FieldPtr& field, const LinearForm& form);
/// Product of the forms (with multiplicity) as a polynomial in nvars variables.
MPoly forms_product(const gf::FieldPtr& field, std::size_t nvars, const FormSet& forms);

/// All normalized linear forms in nvars variables supported on x_1..x_a.
/// There are [a]_q of them.
std::vector<LinearForm> forms_up_to(const gf::Field& F, std::size_t nvars, std::size_t a);

class RationalFn {
 public:
  explicit RationalFn(MPoly num);
  /// num / (prod forms * rest).  rest must be nonzero.
  RationalFn(MPoly num, FormSet forms, MPoly rest);

  /// num / den, factoring linear forms out of den where it can.
  /// Throws DivisionByZero for den = 0.
  static RationalFn quotient(const MPoly& num, const MPoly& den);

  const MPoly& num() const noexcept { return num_; }
  const FormSet& forms() const noexcept { return forms_; }
  const MPoly& rest() const noexcept { return rest_; }
  /// The full denominator as a polynomial.
  MPoly den() const;
  std::size_t nvars() const noexcept { return num_.nvars(); }
  const gf::FieldPtr& field() const noexcept { return num_.field(); }

  bool is_zero() const noexcept { return num_.is_zero(); }
  /// Denominator is a unit (no forms, constant rest).
  bool has_unit_den() const noexcept { return forms_.empty() && rest_.is_constant(); }

  RationalFn operator+(const RationalFn& o) const;
  RationalFn operator-(const RationalFn& o) const;
  RationalFn operator*(const RationalFn& o) const;
  RationalFn operator-() const;
  RationalFn& operator+=(const RationalFn& o) { return *this = *this + o; }
  RationalFn& operator*=(const RationalFn& o) { return *this = *this * o; }
  RationalFn mul_poly(const MPoly& f) const;

  /// Cancels every denominator factor that divides the numerator exactly.
  RationalFn simplify() const;
  /// The polynomial num/den.  Throws NotPolynomial when den does not divide num.
  MPoly as_poly() const;
  /// Same as as_poly, without throwing.
  std::optional<MPoly> try_poly() const;

  /// Equality by cross-multiplication.
  bool operator==(const RationalFn& o) const;

 private:
  void normalize_rest();
  MPoly num_;
  FormSet forms_;
  MPoly rest_;
};

/// x_i -> x_{map[i]} applied to numerator and denominator.
RationalFn remap_vars(const RationalFn& f, std::span<const std::size_t> map, std::size_t target_nvars);
RationalFn embed(const RationalFn& f, std::size_t target_nvars);

/// Brings a family to one denominator: returns numerators n_i and the shared
/// denominator (forms, rest) with f_i = n_i / den.
struct CommonDen {
  std::vector<MPoly> nums;
  FormSet forms;
  MPoly rest;
};
CommonDen common_denominator(std::span<const RationalFn> fs);

std::string to_string(const RationalFn& f);

}  // namespace truncinv::rational
