#pragma once

// Moore determinants, Dickson invariants, the delta operator and the
// nested Y expressions built from them.  Variable indices are 0-based.

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "truncinv/mpoly.hpp"
#include "truncinv/rational.hpp"

namespace truncinv::inv {

using mpoly::MPoly;
using rational::RationalFn;

/// det(x_{vars[j]}^{q^i}) in an ambient ring of nvars variables.
/// Throws EmptyIndexSet.
MPoly moore_L(const gf::FieldPtr& field, std::span<const std::size_t> vars, std::size_t nvars);
/// L_k = L(x_1..x_k).
MPoly moore_L(const gf::FieldPtr& field, std::size_t k, std::size_t nvars);

/// L_k = scalar * product of the normalized forms supported on x_1..x_k.
struct FactoredPoly {
  gf::Code scalar = 1;
  rational::FormSet forms;
};
FactoredPoly moore_factored(const gf::FieldPtr& field, std::size_t k, std::size_t nvars);

enum class VRoute { Quotient, Product, Fundamental };

/// V(J, i) = L(J, i) / L(J).  Zero when i is in J.  The Fundamental route
/// needs J = {0..k-1}, the variables x_1..x_k.
MPoly v_poly(const gf::FieldPtr& field, std::span<const std::size_t> J, std::size_t i, std::size_t nvars,
             VRoute route = VRoute::Quotient);
/// V(J, i) as scalar times normalized linear forms.  J must not contain i.
FactoredPoly v_factored(const gf::Field& F, std::span<const std::size_t> J, std::size_t i, std::size_t nvars);

enum class DicksonRoute { Determinant, Coefficient, Product };

/// Q_{k,s} in x_1..x_k (k variables).  Throws IndexOutOfRange unless 0 <= s < k.
/// Results are memoized per field.
MPoly dickson(const gf::FieldPtr& field, std::size_t k, std::size_t s, DicksonRoute route = DicksonRoute::Determinant);

/// delta_{a;b}(f): c variables in, c + 1 out.  Throws SpecInvalid unless 1 <= a <= c + 1.
RationalFn delta(std::size_t a, std::uint32_t b, const RationalFn& f);
RationalFn delta(std::size_t a, std::uint32_t b, const MPoly& f);
/// h single applications.
RationalFn delta_iter(std::size_t a, std::uint32_t b, std::size_t h, const RationalFn& f);

/// Closed form for delta_{r+1;b}^h(f): sum over h-subsets I of [r+h] of
/// f(I-bar) phi^b(I) / V(I-bar, I).  f has r' >= r variables.
RationalFn delta_iter_closed(std::size_t r, std::uint32_t b, std::size_t h, const RationalFn& f);

/// Sum over h-subsets I of [r+h] of g(I-bar) w(I) / V(I-bar, I), where w(I) is
/// a polynomial in h variables placed on I.  Shared by the closed form above,
/// A_{r;T} and the shuffle product.
RationalFn subset_sum(std::size_t r, std::size_t h, const RationalFn& g, const MPoly& w);

struct ExpansionTerm {
  std::vector<std::uint32_t> T;  // t_0..t_s
  MPoly beta;                    // in x_1..x_s
  MPoly alpha;                   // in y_1..y_h
};

/// prod_j V(x_1..x_s, y_j) = sum_T beta_T(x) alpha_T(y).
std::vector<ExpansionTerm> expand_v_product(const gf::FieldPtr& field, std::size_t s, std::size_t h);

/// A_{r;T}(g) = g . alpha_T.
RationalFn a_rt(std::size_t r, const ExpansionTerm& T, const RationalFn& g);

/// f . g: sum over splittings I + J = [r+h] of f(I) g(J) / V(I, J).
/// With check_symmetry, f and g must be symmetric (SymmetryViolation otherwise).
RationalFn shuffle(const MPoly& f, const MPoly& g, bool check_symmetry = false);

struct CompositeResult {
  bool equal = false;
  std::optional<RationalFn> lhs, rhs;  // filled on failure
};

/// delta_{r+1}^h(g delta_{s+1}^k(f)) = sum_T A_{r;T}(g) delta_{s+1}^{h+k}(beta_T f),
/// all deltas with the same b.  Throws ArityViolation unless r <= s + k.
CompositeResult composite_delta_check(std::size_t r, std::size_t s, std::size_t k, std::size_t h, std::uint32_t b,
                                      const MPoly& f, const MPoly& g);

/// Schur function of the 7th variation for lambda (padded with zeros to s parts).
MPoly schur_s(const gf::FieldPtr& field, std::span<const std::uint32_t> lambda, std::size_t s);
/// The same via S_lambda = delta_{s; lambda_1 + s - 1}(S_{lambda_2..lambda_s}).
MPoly schur_s_inductive(const gf::FieldPtr& field, std::span<const std::uint32_t> lambda, std::size_t s);

/// D_a = Q_{a,a-1}.
MPoly dickson_d(const gf::FieldPtr& field, std::size_t a);

/// Y_b(I;J) in k + sum(I) variables.  Throws NotPolynomial if the final
/// quotient is not a polynomial, ArityMismatch if |I| != |J|.
MPoly capital_y(const gf::FieldPtr& field, std::uint32_t b, std::span<const std::uint32_t> I,
                std::span<const std::uint32_t> J);

/// Torus invariance plus x_j -> x_j + x_i (i < j) fixing f modulo x_i^{q^m}.
bool is_km_invariant(const MPoly& f, std::size_t k, std::uint32_t m);

/// q^e with an overflow guard.
std::uint64_t qpow(std::uint64_t q, std::uint64_t e);

}  // namespace truncinv::inv
