#pragma once

// Index sets for the Borel basis B_m(n), and the candidate sets for GL_n and
// parabolic subgroups built from Schur functions, Dickson monomials and Phi.

#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "truncinv/expr.hpp"
#include "truncinv/mpoly.hpp"

namespace truncinv::basis {

std::uint64_t q_int(std::uint64_t a, std::uint64_t q);

struct YIndex {
  std::uint32_t b = 0;
  std::vector<std::uint32_t> I, J;

  std::size_t k() const noexcept { return I.size(); }
  std::size_t nvars() const;
  auto operator<=>(const YIndex&) const = default;
};

/// Canonical order: k, then I, then J (lexicographic), then b.
bool canonical_less(const YIndex& x, const YIndex& y);
std::string to_string(const YIndex& y);
nlohmann::json to_json(const YIndex& y);
YIndex yindex_from_json(const nlohmann::json& j);

/// (b, I, J) -> (b+1, (0,I), (0,J)).
YIndex phi(const YIndex& y);

/// B_m(n) by the recursive rule (delta_{1;m} branch and D_1^a Phi branch).
std::vector<YIndex> enumerate_inductive(std::uint64_t q, std::uint32_t m, std::size_t n);
/// B_m(n) as the union over k of the sets cut out by the block constraints.
std::vector<YIndex> enumerate_closed(std::uint64_t q, std::uint32_t m, std::size_t n);
/// The closed form, after checking it agrees with the recursion.
std::vector<YIndex> enumerate_basis(std::uint64_t q, std::uint32_t m, std::size_t n);

/// Whether y satisfies the block constraints for B_m(n).
bool is_basis_index(const YIndex& y, std::uint64_t q, std::uint32_t m, std::size_t n);

/// Predicted smallest graded-lex monomial of Y_m(I;J).  Throws InvalidIndex.
mpoly::Monomial smallest_monomial(const YIndex& y, std::uint64_t q, std::uint32_t m);

/// delta^{i_1}_{1;b}(D_1^{j_1} delta^{i_2}_{2;b}(...)) as an expression tree.
expr::NodePtr y_expr(const YIndex& y);

// ---------------------------------------------------------------------------
// GL_n and parabolic candidates

/// Partitions with at most s parts and largest part at most width.
std::vector<std::vector<std::uint32_t>> box_partitions(std::size_t s, std::uint32_t width);

struct GLCandidate {
  std::size_t s = 0;
  std::vector<std::uint32_t> lambda;  // s parts
  std::vector<std::uint32_t> a;       // exponents of Q_{s,s-1}, ..., Q_{s,0}
};

/// S_lambda Q_{s,s-1}^{a_1} ... Q_{s,0}^{a_s}, 0 <= a_i < q^{lambda_i}.
std::vector<GLCandidate> nabla(std::uint64_t q, std::uint32_t m, std::size_t s);
/// Dickson exponent tuples (m_1..m_s) of Delta^m_s.
std::vector<std::vector<std::uint32_t>> delta_partitions(std::uint64_t q, std::uint32_t m, std::size_t s);

std::uint64_t schur_degree(std::uint64_t q, const std::vector<std::uint32_t>& lambda);
std::uint64_t nabla_degree(std::uint64_t q, const GLCandidate& c);
std::uint64_t dickson_monomial_degree(std::uint64_t q, const std::vector<std::uint32_t>& m_exps);

expr::NodePtr nabla_expr(const GLCandidate& c);

struct Candidate {
  std::string label;
  expr::NodePtr node;
};

/// delta_{s+1;m}^{n-s}(f), f in nabla^m_s, 0 <= s <= min(m, n).
std::vector<Candidate> gl_candidate_basis(std::uint64_t q, std::uint32_t m, std::size_t n);
/// The recursion B_m(n_1..n_k) = { delta_{s+1;m}^{n_1-s}(f Phi^s g) }.
/// Throws CompositionInvalid for an empty composition or a zero part.
std::vector<Candidate> parabolic_candidate_basis(std::uint64_t q, std::uint32_t m, const std::vector<std::size_t>& alpha);

/// Parses "1,2" into a composition.
std::vector<std::size_t> parse_composition(const std::string& text);

}  // namespace truncinv::basis
