#pragma once

// Borel, parabolic and general linear groups over F_q acting on Q_m(n), the
// linear-algebra oracle for invariant subspaces, and orbit counting.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "truncinv/gf.hpp"
#include "truncinv/mpoly.hpp"

namespace truncinv::groups {

using gf::Code;
using mpoly::MPoly;

/// n x n matrix acting by sigma x_j = sum_i sigma_ij x_i.
class MatrixFq {
 public:
  MatrixFq(gf::FieldPtr field, std::size_t n, std::vector<Code> entries);
  static MatrixFq identity(gf::FieldPtr field, std::size_t n);

  std::size_t n() const noexcept { return n_; }
  const gf::FieldPtr& field() const noexcept { return field_; }
  Code operator()(std::size_t i, std::size_t j) const noexcept { return e_[i * n_ + j]; }
  const std::vector<Code>& entries() const noexcept { return e_; }
  bool is_identity() const noexcept;

  MatrixFq operator*(const MatrixFq& o) const;
  bool operator==(const MatrixFq& o) const noexcept { return n_ == o.n_ && e_ == o.e_; }
  bool operator<(const MatrixFq& o) const noexcept { return e_ < o.e_; }

 private:
  gf::FieldPtr field_;
  std::size_t n_;
  std::vector<Code> e_;
};

/// Determinant by elimination.
Code det(const MatrixFq& a);

enum class Kind { GL, Borel, Parabolic };

struct GroupSpec {
  Kind kind = Kind::Borel;
  std::size_t n = 1;
  std::vector<std::size_t> alpha;  // Parabolic only

  static GroupSpec borel(std::size_t n) { return {Kind::Borel, n, {}}; }
  static GroupSpec gl(std::size_t n) { return {Kind::GL, n, {}}; }
  /// Throws CompositionInvalid unless alpha is a composition with positive parts.
  static GroupSpec parabolic(std::vector<std::size_t> alpha);

  /// Block sizes: 1^n for Borel, (n) for GL.
  std::vector<std::size_t> blocks() const;
  std::string name() const;
};

/// Torus generators diag(1,..,g,..,1), transvections I + E_ij (i < j), and for
/// blocks of size > 1 the in-block I + E_ji.  Identity generators are dropped.
std::vector<MatrixFq> generators(const gf::FieldPtr& field, const GroupSpec& spec);

/// Order of the group generated by the generators (BFS closure).  Throws
/// SizeBound past the limit.
std::uint64_t group_order(const gf::FieldPtr& field, const GroupSpec& spec, std::uint64_t limit = 1'000'000);

/// f(sigma x) for every generator sigma, compared in Q_m(n).
bool is_invariant(const MPoly& f, const gf::FieldPtr& field, const GroupSpec& spec, std::uint32_t m);

/// Monomials of Q_m(n) in degree d, grlex descending.
std::vector<mpoly::Monomial> degree_basis(std::uint64_t q, std::uint32_t m, std::size_t n, std::uint64_t d);

struct DegreeInvariants {
  std::uint64_t degree = 0;
  std::size_t dim = 0;
  std::vector<MPoly> basis;  // echelonized kernel vectors as polynomials
};

struct OracleOptions {
  std::uint64_t max_cells = 50'000'000;  // bound on (stacked rows) x (columns) per degree
  unsigned threads = 1;
};

/// Invariant subspace of Q_m(n) degree by degree, as kernels of the stacked
/// (g - 1) matrices.  Throws SizeBound.
std::map<std::uint64_t, DegreeInvariants> invariant_dims(const gf::FieldPtr& field, const GroupSpec& spec,
                                                         std::uint32_t m, const OracleOptions& opt = {});

struct FamilyRank {
  std::size_t total = 0;
  std::map<std::uint64_t, std::size_t> per_degree;
};

/// Ranks of a homogeneous family, degree by degree.  Throws NotHomogeneous.
FamilyRank rank_of_family(const std::vector<MPoly>& polys);

/// Orbits of the group on F_{q^m}^n (coordinates as F_q-vectors of length m).
/// Throws SizeBound when (q^m)^n exceeds the limit.
std::uint64_t orbit_count(const gf::FieldPtr& field, const GroupSpec& spec, std::uint32_t m,
                          std::uint64_t limit = 1'000'000);

}  // namespace truncinv::groups
