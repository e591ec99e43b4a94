#include <unordered_map>

#include "truncinv/mpoly.hpp"

namespace truncinv::mpoly {

namespace {

// Expansion along the last row.  Minors of the top k rows are indexed by
// their column set, so each one is built once (2^n subsets instead of n!).
MPoly det_laplace(const PolyMatrix& m) {
  const std::size_t n = m.size();
  const MPoly zero(m[0][0].field(), m[0][0].nvars());
  std::unordered_map<std::uint32_t, MPoly> prev, cur;
  prev.emplace(0u, MPoly::one(zero.field(), zero.nvars()));
  for (std::size_t row = 0; row < n; ++row) {
    cur.clear();
    for (const auto& [mask, minor] : prev) {
      if (minor.is_zero()) continue;
      for (std::size_t col = 0; col < n; ++col) {
        if (mask & (1u << col)) continue;
        if (m[row][col].is_zero()) continue;
        // Sign of placing `col` last among the columns in mask | col.
        std::size_t after = 0;
        for (std::size_t c = col + 1; c < n; ++c)
          if (mask & (1u << c)) ++after;
        MPoly term = minor * m[row][col];
        if (after % 2) term = -term;
        auto [it, inserted] = cur.try_emplace(mask | (1u << col), term);
        if (!inserted) it->second += term;
      }
    }
    std::swap(prev, cur);
  }
  auto it = prev.find((1u << n) - 1);
  return it == prev.end() ? zero : it->second;
}

MPoly det_bareiss(PolyMatrix a) {
  const std::size_t n = a.size();
  const auto& field = a[0][0].field();
  const std::size_t nv = a[0][0].nvars();
  bool negate = false;
  MPoly prev_pivot = MPoly::one(field, nv);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t piv = k;
    while (piv < n && a[piv][k].is_zero()) ++piv;
    if (piv == n) return MPoly(field, nv);
    if (piv != k) {
      std::swap(a[piv], a[k]);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        a[i][j] = exact_div(a[k][k] * a[i][j] - a[i][k] * a[k][j], prev_pivot);
      a[i][k] = MPoly(field, nv);
    }
    prev_pivot = a[k][k];
  }
  return negate ? -a[n - 1][n - 1] : a[n - 1][n - 1];
}

}  // namespace

MPoly det_poly(const PolyMatrix& m, DetMethod method) {
  const std::size_t n = m.size();
  if (n == 0) throw Error(ErrorCode::NotSquare, "empty matrix");
  for (const auto& row : m)
    if (row.size() != n) throw Error(ErrorCode::NotSquare, "matrix is not square");
  if (n > 31) throw Error(ErrorCode::SizeBound, "determinant size above 31");
  for (const auto& row : m)
    for (const auto& e : row)
      if (e.nvars() != m[0][0].nvars() || !e.F().same_as(m[0][0].F()))
        throw Error(ErrorCode::ArityMismatch, "matrix entries live in different rings");
  if (n == 1) return m[0][0];
  if (method == DetMethod::Auto) method = n <= 6 ? DetMethod::Laplace : DetMethod::FractionFree;
  return method == DetMethod::Laplace ? det_laplace(m) : det_bareiss(m);
}

}  // namespace truncinv::mpoly
