#include "truncinv/linalg.hpp"

#include <algorithm>

namespace truncinv::linalg {

std::vector<std::size_t> rref(const gf::Field& F, Matrix& a) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols && row < a.rows; ++col) {
    std::size_t piv = row;
    while (piv < a.rows && a.at(piv, col) == 0) ++piv;
    if (piv == a.rows) continue;
    if (piv != row)
      std::swap_ranges(a.data.begin() + piv * a.cols, a.data.begin() + (piv + 1) * a.cols,
                       a.data.begin() + row * a.cols);
    const Code s = F.inv(a.at(row, col));
    for (std::size_t j = col; j < a.cols; ++j) a.at(row, j) = F.mul(a.at(row, j), s);
    for (std::size_t i = 0; i < a.rows; ++i) {
      if (i == row) continue;
      const Code c = a.at(i, col);
      if (c == 0) continue;
      const Code nc = F.neg(c);
      for (std::size_t j = col; j < a.cols; ++j)
        if (a.at(row, j)) a.at(i, j) = F.add(a.at(i, j), F.mul(nc, a.at(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

std::size_t rank(const gf::Field& F, Matrix a) { return rref(F, a).size(); }

std::vector<std::vector<Code>> kernel(const gf::Field& F, Matrix a) {
  const auto pivots = rref(F, a);
  std::vector<bool> is_pivot(a.cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Code>> out;
  for (std::size_t free = 0; free < a.cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Code> v(a.cols, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(a.at(r, free));
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace truncinv::linalg
