#pragma once

// Dense matrices over F_q and exact row reduction.

#include <cstddef>
#include <vector>

#include "truncinv/gf.hpp"

namespace truncinv::linalg {

using gf::Code;

struct Matrix {
  std::size_t rows = 0, cols = 0;
  std::vector<Code> data;  // row-major

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}
  Code& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  Code at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// In-place reduced row echelon form; returns the pivot columns.  Zero rows
/// end up at the bottom.
std::vector<std::size_t> rref(const gf::Field& F, Matrix& a);
std::size_t rank(const gf::Field& F, Matrix a);
/// Basis of {v : a v = 0}: one vector per free column, 1 there and 0 at the
/// other free columns.
std::vector<std::vector<Code>> kernel(const gf::Field& F, Matrix a);

}  // namespace truncinv::linalg
