#pragma once

#include "multirank/field.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace multirank {

/// Row-major dense matrix over a field, by element index.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<Elem> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0) {}

  Elem& at(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  Elem at(std::size_t i, std::size_t j) const { return data[i * cols + j]; }
};

/// Rank by Gaussian elimination with first-nonzero pivoting. Destroys `a`.
unsigned rank_in_place(const Field& field, std::span<Elem> a, std::size_t rows, std::size_t cols);

inline unsigned rank(const Field& field, Matrix m) { return rank_in_place(field, m.data, m.rows, m.cols); }

/// Rank of bit-packed rows over F_2 (bit j of row i is entry (i, j)). Destroys `rows`.
unsigned rank_gf2(std::span<std::uint64_t> rows);

/// True when the matrix has rank <= 1 (every nonzero row is a multiple of the first nonzero row).
bool rank_at_most_one(const Field& field, std::span<const Elem> a, std::size_t rows, std::size_t cols);

/// Reduced row echelon form: the first `pivots.size()` rows of `r` are the
/// nonzero rows, pivots[j] is the pivot column of row j.
struct RowEchelon {
  Matrix r;
  std::vector<std::size_t> pivots;
};

RowEchelon row_reduce(const Field& field, Matrix m);

/// Some solution of A x = b, or nullopt when inconsistent.
std::optional<std::vector<Elem>> solve(const Field& field, const Matrix& a, std::span<const Elem> b);

}  // namespace multirank
