#include "multirank/linalg.hpp"

#include <bit>
#include <utility>

namespace multirank {

unsigned rank_in_place(const Field& field, std::span<Elem> a, std::size_t rows, std::size_t cols) {
  unsigned rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (a[r * cols + c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    if (pivot != rank) {
      for (std::size_t j = c; j < cols; ++j) std::swap(a[pivot * cols + j], a[rank * cols + j]);
    }
    const Elem inv = field.inv(a[rank * cols + c]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      const Elem v = a[r * cols + c];
      if (v == 0) continue;
      const Elem factor = field.neg(field.mul(v, inv));
      for (std::size_t j = c; j < cols; ++j) {
        a[r * cols + j] = field.add(a[r * cols + j], field.mul(factor, a[rank * cols + j]));
      }
    }
    ++rank;
  }
  return rank;
}

unsigned rank_gf2(std::span<std::uint64_t> rows) {
  unsigned rank = 0;
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::uint64_t pivot = rows[i];
    if (pivot == 0) continue;
    ++rank;
    const std::uint64_t low = pivot & (~pivot + 1);
    for (std::size_t j = i + 1; j < n; ++j)
      if (rows[j] & low) rows[j] ^= pivot;
  }
  return rank;
}

bool rank_at_most_one(const Field& field, std::span<const Elem> a, std::size_t rows, std::size_t cols) {
  std::size_t base = rows;
  std::size_t lead = 0;
  for (std::size_t r = 0; r < rows && base == rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (a[r * cols + c] != 0) {
        base = r;
        lead = c;
        break;
      }
    }
  }
  if (base == rows) return true;
  const Elem inv_lead = field.inv(a[base * cols + lead]);
  for (std::size_t r = base + 1; r < rows; ++r) {
    const Elem scale = field.mul(a[r * cols + lead], inv_lead);
    for (std::size_t c = 0; c < cols; ++c) {
      if (a[r * cols + c] != field.mul(scale, a[base * cols + c])) return false;
    }
  }
  return true;
}

std::optional<std::vector<Elem>> solve(const Field& field, const Matrix& a, std::span<const Elem> b) {
  const std::size_t rows = a.rows;
  const std::size_t cols = a.cols;
  const std::size_t w = cols + 1;
  std::vector<Elem> m(rows * w);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) m[i * w + j] = a.at(i, j);
    m[i * w + cols] = b[i];
  }
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (m[r * w + c] != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    for (std::size_t j = 0; j < w; ++j) std::swap(m[pivot * w + j], m[rank * w + j]);
    const Elem inv = field.inv(m[rank * w + c]);
    for (std::size_t j = 0; j < w; ++j) m[rank * w + j] = field.mul(m[rank * w + j], inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m[r * w + c] == 0) continue;
      const Elem factor = field.neg(m[r * w + c]);
      for (std::size_t j = 0; j < w; ++j) m[r * w + j] = field.add(m[r * w + j], field.mul(factor, m[rank * w + j]));
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r)
    if (m[r * w + cols] != 0) return std::nullopt;
  std::vector<Elem> x(cols, 0);
  for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = m[r * w + cols];
  return x;
}

}  // namespace multirank

namespace multirank {

RowEchelon row_reduce(const Field& field, Matrix m) {
  RowEchelon out;
  const std::size_t rows = m.rows;
  const std::size_t cols = m.cols;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rows;
    for (std::size_t r = rank; r < rows; ++r) {
      if (m.at(r, c) != 0) {
        pivot = r;
        break;
      }
    }
    if (pivot == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m.at(pivot, j), m.at(rank, j));
    const Elem inv = field.inv(m.at(rank, c));
    for (std::size_t j = 0; j < cols; ++j) m.at(rank, j) = field.mul(m.at(rank, j), inv);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || m.at(r, c) == 0) continue;
      const Elem factor = field.neg(m.at(r, c));
      for (std::size_t j = 0; j < cols; ++j) m.at(r, j) = field.add(m.at(r, j), field.mul(factor, m.at(rank, j)));
    }
    out.pivots.push_back(c);
    ++rank;
  }
  out.r = std::move(m);
  return out;
}

}  // namespace multirank
