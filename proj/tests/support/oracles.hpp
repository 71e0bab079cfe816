#pragma once
// Independent references: plain integer code, no library kernels.

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

namespace oracle {

using boost::multiprecision::cpp_int;

/// Rank of an integer matrix mod a prime p by schoolbook elimination.
inline unsigned rank_mod_p(std::vector<std::vector<long>> a, long p) {
  const std::size_t rows = a.size();
  const std::size_t cols = rows ? a[0].size() : 0;
  for (auto& r : a)
    for (auto& v : r) v = ((v % p) + p) % p;
  auto inv = [p](long x) {
    long r = 1, e = p - 2;
    while (e) {
      if (e & 1) r = r * x % p;
      x = x * x % p;
      e >>= 1;
    }
    return r;
  };
  unsigned rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t piv = rank;
    while (piv < rows && a[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[rank]);
    const long s = inv(a[rank][c]);
    for (auto& v : a[rank]) v = v * s % p;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const long m = a[r][c];
      for (std::size_t k = 0; k < cols; ++k) a[r][k] = ((a[r][k] - m * a[rank][k]) % p + p) % p;
    }
    ++rank;
  }
  return rank;
}

/// |S_F| for diagonal(m, n, d) over F_Q: (Q^{d-1} - (Q-1)^{d-1})^m Q^{(n-m)(d-1)}.
inline cpp_int diagonal_count(std::uint64_t Q, unsigned m, unsigned n, unsigned d) {
  cpp_int full = boost::multiprecision::pow(cpp_int(Q), d - 1);
  cpp_int miss = boost::multiprecision::pow(cpp_int(Q - 1), d - 1);
  return boost::multiprecision::pow(full - miss, m) * boost::multiprecision::pow(cpp_int(Q), (n - m) * (d - 1));
}

/// ark of the integer diagonal of size m reduced mod p: -m log_p(1 - (1 - 1/p)^2).
inline double diagonal_ark_mod_p(unsigned m, double p) {
  const double r = 1.0 - 1.0 / p;
  return -static_cast<double>(m) * std::log(1.0 - r * r) / std::log(p);
}

/// Partition rank of every F_2 2x2x2 tensor by breadth-first closure.
/// Tensors are 8-bit masks, bit 4i+2j+k holding the (i, j, k) coefficient.
/// Rank-one terms are the nonzero outer products u(x_I) v(x_J) over the three
/// bipartitions of {0, 1, 2}.
inline std::array<int, 256> prk_table_f2_222() {
  std::vector<int> ones;
  auto bit = [](int i, int j, int k) { return 1 << (4 * i + 2 * j + k); };
  bool seen[256] = {};
  for (int u = 1; u < 4; ++u) {    // vector in one slot
    for (int v = 1; v < 16; ++v) {  // matrix in the other two
      int a = 0, b = 0, c = 0;
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          for (int k = 0; k < 2; ++k) {
            if ((u >> i & 1) && (v >> (2 * j + k) & 1)) a |= bit(i, j, k);  // {0} | {1,2}
            if ((u >> j & 1) && (v >> (2 * i + k) & 1)) b |= bit(i, j, k);  // {1} | {0,2}
            if ((u >> k & 1) && (v >> (2 * i + j) & 1)) c |= bit(i, j, k);  // {2} | {0,1}
          }
      for (int t : {a, b, c})
        if (!seen[t]) {
          seen[t] = true;
          ones.push_back(t);
        }
    }
  }
  std::array<int, 256> dist;
  dist.fill(-1);
  dist[0] = 0;
  std::vector<int> frontier{0};
  for (int r = 1; !frontier.empty(); ++r) {
    std::vector<int> next;
    for (int t : frontier)
      for (int o : ones)
        if (dist[t ^ o] < 0) {
          dist[t ^ o] = r;
          next.push_back(t ^ o);
        }
    frontier = std::move(next);
  }
  return dist;
}

/// Coefficient mask of a flat 2x2x2 coefficient vector (first slot most significant).
inline int mask_222(const std::vector<unsigned>& flat) {
  int m = 0;
  for (int i = 0; i < 8; ++i)
    if (flat[i]) m |= 1 << i;
  return m;
}

}  // namespace oracle
