// Shared enumeration machinery for the counting kernels.
#pragma once

#include "multirank/field.hpp"
#include "multirank/parallel.hpp"

#include <algorithm>
#include <cstdint>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace multirank::detail {

/// Nonzero vectors of F_Q^N up to scaling: representatives have leading entry 1.
/// Representative k is decoded by leading position j (block of Q^{N-1-j}
/// vectors each), trailing entries read base Q, most significant first.
class ProjectiveSpace {
 public:
  ProjectiveSpace(std::uint32_t Q, unsigned N) : Q_(Q), N_(N), block_(N) {
    std::uint64_t size = 1;
    for (unsigned j = N; j-- > 0;) {
      block_[j] = size;
      size *= Q;
    }
    count_ = 0;
    for (auto b : block_) count_ += b;
  }

  std::uint64_t count() const { return count_; }
  unsigned dim() const { return N_; }

  void decode(std::uint64_t k, Elem* out) const {
    unsigned j = 0;
    while (k >= block_[j]) {
      k -= block_[j];
      ++j;
    }
    for (unsigned i = 0; i < j; ++i) out[i] = 0;
    out[j] = 1;
    for (unsigned i = N_; i-- > j + 1;) {
      out[i] = static_cast<Elem>(k % Q_);
      k /= Q_;
    }
  }

 private:
  std::uint32_t Q_;
  unsigned N_;
  std::vector<std::uint64_t> block_;
  std::uint64_t count_;
};

/// Runs worker(i) -> bin for every i in [0, total) across the OpenMP team and
/// merges per-thread histograms. Integer sums make the result independent of
/// scheduling and thread count. The worker is copied once per thread.
template <class Worker>
std::vector<std::uint64_t> parallel_histogram(std::uint64_t total, std::size_t bins, const Worker& proto) {
  const std::uint64_t chunks = (total + parallel::kChunk - 1) / parallel::kChunk;
  int threads = parallel::max_threads();
  if (static_cast<std::uint64_t>(threads) > chunks) threads = static_cast<int>(std::max<std::uint64_t>(chunks, 1));
  std::vector<std::vector<std::uint64_t>> partial(threads, std::vector<std::uint64_t>(bins, 0));
#pragma omp parallel num_threads(threads)
  {
    Worker worker = proto;
#ifdef _OPENMP
    auto& hist = partial[omp_get_thread_num()];
#else
    auto& hist = partial[0];
#endif
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
      const std::uint64_t begin = static_cast<std::uint64_t>(c) * parallel::kChunk;
      const std::uint64_t end = std::min(total, begin + parallel::kChunk);
      for (std::uint64_t i = begin; i < end; ++i) ++hist[worker(i)];
    }
  }
  std::vector<std::uint64_t> merged(bins, 0);
  for (const auto& h : partial)
    for (std::size_t b = 0; b < bins; ++b) merged[b] += h[b];
  return merged;
}

/// Decodes a flat tuple index into `blocks` digits base `radix`, last block least significant.
inline void decode_tuple(std::uint64_t item, std::uint64_t radix, unsigned blocks, std::uint64_t* out) {
  for (unsigned k = blocks; k-- > 0;) {
    out[k] = item % radix;
    item /= radix;
  }
}

}  // namespace multirank::detail

namespace multirank::detail {

/// Sum of worker(i) over [0, total), same scheduling as parallel_histogram.
template <class Worker>
std::uint64_t parallel_sum(std::uint64_t total, const Worker& proto) {
  const std::uint64_t chunks = (total + parallel::kChunk - 1) / parallel::kChunk;
  int threads = parallel::max_threads();
  if (static_cast<std::uint64_t>(threads) > chunks) threads = static_cast<int>(std::max<std::uint64_t>(chunks, 1));
  std::uint64_t sum = 0;
#pragma omp parallel num_threads(threads) reduction(+ : sum)
  {
    Worker worker = proto;
#pragma omp for schedule(dynamic, 1)
    for (std::int64_t c = 0; c < static_cast<std::int64_t>(chunks); ++c) {
      const std::uint64_t begin = static_cast<std::uint64_t>(c) * parallel::kChunk;
      const std::uint64_t end = std::min(total, begin + parallel::kChunk);
      for (std::uint64_t i = begin; i < end; ++i) sum += worker(i);
    }
  }
  return sum;
}

}  // namespace multirank::detail
