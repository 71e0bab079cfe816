#pragma once

#include <cstdint>

namespace multirank::parallel {

/// Worker count used by the OpenMP kernels. Defaults to the OpenMP maximum,
/// capped by MULTIRANK_THREADS when that variable is set.
int max_threads();

/// Overrides the worker count for subsequent kernel calls (0 restores the default).
void set_max_threads(int threads);

/// Items per scheduling chunk in the enumeration kernels.
inline constexpr std::uint64_t kChunk = 1024;

/// RAII override of the worker count.
class ThreadScope {
 public:
  explicit ThreadScope(int threads);
  ~ThreadScope();
  ThreadScope(const ThreadScope&) = delete;
  ThreadScope& operator=(const ThreadScope&) = delete;

 private:
  int saved_;
};

}  // namespace multirank::parallel
