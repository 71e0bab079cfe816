#include "multirank/parallel.hpp"

#include <atomic>
#include <cstdlib>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace multirank::parallel {

namespace {

std::atomic<int> override_threads{0};

int default_threads() {
#ifdef _OPENMP
  int n = omp_get_max_threads();
#else
  int n = 1;
#endif
  if (const char* env = std::getenv("MULTIRANK_THREADS")) {
    int cap = std::atoi(env);
    if (cap > 0 && cap < n) n = cap;
  }
  return n < 1 ? 1 : n;
}

}  // namespace

int max_threads() {
  int o = override_threads.load();
  return o > 0 ? o : default_threads();
}

void set_max_threads(int threads) { override_threads.store(threads < 0 ? 0 : threads); }

ThreadScope::ThreadScope(int threads) : saved_(override_threads.load()) { set_max_threads(threads); }

ThreadScope::~ThreadScope() { set_max_threads(saved_); }

}  // namespace multirank::parallel
