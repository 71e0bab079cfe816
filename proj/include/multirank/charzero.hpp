#pragma once

#include "multirank/counting.hpp"
#include "multirank/ranks.hpp"
#include "multirank/tensor.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace multirank {

/// Entry-wise reduction of an integer form into F_p.
MultilinearForm reduce_mod_p(const IntMultilinearForm& f, std::uint32_t p);

/// Default enumeration gate for prime scans, as log2 of the per-prime item count.
inline constexpr double kScanBits = 20.0;

/// The `count` largest primes p with p^{n(d-2)} <= 2^bits (and p within the
/// field gate), in increasing order.
std::vector<std::uint32_t> auto_primes(unsigned n, unsigned d, double bits = kScanBits, unsigned count = 25);

struct PrimeScan {
  std::vector<std::uint32_t> primes;  ///< increasing
  std::vector<ExactLogRank> ark;      ///< per prime
  std::vector<double> running_min;    ///< min of ark over the prefix
  /// Integer k with the last three values within 0.25 of k.
  std::optional<unsigned> grk_estimate_q;
};

/// Exact analytic rank of F mod p for each prime (sorted increasing first).
PrimeScan liminf_ark_scan(const IntMultilinearForm& f, std::vector<std::uint32_t> primes, Budget budget = {});

/// Height bound h = ceil(L^sigma); points have every coordinate in (-h, h).
std::int64_t lift_height(std::int64_t L, double sigma);

/// max_i sum_{j_1..j_{d-1}} |F[j_1, ..., j_{d-1}, i]|, so |G(x)_i| <= C (h-1)^{d-1} in the box.
BigInt row_height_constant(const IntMultilinearForm& f);

struct LiftReport {
  std::int64_t L = 0;
  double sigma = 0.0;
  std::int64_t height = 0;
  BigInt height_constant = 0;
  /// C (h-1)^{d-1} < L: every solution mod L is then a solution over Z.
  bool threshold_reached = false;
  std::vector<std::vector<std::int64_t>> points;
  /// Per point: G(x) = 0 over the integers.
  std::vector<bool> exact;
  /// log_L(#points).
  double dimension_statistic = 0.0;
};

/// Points with all coordinates in (-h, h) and G(x) = 0 mod L, each re-checked
/// over Z. With `require_threshold` an unreached threshold throws DomainError.
LiftReport lift_search(const IntMultilinearForm& f, std::int64_t L, double sigma, bool require_threshold = true,
                       Budget budget = {});

}  // namespace multirank
