#pragma once

#include "multirank/counting.hpp"
#include "multirank/io.hpp"
#include "multirank/polynomial.hpp"
#include "multirank/tensor.hpp"

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace multirank {

struct VerifyFailure {
  Json instance;         ///< tensor or polynomial file payload
  std::string relation;  ///< the inequality that failed
  Json observed;         ///< the values it failed on

  bool operator==(const VerifyFailure&) const = default;
};

/// Result of a property campaign. Hard failures make it fail; advisory
/// findings (heuristic estimates, unreached preconditions) only mark it.
struct VerifyReport {
  std::string suite;
  Json grid = Json::object();
  std::uint64_t cases = 0;
  std::vector<VerifyFailure> failures;
  std::vector<VerifyFailure> advisories;
  /// Suite-specific aggregate counters.
  Json summary = Json::object();
  double elapsed_seconds = 0.0;

  bool pass() const { return failures.empty(); }

  /// Adds the cases, findings and numeric summary counters of `other`.
  void merge(const VerifyReport& other);

  /// Canonical form leaves out the elapsed time.
  Json to_json(bool with_elapsed = true) const;
  static VerifyReport from_json(const Json& j);
};

/// N^y <= N^0 for every fiber of reduction mod t^b, and total <= [H:H_0]^{d-1} N^0.
VerifyReport verify_scaling_charp(const MultilinearForm& f, unsigned a, unsigned b);

/// N_R <= |S_F(F_q)| N_{R-1} and N_R <= |S_F(F_q)|^R for R = 2..r_max.
VerifyReport verify_eval_fibers(const MultilinearForm& f, unsigned r_max, Budget budget = {});

/// N over [0, LR) <= L^{n(d-1)} Z over (-R, R).
VerifyReport verify_scaling_char0(const IntMultilinearForm& g, std::int64_t R, std::int64_t L, Budget budget = {});

/// Every small-height solution mod L is a solution over Z, when the height
/// threshold holds. Otherwise the case is reported as not reached and
/// non-integral solutions become advisories.
VerifyReport verify_lift_threshold(const IntMultilinearForm& g, std::int64_t L, double sigma, Budget budget = {});

struct RankChainOptions {
  unsigned l_max = 8;
  /// Compare prk(F) with 2 prk(F over the quadratic extension).
  bool extension_prk = true;
  unsigned r_max = 4;
  /// Known geometric rank, used instead of the estimate when set.
  std::optional<unsigned> known_grk;
  Budget budget;
};

/// ark <= (d-1) grk (hard when grk is known or stabilized), ark >= grk (1 - log_q(d-1))
/// and grk <= prk (advisory), prk(F) <= 2 prk(F_2) (hard when both exact).
VerifyReport verify_rank_chain(const MultilinearForm& f, const RankChainOptions& opts = {});

/// |S_{F+G}| = |S_F| |S_G| exactly.
VerifyReport verify_direct_sum(const MultilinearForm& f, const MultilinearForm& g, Budget budget = {});

/// str(f) <= prk(polar f) <= binom(d, d/2) str(f) and Brk <= 2 str(f).
VerifyReport verify_polar_sandwich(const HomogeneousForm& f, unsigned brk_levels = 3, Budget budget = {});

/// |S_{F_K}(K)| = |S_F(L)| for the restriction along K -> L, hence ark(F_K) = l ark(F);
/// with grk_levels > 0 also compares the estimates (advisory).
VerifyReport verify_weil(const MultilinearForm& f, const FieldPtr& subfield, unsigned grk_levels = 0,
                         Budget budget = {});

/// Greedy coefficient zeroing in flat order while `fails` keeps holding.
MultilinearForm minimize_counterexample(const MultilinearForm& f,
                                        const std::function<bool(const MultilinearForm&)>& fails);
IntMultilinearForm minimize_counterexample(const IntMultilinearForm& f,
                                           const std::function<bool(const IntMultilinearForm&)>& fails);
HomogeneousForm minimize_counterexample(const HomogeneousForm& f,
                                        const std::function<bool(const HomogeneousForm&)>& fails);

struct CampaignOptions {
  /// "small" or "full".
  std::string grid = "small";
  std::uint64_t seed = 1;
  Budget budget;
  /// Where minimized counterexamples are written on a hard failure.
  std::optional<std::filesystem::path> counterexample_dir;
};

/// Suite names accepted by run_campaign.
const std::vector<std::string>& suite_names();

/// Seeded corpus for a suite; stops at the first hard failure.
VerifyReport run_campaign(const std::string& suite, const CampaignOptions& opts = {});

}  // namespace multirank
