#pragma once

#include "multirank/bigint.hpp"
#include "multirank/counting.hpp"
#include "multirank/polynomial.hpp"
#include "multirank/tensor.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace multirank {

/// ambient - log_base(count), kept as the exact triple.
struct ExactLogRank {
  unsigned ambient = 0;
  BigInt count = 1;
  std::uint64_t base = 2;

  double value() const;
  /// True when count is an exact power of base (the rank is then an integer).
  bool integral() const;
  /// Smallest integer k with value() <= k, decided on the integers.
  unsigned ceil() const;
  /// value() <= k, decided on the integers: count >= base^(ambient - k).
  bool at_most(double k) const;
};

/// Analytic rank of F over F_{q^l}: n(d-1) - log_{q^l} |S_F(F_{q^l})|.
ExactLogRank ark_exact(const MultilinearForm& f, unsigned level = 1, Budget budget = {});

/// Dimension-by-counting estimate shared by grk and Brk.
struct LevelEstimate {
  CountProfile profile;
  /// log_{q^l}(count_l) per level.
  std::vector<double> per_level_dim;
  /// Codimension, present only when stabilized.
  std::optional<unsigned> stabilized;
  /// |dim - round(dim)| at the last level.
  double gap = 0.0;
  /// The last two levels round to the same integer.
  bool agree = false;
  /// Interval for the codimension; lower == upper when stabilized.
  unsigned lower = 0;
  unsigned upper = 0;
};

using GrkEstimate = LevelEstimate;
using BrkEstimate = LevelEstimate;

/// Stabilization rule: the last two levels round to the same integer and
/// the last rounding gap is below 0.25. With a single level only an exact
/// power counts as stabilized.
LevelEstimate stabilize(CountProfile profile);

/// log_{q^l} of each count; exact for pure powers.
std::vector<double> level_dims(const CountProfile& profile);

GrkEstimate grk_estimate(const MultilinearForm& f, unsigned l_max, Budget budget = {});

/// Codimension of the singular locus by counting at levels 1..l_max.
BrkEstimate brk_estimate(const HomogeneousForm& f, unsigned l_max, Budget budget = {});

/// One rank-one term G(x_I) H(x_J) of a partition-rank decomposition.
/// `slots` is I (contains slot 0), `left` has n^|I| entries, `right` n^(d-|I|).
struct PrkTerm {
  std::vector<unsigned> slots;
  std::vector<Elem> left;
  std::vector<Elem> right;
};

struct PrkResult {
  unsigned lower = 0;
  unsigned upper = 0;
  bool exact = false;
  /// Decomposition with `upper` terms, when known.
  std::optional<std::vector<PrkTerm>> certificate;
};

/// Expands a term to a dense d-tensor.
MultilinearForm expand(const PrkTerm& term, const FieldPtr& field, unsigned d, unsigned n);

/// True when the terms sum to f exactly and each has flattening rank one.
bool certificate_sums_to(const std::vector<PrkTerm>& terms, const MultilinearForm& f);

/// Bipartitions {I, complement} with 0 in I, I a proper subset, in increasing bitmask order.
std::vector<std::vector<unsigned>> partitions(unsigned d);

/// Flattening of f along I: rows indexed by the slots in I, columns by the rest.
Matrix flattening(const MultilinearForm& f, const std::vector<unsigned>& slots);

/// Lower bound ceil(ark) (at least 1 for F != 0), upper bound min flattening
/// rank with its certificate.
PrkResult prk_bounds(const MultilinearForm& f, Budget budget = {});

/// Exact partition rank by iterative deepening over rank-one terms, up to r_max.
/// When the search would pass r_max or the budget, returns bounds with exact = false.
PrkResult prk_exact_small(const MultilinearForm& f, unsigned r_max, Budget budget = {});

/// Number of (partition, projective left factor, nonzero right factor) triples.
std::uint64_t rank_one_pair_count(std::uint64_t q, unsigned d, unsigned n);

/// Number of distinct nonzero d-tensors of partition rank one, by enumeration.
std::size_t rank_one_distinct_count(const FieldPtr& field, unsigned d, unsigned n);

struct StrTerm {
  HomogeneousForm g;
  HomogeneousForm h;
};

struct StrResult {
  unsigned lower = 0;
  unsigned upper = 0;
  bool exact = false;
  std::optional<std::vector<StrTerm>> certificate;
};

bool certificate_sums_to(const std::vector<StrTerm>& terms, const HomogeneousForm& f);

/// Strength: least s with f = sum g_i h_i, 1 <= deg g_i <= d/2. Iterative
/// deepening over sets of projective g's; membership of f in the span of
/// {g_i * monomials} is a linear system.
StrResult str_exact_small(const HomogeneousForm& f, Budget budget = {});

/// One point of a height-rank profile.
struct HeightPoint {
  std::uint64_t param = 0;  ///< R (char p) or L (char 0)
  BigInt count = 0;
  double value = 0.0;
};

struct HeightRankEstimate {
  unsigned ambient = 0;
  std::uint64_t q = 0;  ///< field size for gamma_q, 0 for delta_0
  std::vector<HeightPoint> points;
  /// Analytic rank of F for comparison (gamma_q only).
  std::optional<ExactLogRank> ark;
  /// Per point: N_R <= |S_F(F_q)|^R, decided on the integers (gamma_q only).
  std::vector<bool> dominates_ark;
  /// values non-increasing / non-decreasing along the grid.
  bool non_increasing = true;
  bool non_decreasing = true;
};

/// gamma_R = n(d-1) - log_q(N_R) / R for R = 1..r_max.
HeightRankEstimate gamma_q_estimate(const MultilinearForm& f, unsigned r_max, Budget budget = {});

/// delta_L = n(d-1) - log_L(N_L), N_L the count of x in [0, L)^{n(d-1)} with G(x, e_i) = 0 mod L.
HeightRankEstimate delta0_estimate(const IntMultilinearForm& g, const std::vector<std::int64_t>& l_grid,
                                   Budget budget = {});

}  // namespace multirank
