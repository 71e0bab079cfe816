#include "multirank/ranks.hpp"

#include "multirank/error.hpp"

#include <cmath>

namespace multirank {

namespace {

// k with base^k == v, if any.
std::optional<unsigned> exact_log(const BigInt& v, std::uint64_t base) {
  if (v < 1) return std::nullopt;
  BigInt p = 1;
  unsigned k = 0;
  while (p < v) {
    p *= base;
    ++k;
  }
  if (p == v) return k;
  return std::nullopt;
}

}  // namespace

double ExactLogRank::value() const {
  if (auto k = exact_log(count, base)) return static_cast<double>(ambient) - *k;
  return static_cast<double>(ambient) - big_log(count) / std::log(static_cast<double>(base));
}

bool ExactLogRank::integral() const { return exact_log(count, base).has_value(); }

bool ExactLogRank::at_most(double k) const {
  if (k >= ambient) return true;
  if (k < 0) return false;
  if (k == std::floor(k)) return count >= big_pow(base, ambient - static_cast<unsigned>(k));
  return value() <= k;
}

unsigned ExactLogRank::ceil() const {
  for (unsigned k = 0; k < ambient; ++k)
    if (at_most(k)) return k;
  return ambient;
}

ExactLogRank ark_exact(const MultilinearForm& f, unsigned level, Budget budget) {
  ExactLogRank r;
  r.ambient = f.n() * (f.d() - 1);
  r.count = count_sf(f, level, budget);
  r.base = big_pow(f.field().q(), level).convert_to<std::uint64_t>();
  return r;
}

std::vector<double> level_dims(const CountProfile& profile) {
  std::vector<double> dims;
  for (const auto& [l, count] : profile.entries) {
    const std::uint64_t Q = big_pow(profile.q, l).convert_to<std::uint64_t>();
    if (auto k = exact_log(count, Q)) {
      dims.push_back(*k);
    } else {
      dims.push_back(big_log(count) / (l * std::log(static_cast<double>(profile.q))));
    }
  }
  return dims;
}

LevelEstimate stabilize(CountProfile profile) {
  LevelEstimate est;
  est.per_level_dim = level_dims(profile);
  est.profile = std::move(profile);
  const auto& dims = est.per_level_dim;
  const unsigned ambient = static_cast<unsigned>(est.profile.ambient);
  if (dims.empty()) throw DomainError("stabilization needs at least one level");
  const double last = dims.back();
  const double rounded = std::round(last);
  est.gap = std::fabs(last - rounded);
  est.agree = dims.size() >= 2 && std::round(dims[dims.size() - 2]) == rounded;
  const bool ok = dims.size() >= 2 ? (est.agree && est.gap < 0.25) : est.gap == 0.0;
  if (ok) {
    est.stabilized = ambient - static_cast<unsigned>(rounded);
    est.lower = est.upper = *est.stabilized;
  } else {
    const double codim = ambient - last;
    est.lower = static_cast<unsigned>(std::max(0.0, std::floor(codim)));
    est.upper = std::min(ambient, static_cast<unsigned>(std::ceil(codim)));
  }
  return est;
}

GrkEstimate grk_estimate(const MultilinearForm& f, unsigned l_max, Budget budget) {
  if (l_max < 1) throw DomainError("l_max must be >= 1");
  return stabilize(count_profile(f, l_max, budget));
}

BrkEstimate brk_estimate(const HomogeneousForm& f, unsigned l_max, Budget budget) {
  if (l_max < 1) throw DomainError("l_max must be >= 1");
  CountProfile profile;
  profile.q = f.field().q();
  profile.ambient = f.n();
  for (unsigned l = 1; l <= l_max; ++l) profile.entries.emplace_back(l, count_singular(f, l, budget));
  return stabilize(std::move(profile));
}

HeightRankEstimate gamma_q_estimate(const MultilinearForm& f, unsigned r_max, Budget budget) {
  if (r_max < 1) throw DomainError("R_max must be >= 1");
  HeightRankEstimate est;
  est.ambient = f.n() * (f.d() - 1);
  est.q = f.field().q();
  est.ark = ark_exact(f, 1, budget);
  const double lq = std::log(static_cast<double>(est.q));
  for (unsigned r = 1; r <= r_max; ++r) {
    HeightPoint pt;
    pt.param = r;
    pt.count = count_nr(f, r, budget);
    if (auto k = exact_log(pt.count, est.q)) {
      pt.value = est.ambient - static_cast<double>(*k) / r;
    } else {
      pt.value = est.ambient - big_log(pt.count) / (lq * r);
    }
    est.dominates_ark.push_back(pt.count <= boost::multiprecision::pow(est.ark->count, r));
    est.points.push_back(std::move(pt));
  }
  for (std::size_t i = 1; i < est.points.size(); ++i) {
    if (est.points[i].value > est.points[i - 1].value) est.non_increasing = false;
    if (est.points[i].value < est.points[i - 1].value) est.non_decreasing = false;
  }
  return est;
}

HeightRankEstimate delta0_estimate(const IntMultilinearForm& g, const std::vector<std::int64_t>& l_grid,
                                   Budget budget) {
  HeightRankEstimate est;
  est.ambient = g.n() * (g.d() - 1);
  for (auto L : l_grid) {
    if (L < 2) throw DomainError("delta_0 grid values must be >= 2");
    HeightPoint pt;
    pt.param = static_cast<std::uint64_t>(L);
    pt.count = count_box(g, BoxSpec{L, false, L}, budget);
    if (auto k = exact_log(pt.count, static_cast<std::uint64_t>(L))) {
      pt.value = est.ambient - static_cast<double>(*k);
    } else {
      pt.value = est.ambient - big_log(pt.count) / std::log(static_cast<double>(L));
    }
    est.points.push_back(std::move(pt));
  }
  for (std::size_t i = 1; i < est.points.size(); ++i) {
    if (est.points[i].value > est.points[i - 1].value) est.non_increasing = false;
    if (est.points[i].value < est.points[i - 1].value) est.non_decreasing = false;
  }
  return est;
}

}  // namespace multirank
