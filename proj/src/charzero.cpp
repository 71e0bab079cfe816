#include "multirank/charzero.hpp"

#include "multirank/error.hpp"

#include <algorithm>
#include <cmath>

namespace multirank {

MultilinearForm reduce_mod_p(const IntMultilinearForm& f, std::uint32_t p) {
  FieldPtr field = Field::make(p, 1);
  MultilinearForm out(field, f.d(), f.n());
  for (std::size_t i = 0; i < f.size(); ++i) {
    BigInt r = f.coeffs()[i] % p;
    if (r < 0) r += p;
    out.coeffs()[i] = r.convert_to<Elem>();
  }
  return out;
}

std::vector<std::uint32_t> auto_primes(unsigned n, unsigned d, double bits, unsigned count) {
  const unsigned blocks = n * (d - 2);
  std::uint64_t ceiling = kMaxFieldOrder;
  if (blocks > 0) ceiling = std::min<std::uint64_t>(ceiling, static_cast<std::uint64_t>(std::exp2(bits / blocks)));
  std::vector<std::uint32_t> out;
  for (std::uint64_t p = ceiling; p >= 2 && out.size() < count; --p) {
    if (is_prime(p)) out.push_back(static_cast<std::uint32_t>(p));
  }
  std::reverse(out.begin(), out.end());
  return out;
}

PrimeScan liminf_ark_scan(const IntMultilinearForm& f, std::vector<std::uint32_t> primes, Budget budget) {
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  PrimeScan scan;
  for (auto p : primes) {
    if (!is_prime(p)) throw DomainError("not a prime: " + std::to_string(p));
    scan.ark.push_back(ark_exact(reduce_mod_p(f, p), 1, budget));
    const double v = scan.ark.back().value();
    scan.running_min.push_back(scan.running_min.empty() ? v : std::min(scan.running_min.back(), v));
  }
  scan.primes = std::move(primes);
  if (scan.ark.size() >= 3) {
    const std::size_t m = scan.ark.size();
    const double k = std::round(scan.ark[m - 1].value());
    bool ok = true;
    for (std::size_t i = m - 3; i < m; ++i) ok = ok && std::fabs(scan.ark[i].value() - k) < 0.25;
    if (ok) scan.grk_estimate_q = static_cast<unsigned>(k);
  }
  return scan;
}

std::int64_t lift_height(std::int64_t L, double sigma) {
  return static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(L), sigma)));
}

BigInt row_height_constant(const IntMultilinearForm& f) {
  const unsigned n = f.n();
  std::vector<BigInt> rows(n, 0);
  for (std::size_t flat = 0; flat < f.size(); ++flat) rows[flat % n] += abs(f.coeffs()[flat]);
  return *std::max_element(rows.begin(), rows.end());
}

LiftReport lift_search(const IntMultilinearForm& f, std::int64_t L, double sigma, bool require_threshold,
                       Budget budget) {
  if (L < 2) throw DomainError("L must be >= 2");
  if (!(sigma > 0) || !(sigma < 1.0 / (f.d() - 1))) throw DomainError("sigma must lie in (0, 1/(d-1))");
  LiftReport rep;
  rep.L = L;
  rep.sigma = sigma;
  rep.height = lift_height(L, sigma);
  rep.height_constant = row_height_constant(f);
  rep.threshold_reached = rep.height_constant * big_pow(rep.height - 1, f.d() - 1) < L;
  if (require_threshold && !rep.threshold_reached) {
    throw DomainError("threshold not reached: C (h-1)^(d-1) = " +
                      to_string(rep.height_constant * big_pow(rep.height - 1, f.d() - 1)) + " >= L = " +
                      std::to_string(L));
  }
  rep.points = box_solutions(f, BoxSpec{rep.height, true, L}, budget);
  std::vector<std::vector<BigInt>> xs(f.d());
  const unsigned n = f.n();
  for (const auto& x : rep.points) {
    bool zero = true;
    for (unsigned i = 0; i < n && zero; ++i) {
      for (unsigned s = 0; s + 1 < f.d(); ++s) {
        xs[s].assign(x.begin() + s * n, x.begin() + (s + 1) * n);
      }
      xs[f.d() - 1].assign(n, 0);
      xs[f.d() - 1][i] = 1;
      zero = eval(f, xs) == 0;
    }
    rep.exact.push_back(zero);
  }
  rep.dimension_statistic =
      rep.points.empty() ? 0.0 : big_log(BigInt(rep.points.size())) / std::log(static_cast<double>(L));
  return rep;
}

}  // namespace multirank
