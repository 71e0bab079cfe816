#include "kernels.hpp"
#include "multirank/counting.hpp"
#include "multirank/error.hpp"

#include <cmath>
#include <limits>
#include <numeric>

namespace multirank {

namespace {

using i128 = __int128;

i128 mod_floor(i128 a, i128 m) {
  i128 r = a % m;
  return r < 0 ? r + m : r;
}

// Inverse of a modulo m, gcd(a, m) = 1.
i128 mod_inverse(i128 a, i128 m) {
  i128 t = 0, new_t = 1, r = m, new_r = mod_floor(a, m);
  while (new_r != 0) {
    i128 quot = r / new_r;
    i128 tmp = t - quot * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - quot * new_r;
    r = new_r;
    new_r = tmp;
  }
  return mod_floor(t, m);
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

class BoxKernel {
 public:
  BoxKernel(const IntMultilinearForm& g, const BoxSpec& box) : n_(g.n()), d_(g.d()), box_(box) {
    if (box.bound < 1) throw DomainError("box bound B must be >= 1");
    if (box.modulus < 0) throw DomainError("modulus L must be positive");
    if (box.bound > (std::int64_t{1} << 40)) throw DomainError("box bound too large");
    const BigInt limit = BigInt(1) << 62;
    coeffs_.reserve(g.size());
    for (const auto& c : g.coeffs()) {
      if (box.modulus > 0) {
        BigInt r = c % box.modulus;
        if (r < 0) r += box.modulus;
        coeffs_.push_back(static_cast<i128>(r.convert_to<std::int64_t>()));
      } else {
        if (abs(c) >= limit) throw DomainError("coefficient too large for the box kernels");
        coeffs_.push_back(static_cast<i128>(c.convert_to<std::int64_t>()));
      }
    }
    if (box.modulus == 0) {
      // |G(x)_i| <= max|c| n^{d-1} B^{d-1} must stay inside int128.
      long double maxc = 0;
      for (auto c : coeffs_) maxc = std::max(maxc, std::fabs(static_cast<long double>(c)));
      long double bound = maxc * std::pow(static_cast<long double>(n_) * box.bound, d_ - 1);
      if (bound > std::ldexp(1.0L, 120)) throw DomainError("box kernel would overflow 128-bit accumulation");
    }
  }

  unsigned n() const { return n_; }
  unsigned d() const { return d_; }
  const BoxSpec& box() const { return box_; }

  i128 reduce(i128 v) const { return box_.modulus > 0 ? mod_floor(v, box_.modulus) : v; }

  // out[rest] = sum_i x_i in[i, rest]
  void contract(const std::vector<i128>& in, const std::int64_t* x, std::vector<i128>& out) const {
    const std::size_t stride = in.size() / n_;
    out.assign(stride, 0);
    for (unsigned i = 0; i < n_; ++i) {
      if (x[i] == 0) continue;
      for (std::size_t r = 0; r < stride; ++r) out[r] = reduce(out[r] + x[i] * in[i * stride + r]);
    }
  }

  const std::vector<i128>& coeffs() const { return coeffs_; }

  // Solutions v of a_i + b_i v = 0 (mod L) in the box range; calls emit(v).
  template <class Emit>
  void solve_last(const std::vector<i128>& a, const std::vector<i128>& b, Emit&& emit) const {
    const std::int64_t lo = box_.lowest();
    const std::int64_t width = box_.width();
    const std::int64_t hi = lo + width;  // exclusive
    if (box_.modulus == 0) {
      bool constrained = false;
      i128 v = 0;
      for (unsigned i = 0; i < n_; ++i) {
        if (b[i] == 0) {
          if (a[i] != 0) return;
          continue;
        }
        if ((-a[i]) % b[i] != 0) return;
        i128 cand = (-a[i]) / b[i];
        if (constrained && cand != v) return;
        v = cand;
        constrained = true;
      }
      if (!constrained) {
        for (std::int64_t w = lo; w < hi; ++w) emit(w);
      } else if (v >= lo && v < hi) {
        emit(static_cast<std::int64_t>(v));
      }
      return;
    }
    const i128 L = box_.modulus;
    int pivot = -1;
    for (unsigned i = 0; i < n_; ++i) {
      if (b[i] != 0) {
        pivot = static_cast<int>(i);
        break;
      }
    }
    if (pivot < 0) {
      for (unsigned i = 0; i < n_; ++i)
        if (a[i] != 0) return;
      for (std::int64_t w = lo; w < hi; ++w) emit(w);
      return;
    }
    const i128 bp = b[pivot];
    const i128 target = mod_floor(-a[pivot], L);
    const i128 g = gcd128(bp, L);
    if (target % g != 0) return;
    const i128 m = L / g;
    const i128 v0 = mod_floor((target / g) * mod_inverse(bp / g, m), m);
    for (i128 v = lo + mod_floor(v0 - lo, m); v < hi; v += m) {
      bool ok = true;
      for (unsigned i = 0; i < n_ && ok; ++i) ok = mod_floor(a[i] + b[i] * v, L) == 0;
      if (ok) emit(static_cast<std::int64_t>(v));
    }
  }

 private:
  unsigned n_;
  unsigned d_;
  BoxSpec box_;
  std::vector<i128> coeffs_;
};

// Enumerates x_1..x_{d-2} and the first n-1 coordinates of x_{d-1}; the last
// coordinate is solved. Outer digit k of an item is coordinate k in the
// order x_1[0], ..., x_1[n-1], x_2[0], ...
class BoxWorker {
 public:
  explicit BoxWorker(const BoxKernel& kernel)
      : k_(&kernel),
        blocks_(kernel.d() - 2),
        outer_(blocks_ * kernel.n() + kernel.n() - 1),
        digits_(outer_),
        cached_(blocks_, kUnset),
        stage_(blocks_ + 1),
        x_(outer_ + 1),
        a_(kernel.n()),
        b_(kernel.n()) {
    stage_[0] = kernel.coeffs();
  }

  std::uint64_t outer_items() const {
    std::uint64_t total = 1;
    for (unsigned i = 0; i < outer_; ++i) total *= static_cast<std::uint64_t>(k_->box().width());
    return total;
  }

  template <class Emit>
  void visit(std::uint64_t item, Emit&& emit) {
    const unsigned n = k_->n();
    const std::uint64_t w = static_cast<std::uint64_t>(k_->box().width());
    for (unsigned i = outer_; i-- > 0;) {
      digits_[i] = item % w;
      item /= w;
    }
    for (unsigned i = 0; i < outer_; ++i) x_[i] = k_->box().lowest() + static_cast<std::int64_t>(digits_[i]);
    unsigned first = 0;
    while (first < blocks_ && block_key(first) == cached_[first]) ++first;
    for (unsigned k = first; k < blocks_; ++k) {
      k_->contract(stage_[k], x_.data() + k * n, stage_[k + 1]);
      cached_[k] = block_key(k);
    }
    const auto& m = stage_[blocks_];  // n x n, m[j * n + i] = G(.., e_j, e_i)
    const std::int64_t* y = x_.data() + blocks_ * n;
    for (unsigned i = 0; i < n; ++i) {
      i128 acc = 0;
      for (unsigned j = 0; j + 1 < n; ++j) acc = k_->reduce(acc + y[j] * m[j * n + i]);
      a_[i] = acc;
      b_[i] = m[(n - 1) * n + i];
    }
    k_->solve_last(a_, b_, [&](std::int64_t v) {
      x_[outer_] = v;
      emit(x_);
    });
  }

  std::uint64_t operator()(std::uint64_t item) {
    std::uint64_t count = 0;
    visit(item, [&](const std::vector<std::int64_t>&) { ++count; });
    return count;
  }

 private:
  static constexpr std::uint64_t kUnset = std::numeric_limits<std::uint64_t>::max();

  std::uint64_t block_key(unsigned k) const {
    std::uint64_t key = 0;
    const std::uint64_t w = static_cast<std::uint64_t>(k_->box().width());
    for (unsigned i = 0; i < k_->n(); ++i) key = key * w + digits_[k * k_->n() + i];
    return key;
  }

  const BoxKernel* k_;
  unsigned blocks_;
  unsigned outer_;
  std::vector<std::uint64_t> digits_;
  std::vector<std::uint64_t> cached_;
  std::vector<std::vector<i128>> stage_;
  std::vector<std::int64_t> x_;
  std::vector<i128> a_;
  std::vector<i128> b_;
};

void check_box_budget(const IntMultilinearForm& g, const BoxSpec& box, double bits) {
  const double lw = std::log2(static_cast<double>(box.width()));
  check_budget("box size", g.n() * (g.d() - 1) * lw, 34.0);
  check_budget("box outer enumeration", (g.n() * (g.d() - 1) - 1) * lw, bits);
}

}  // namespace

BigInt count_box(const IntMultilinearForm& g, const BoxSpec& box, Budget budget) {
  BoxKernel kernel(g, box);
  check_box_budget(g, box, budget.bits);
  BoxWorker worker(kernel);
  return detail::parallel_sum(worker.outer_items(), worker);
}

std::vector<std::vector<std::int64_t>> box_solutions(const IntMultilinearForm& g, const BoxSpec& box,
                                                     Budget budget) {
  BoxKernel kernel(g, box);
  check_box_budget(g, box, budget.bits);
  BoxWorker worker(kernel);
  std::vector<std::vector<std::int64_t>> out;
  const std::uint64_t items = worker.outer_items();
  for (std::uint64_t i = 0; i < items; ++i) {
    worker.visit(i, [&](const std::vector<std::int64_t>& x) { out.push_back(x); });
  }
  return out;
}

BigInt count_box_serial(const IntMultilinearForm& g, const BoxSpec& box) {
  if (box.bound < 1) throw DomainError("box bound B must be >= 1");
  const unsigned n = g.n();
  const unsigned coords = n * (g.d() - 1);
  check_budget("count_box_serial enumeration", coords * std::log2(static_cast<double>(box.width())), kNaiveBits);
  std::vector<i128> coeffs;
  for (const auto& c : g.coeffs()) coeffs.push_back(static_cast<i128>(c.convert_to<std::int64_t>()));
  std::vector<std::int64_t> x(coords, box.lowest());
  std::uint64_t count = 0;
  const std::int64_t hi = box.lowest() + box.width();
  for (;;) {
    bool zero = true;
    for (unsigned i = 0; i < n && zero; ++i) {
      i128 acc = 0;
      for (std::size_t flat = 0; flat < coeffs.size(); ++flat) {
        if (coeffs[flat] == 0 || flat % n != i) continue;
        i128 term = coeffs[flat];
        std::size_t rest = flat / n;
        for (unsigned slot = g.d() - 1; slot-- > 0;) {
          term *= x[slot * n + rest % n];
          rest /= n;
        }
        acc += term;
      }
      zero = box.modulus > 0 ? (acc % box.modulus == 0) : (acc == 0);
    }
    count += zero;
    unsigned i = 0;
    while (i < coords && ++x[i] == hi) x[i++] = box.lowest();
    if (i == coords) break;
  }
  return count;
}

}  // namespace multirank
