#include "multirank/counting.hpp"

#include "kernels.hpp"
#include "multirank/error.hpp"
#include "multirank/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace multirank {

using detail::ProjectiveSpace;

void check_budget(const std::string& what, double log2_size, double limit) {
  if (log2_size > limit + 1e-9) throw BudgetError(what, log2_size, limit);
}

namespace {

double log2q(std::uint64_t q) { return std::log2(static_cast<double>(q)); }

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

// Sum_r hist[r] * Q^{top - r}.
BigInt weighted_sum(const std::vector<std::uint64_t>& hist, std::uint64_t Q, unsigned top) {
  BigInt total = 0;
  for (unsigned r = 0; r < hist.size() && r <= top; ++r) {
    if (hist[r] == 0) continue;
    total += BigInt(hist[r]) * big_pow(Q, top - r);
  }
  return total;
}

bool is_gf2(const Field& f) { return f.p() == 2 && f.e() == 1; }

unsigned square_rank(const Field& field, const Elem* m, unsigned n, std::vector<Elem>& scratch,
                     std::vector<std::uint64_t>& bits) {
  if (is_gf2(field) && n <= 64) {
    bits.assign(n, 0);
    for (unsigned i = 0; i < n; ++i) {
      std::uint64_t row = 0;
      for (unsigned j = 0; j < n; ++j) row |= std::uint64_t{m[i * n + j]} << j;
      bits[i] = row;
    }
    return rank_gf2(bits);
  }
  scratch.assign(m, m + std::size_t{n} * n);
  return rank_in_place(field, scratch, n, n);
}

// Slice-matrix rank of F at a tuple of projective representatives.
class SliceRankWorker {
 public:
  SliceRankWorker(const MultilinearForm& f, const ProjectiveSpace& proj)
      : f_(&f), proj_(&proj), blocks_(f.d() - 2), stage_(blocks_ + 1), reps_(blocks_, kUnset), digits_(blocks_),
        x_(f.n()) {
    std::size_t size = f.size();
    for (unsigned k = 0; k <= blocks_; ++k) {
      stage_[k].assign(size, 0);
      size /= f.n();
    }
    std::copy(f.coeffs().begin(), f.coeffs().end(), stage_[0].begin());
  }

  unsigned operator()(std::uint64_t item) {
    detail::decode_tuple(item, proj_->count(), blocks_, digits_.data());
    unsigned first = 0;
    while (first < blocks_ && digits_[first] == reps_[first]) ++first;
    for (unsigned k = first; k < blocks_; ++k) {
      proj_->decode(digits_[k], x_.data());
      contract_leading(f_->field(), stage_[k], f_->n(), x_, stage_[k + 1]);
      reps_[k] = digits_[k];
    }
    return square_rank(f_->field(), stage_[blocks_].data(), f_->n(), scratch_, bits_);
  }

 private:
  static constexpr std::uint64_t kUnset = std::numeric_limits<std::uint64_t>::max();
  const MultilinearForm* f_;
  const ProjectiveSpace* proj_;
  unsigned blocks_;
  std::vector<std::vector<Elem>> stage_;
  std::vector<std::uint64_t> reps_;
  std::vector<std::uint64_t> digits_;
  Vec x_;
  std::vector<Elem> scratch_;
  std::vector<std::uint64_t> bits_;
};

// Number of tuples of `blocks` vectors in F^N with at least one zero block.
BigInt tuples_with_zero_block(std::uint64_t Q, unsigned N, unsigned blocks) {
  BigInt all = big_pow(Q, std::uint64_t{N} * blocks);
  BigInt nonzero = boost::multiprecision::pow(big_pow(Q, N) - 1, blocks);
  return all - nonzero;
}

}  // namespace

BigInt count_sf(const MultilinearForm& f, unsigned level, Budget budget) {
  const MultilinearForm fl = lift_to_level(f, level);
  const Field& field = fl.field();
  const std::uint64_t Q = field.q();
  const unsigned n = fl.n();
  const unsigned blocks = fl.d() - 2;
  std::vector<Elem> scratch;
  std::vector<std::uint64_t> bits;
  if (blocks == 0) {
    return big_pow(Q, n - square_rank(field, fl.coeffs().data(), n, scratch, bits));
  }
  ProjectiveSpace proj(static_cast<std::uint32_t>(Q), n);
  check_budget("count_sf slice enumeration", blocks * std::log2(static_cast<double>(proj.count())), budget.bits);
  const std::uint64_t items = ipow(proj.count(), blocks);
  auto hist = detail::parallel_histogram(items, n + 1, SliceRankWorker(fl, proj));
  BigInt total = tuples_with_zero_block(Q, n, blocks) * big_pow(Q, n);
  total += big_pow(Q - 1, blocks) * weighted_sum(hist, Q, n);
  return total;
}

BigInt count_sf_serial(const MultilinearForm& f, unsigned level, Budget budget) {
  const MultilinearForm fl = lift_to_level(f, level);
  const Field& field = fl.field();
  const std::uint32_t Q = field.q();
  const unsigned n = fl.n();
  const unsigned blocks = fl.d() - 2;
  const unsigned coords = n * blocks;
  check_budget("count_sf_serial enumeration", coords * log2q(Q), std::min(budget.bits, kNaiveBits));
  std::vector<Elem> digits(coords, 0);
  std::vector<std::uint64_t> hist(n + 1, 0);
  std::vector<Elem> cur, next;
  for (;;) {
    cur.assign(fl.coeffs().begin(), fl.coeffs().end());
    for (unsigned k = 0; k < blocks; ++k) {
      next.assign(cur.size() / n, 0);
      contract_leading(field, cur, n, std::span<const Elem>(digits.data() + k * n, n), next);
      cur.swap(next);
    }
    ++hist[rank_in_place(field, cur, n, n)];
    unsigned i = 0;
    while (i < coords && ++digits[i] == Q) digits[i++] = 0;
    if (i == coords) break;
  }
  return weighted_sum(hist, Q, n);
}

BigInt count_sf_naive(const MultilinearForm& f, unsigned level) {
  const MultilinearForm fl = lift_to_level(f, level);
  const std::uint32_t Q = fl.field().q();
  const unsigned n = fl.n();
  const unsigned coords = n * (fl.d() - 1);
  check_budget("count_sf_naive enumeration", coords * log2q(Q), kNaiveBits);
  std::vector<Vec> xs(fl.d() - 1, Vec(n, 0));
  std::vector<std::vector<Elem>> stage(fl.d());
  stage[0].assign(fl.coeffs().begin(), fl.coeffs().end());
  for (unsigned k = 1; k < fl.d(); ++k) stage[k].resize(stage[k - 1].size() / n);
  std::uint64_t count = 0;
  for (;;) {
    for (unsigned k = 0; k + 1 < fl.d(); ++k) contract_leading(fl.field(), stage[k], n, xs[k], stage[k + 1]);
    const auto& last = stage.back();
    if (std::all_of(last.begin(), last.end(), [](Elem v) { return v == 0; })) ++count;
    unsigned i = 0;
    while (i < coords) {
      Elem& digit = xs[i / n][i % n];
      if (++digit < Q) break;
      digit = 0;
      ++i;
    }
    if (i == coords) break;
  }
  return count;
}

namespace {

class SingularWorker {
 public:
  SingularWorker(const std::vector<CompiledPoly>& parts, unsigned n, const ProjectiveSpace& proj)
      : parts_(&parts), proj_(&proj), x_(n), powers_(parts.empty() ? 0 : parts[0].powers_size()) {}

  unsigned operator()(std::uint64_t item) {
    proj_->decode(item, x_.data());
    (*parts_)[0].fill_powers(x_, powers_);
    for (const auto& p : *parts_)
      if (p.evaluate(powers_) != 0) return 0;
    return 1;
  }

 private:
  const std::vector<CompiledPoly>* parts_;
  const ProjectiveSpace* proj_;
  Vec x_;
  std::vector<Elem> powers_;
};

HomogeneousForm poly_to_level(const HomogeneousForm& f, unsigned level) {
  if (level < 1) throw DomainError("extension level must be >= 1");
  if (level == 1) return f;
  FieldPtr target = Field::make(f.field().p(), f.field().e() * level);
  return base_change(f, FieldEmbedding(f.field_ptr(), target));
}

}  // namespace

BigInt count_singular(const HomogeneousForm& f, unsigned level, Budget budget) {
  if (f.d() < 1) throw DomainError("singular locus of a constant");
  const HomogeneousForm fl = poly_to_level(f, level);
  const std::uint64_t Q = fl.field().q();
  const unsigned n = fl.n();
  ProjectiveSpace proj(static_cast<std::uint32_t>(Q), n);
  check_budget("count_singular enumeration", std::log2(static_cast<double>(proj.count())),
               std::min(budget.bits, kNaiveBits));
  std::vector<CompiledPoly> parts;
  for (const auto& g : partials(fl)) parts.emplace_back(g);
  auto hist = detail::parallel_histogram(proj.count(), 2, SingularWorker(parts, n, proj));
  return 1 + BigInt(Q - 1) * hist[1];
}

BigInt count_singular_serial(const HomogeneousForm& f, unsigned level) {
  const HomogeneousForm fl = poly_to_level(f, level);
  const std::uint32_t Q = fl.field().q();
  const unsigned n = fl.n();
  check_budget("count_singular_serial enumeration", n * log2q(Q), kNaiveBits);
  const auto parts = partials(fl);
  Vec x(n, 0);
  std::uint64_t count = 0;
  for (;;) {
    bool vanish = true;
    for (const auto& p : parts) {
      if (p.evaluate(x) != 0) {
        vanish = false;
        break;
      }
    }
    count += vanish;
    unsigned i = 0;
    while (i < n && ++x[i] == Q) x[i++] = 0;
    if (i == n) break;
  }
  return count;
}

namespace {

// Polynomial-coefficient contraction: in holds n^k polys of length `len`,
// x holds n polys of length R; out holds n^{k-1} polys of length len + R - 1.
void contract_poly(const Field& field, const std::vector<Elem>& in, std::size_t len, unsigned n, const Elem* x,
                   unsigned R, std::vector<Elem>& out) {
  const std::size_t count_out = in.size() / len / n;
  const std::size_t out_len = len + R - 1;
  out.assign(count_out * out_len, 0);
  for (unsigned i = 0; i < n; ++i) {
    for (unsigned s = 0; s < R; ++s) {
      const Elem xs = x[i * R + s];
      if (xs == 0) continue;
      for (std::size_t r = 0; r < count_out; ++r) {
        const Elem* src = in.data() + (i * count_out + r) * len;
        Elem* dst = out.data() + r * out_len + s;
        for (std::size_t k = 0; k < len; ++k) dst[k] = field.add(dst[k], field.mul(xs, src[k]));
      }
    }
  }
}

// Rank of the linear system in the last block's nR unknowns, given the
// n x n matrix of polynomials C[a][i] (length len) left after contracting
// the first d-2 blocks.
unsigned last_block_rank(const Field& field, const std::vector<Elem>& c, std::size_t len, unsigned n, unsigned R,
                         std::vector<Elem>& sys) {
  const std::size_t eq_per_row = len + R - 1;
  const std::size_t rows = n * eq_per_row;
  const std::size_t cols = std::size_t{n} * R;
  sys.assign(rows * cols, 0);
  for (unsigned a = 0; a < n; ++a) {
    for (unsigned i = 0; i < n; ++i) {
      const Elem* poly = c.data() + (a * n + i) * len;
      for (unsigned s = 0; s < R; ++s) {
        for (std::size_t k = 0; k < len; ++k) {
          sys[(i * eq_per_row + k + s) * cols + a * R + s] = poly[k];
        }
      }
    }
  }
  return rank_in_place(field, sys, rows, cols);
}

class NrWorker {
 public:
  NrWorker(const MultilinearForm& f, unsigned R, const ProjectiveSpace& proj)
      : f_(&f), R_(R), proj_(&proj), blocks_(f.d() - 2), stage_(blocks_ + 1), len_(blocks_ + 1),
        reps_(blocks_, kUnset), digits_(blocks_), x_(std::size_t{f.n()} * R) {
    stage_[0].assign(f.coeffs().begin(), f.coeffs().end());
    for (unsigned k = 0; k <= blocks_; ++k) len_[k] = k * (R - 1) + 1;
  }

  unsigned operator()(std::uint64_t item) {
    detail::decode_tuple(item, proj_->count(), blocks_, digits_.data());
    unsigned first = 0;
    while (first < blocks_ && digits_[first] == reps_[first]) ++first;
    for (unsigned k = first; k < blocks_; ++k) {
      proj_->decode(digits_[k], x_.data());
      contract_poly(f_->field(), stage_[k], len_[k], f_->n(), x_.data(), R_, stage_[k + 1]);
      reps_[k] = digits_[k];
    }
    return last_block_rank(f_->field(), stage_[blocks_], len_[blocks_], f_->n(), R_, sys_);
  }

 private:
  static constexpr std::uint64_t kUnset = std::numeric_limits<std::uint64_t>::max();
  const MultilinearForm* f_;
  unsigned R_;
  const ProjectiveSpace* proj_;
  unsigned blocks_;
  std::vector<std::vector<Elem>> stage_;
  std::vector<std::size_t> len_;
  std::vector<std::uint64_t> reps_;
  std::vector<std::uint64_t> digits_;
  std::vector<Elem> x_;
  std::vector<Elem> sys_;
};

}  // namespace

BigInt count_nr(const MultilinearForm& f, unsigned R, Budget budget) {
  if (R < 1) throw DomainError("degree bound R must be >= 1");
  const Field& field = f.field();
  const std::uint64_t q = field.q();
  const unsigned n = f.n();
  const unsigned blocks = f.d() - 2;
  const unsigned N = n * R;
  if (blocks == 0) {
    std::vector<Elem> sys;
    std::vector<Elem> c(f.coeffs().begin(), f.coeffs().end());
    return big_pow(q, N - last_block_rank(field, c, 1, n, R, sys));
  }
  check_budget("count_nr enumeration", N * log2q(q), 64.0);
  ProjectiveSpace proj(static_cast<std::uint32_t>(q), N);
  check_budget("count_nr enumeration", blocks * std::log2(static_cast<double>(proj.count())), budget.bits);
  const std::uint64_t items = ipow(proj.count(), blocks);
  auto hist = detail::parallel_histogram(items, N + 1, NrWorker(f, R, proj));
  BigInt total = tuples_with_zero_block(q, N, blocks) * big_pow(q, N);
  total += big_pow(q - 1, blocks) * weighted_sum(hist, q, N);
  return total;
}

namespace {

// G(x)_i = F(x_1, ..., x_{d-1}, e_i) with polynomial entries truncated to
// length `trunc` (0 = no truncation). Each x_j has n polys of length len_in.
std::vector<Elem> eval_poly_blocks(const MultilinearForm& f, const std::vector<std::vector<Elem>>& xs,
                                   std::size_t len_in, std::size_t trunc) {
  const Field& field = f.field();
  const unsigned n = f.n();
  std::vector<Elem> cur(f.coeffs().begin(), f.coeffs().end());
  std::size_t len = 1;
  for (const auto& x : xs) {
    std::size_t out_len = len + len_in - 1;
    if (trunc && out_len > trunc) out_len = trunc;
    const std::size_t count_out = cur.size() / len / n;
    std::vector<Elem> next(count_out * out_len, 0);
    for (unsigned i = 0; i < n; ++i) {
      for (std::size_t s = 0; s < len_in; ++s) {
        const Elem xs_ = x[i * len_in + s];
        if (xs_ == 0) continue;
        for (std::size_t r = 0; r < count_out; ++r) {
          const Elem* src = cur.data() + (i * count_out + r) * len;
          Elem* dst = next.data() + r * out_len;
          for (std::size_t k = 0; k < len && k + s < out_len; ++k)
            dst[k + s] = field.add(dst[k + s], field.mul(xs_, src[k]));
        }
      }
    }
    cur.swap(next);
    len = out_len;
  }
  return cur;
}

bool all_zero(const std::vector<Elem>& v) {
  for (Elem c : v)
    if (c != 0) return false;
  return true;
}

}  // namespace

BigInt count_nr_naive(const MultilinearForm& f, unsigned R) {
  if (R < 1) throw DomainError("degree bound R must be >= 1");
  const std::uint32_t q = f.field().q();
  const unsigned n = f.n();
  const unsigned blocks = f.d() - 1;
  const unsigned coords = n * R * blocks;
  check_budget("count_nr_naive enumeration", coords * log2q(q), kNaiveBits);
  std::vector<std::vector<Elem>> xs(blocks, std::vector<Elem>(std::size_t{n} * R, 0));
  std::uint64_t count = 0;
  for (;;) {
    if (all_zero(eval_poly_blocks(f, xs, R, 0))) ++count;
    unsigned i = 0;
    while (i < coords) {
      Elem& digit = xs[i / (n * R)][i % (n * R)];
      if (++digit < q) break;
      digit = 0;
      ++i;
    }
    if (i == coords) break;
  }
  return count;
}

BigInt count_fiber(const MultilinearForm& f, unsigned a, unsigned b, std::span<const TruncVec> y) {
  if (b > a) throw DomainError("count_fiber: quotient level b exceeds precision a");
  if (a < 1) throw DomainError("count_fiber: precision a must be >= 1");
  const std::uint32_t q = f.field().q();
  const unsigned n = f.n();
  const unsigned blocks = f.d() - 1;
  check_budget("count_fiber enumeration", n * a * blocks * log2q(q), kNaiveBits);
  if (y.size() != blocks) throw DomainError("count_fiber: expected d-1 target blocks");
  for (const auto& yi : y) {
    if (yi.size() != std::size_t{n} * b) throw DomainError("count_fiber: target block must have n*b coefficients");
    for (Elem c : yi)
      if (!f.field().contains(c)) throw DomainError("count_fiber: target coefficient outside the field");
  }
  std::vector<std::vector<Elem>> xs(blocks, std::vector<Elem>(std::size_t{n} * a, 0));
  for (unsigned j = 0; j < blocks; ++j)
    for (unsigned i = 0; i < n; ++i)
      for (unsigned s = 0; s < b; ++s) xs[j][i * a + s] = y[j][i * b + s];
  const unsigned free_per_entry = a - b;
  const unsigned coords = blocks * n * free_per_entry;
  std::uint64_t count = 0;
  for (;;) {
    if (all_zero(eval_poly_blocks(f, xs, a, a))) ++count;
    unsigned i = 0;
    while (i < coords) {
      const unsigned j = i / (n * free_per_entry);
      const unsigned rem = i % (n * free_per_entry);
      Elem& digit = xs[j][(rem / free_per_entry) * a + b + rem % free_per_entry];
      if (++digit < q) break;
      digit = 0;
      ++i;
    }
    if (i == coords) break;
  }
  return count;
}

std::vector<std::uint64_t> fiber_histogram(const MultilinearForm& f, unsigned a, unsigned b) {
  if (b > a) throw DomainError("fiber_histogram: quotient level b exceeds precision a");
  if (a < 1) throw DomainError("fiber_histogram: precision a must be >= 1");
  const std::uint32_t q = f.field().q();
  const unsigned n = f.n();
  const unsigned blocks = f.d() - 1;
  check_budget("fiber_histogram enumeration", n * a * blocks * log2q(q), kNaiveBits);
  const std::uint64_t fibers = ipow(q, n * b * blocks);
  std::vector<std::uint64_t> hist(fibers, 0);
  std::vector<std::vector<Elem>> xs(blocks, std::vector<Elem>(std::size_t{n} * a, 0));
  const unsigned coords = blocks * n * a;
  for (;;) {
    if (all_zero(eval_poly_blocks(f, xs, a, a))) {
      std::uint64_t key = 0;
      for (unsigned j = 0; j < blocks; ++j)
        for (unsigned i = 0; i < n; ++i)
          for (unsigned s = 0; s < b; ++s) key = key * q + xs[j][i * a + s];
      ++hist[key];
    }
    unsigned i = 0;
    while (i < coords) {
      Elem& digit = xs[i / (n * a)][i % (n * a)];
      if (++digit < q) break;
      digit = 0;
      ++i;
    }
    if (i == coords) break;
  }
  return hist;
}

CountProfile count_profile(const MultilinearForm& f, unsigned l_max, Budget budget) {
  CountProfile profile;
  profile.q = f.field().q();
  profile.ambient = std::uint64_t{f.n()} * (f.d() - 1);
  for (unsigned l = 1; l <= l_max; ++l) profile.entries.emplace_back(l, count_sf(f, l, budget));
  return profile;
}

}  // namespace multirank
