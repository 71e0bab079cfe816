#include "multirank/tensor.hpp"

#include "multirank/error.hpp"
#include "multirank/rng.hpp"

#include <cmath>
#include <string>

namespace multirank {

std::uint64_t checked_entries(unsigned n, unsigned d) {
  if (n < 1) throw DomainError("tensor dimension n must be >= 1");
  if (d < 2) throw DomainError("tensor degree d must be >= 2");
  std::uint64_t total = 1;
  for (unsigned i = 0; i < d; ++i) {
    total *= n;
    if (total > kMaxTensorEntries) {
      throw BudgetError("tensor storage n^d = " + std::to_string(n) + "^" + std::to_string(d),
                        d * std::log2(static_cast<double>(n)), 24.0);
    }
  }
  return total;
}

std::size_t flat_index(std::span<const unsigned> idx, unsigned n) {
  std::size_t flat = 0;
  for (unsigned i : idx) flat = flat * n + i;
  return flat;
}

std::vector<unsigned> multi_index(std::size_t flat, unsigned n, unsigned d) {
  std::vector<unsigned> idx(d);
  for (unsigned k = d; k-- > 0;) {
    idx[k] = static_cast<unsigned>(flat % n);
    flat /= n;
  }
  return idx;
}

MultilinearForm::MultilinearForm(FieldPtr field, unsigned d, unsigned n)
    : field_(std::move(field)), d_(d), n_(n), coeffs_(checked_entries(n, d), 0) {}

MultilinearForm::MultilinearForm(FieldPtr field, unsigned d, unsigned n, std::vector<Elem> coeffs)
    : field_(std::move(field)), d_(d), n_(n), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != checked_entries(n, d)) {
    throw DomainError("coefficient array has " + std::to_string(coeffs_.size()) + " entries, expected n^d");
  }
  for (Elem c : coeffs_)
    if (!field_->contains(c)) throw DomainError("coefficient outside " + field_->spec().to_string());
}

bool MultilinearForm::is_zero() const {
  for (Elem c : coeffs_)
    if (c != 0) return false;
  return true;
}

std::size_t MultilinearForm::nonzero_count() const {
  std::size_t k = 0;
  for (Elem c : coeffs_) k += (c != 0);
  return k;
}

IntMultilinearForm::IntMultilinearForm(unsigned d, unsigned n) : d_(d), n_(n), coeffs_(checked_entries(n, d)) {}

IntMultilinearForm::IntMultilinearForm(unsigned d, unsigned n, std::vector<BigInt> coeffs)
    : d_(d), n_(n), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != checked_entries(n, d)) {
    throw DomainError("coefficient array has " + std::to_string(coeffs_.size()) + " entries, expected n^d");
  }
}

bool IntMultilinearForm::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

BigInt IntMultilinearForm::max_abs_coeff() const {
  BigInt m = 0;
  for (const auto& c : coeffs_) {
    BigInt a = abs(c);
    if (a > m) m = a;
  }
  return m;
}

bool Covector::is_zero() const {
  for (Elem c : entries)
    if (c != 0) return false;
  return true;
}

void contract_leading(const Field& field, std::span<const Elem> in, unsigned n, std::span<const Elem> x,
                      std::span<Elem> out) {
  const std::size_t stride = out.size();
  std::fill(out.begin(), out.end(), Elem{0});
  for (unsigned i = 0; i < n; ++i) {
    const Elem xi = x[i];
    if (xi == 0) continue;
    const Elem* row = in.data() + i * stride;
    if (xi == 1) {
      for (std::size_t r = 0; r < stride; ++r) out[r] = field.add(out[r], row[r]);
    } else {
      for (std::size_t r = 0; r < stride; ++r) out[r] = field.add(out[r], field.mul(xi, row[r]));
    }
  }
}

namespace {

void check_vectors(const MultilinearForm& f, std::span<const Vec> xs, std::size_t expected, const char* op) {
  if (xs.size() != expected) {
    throw DomainError(std::string(op) + ": expected " + std::to_string(expected) + " vectors, got " +
                      std::to_string(xs.size()));
  }
  for (const auto& x : xs) {
    if (x.size() != f.n()) {
      throw DomainError(std::string(op) + ": vector length " + std::to_string(x.size()) + " != n = " +
                        std::to_string(f.n()));
    }
    for (Elem c : x)
      if (!f.field().contains(c)) throw DomainError(std::string(op) + ": entry outside the field");
  }
}

// Contracts the leading xs.size() slots.
std::vector<Elem> contract_prefix(const MultilinearForm& f, std::span<const Vec> xs) {
  std::vector<Elem> cur(f.coeffs().begin(), f.coeffs().end());
  std::vector<Elem> next;
  for (const auto& x : xs) {
    next.assign(cur.size() / f.n(), 0);
    contract_leading(f.field(), cur, f.n(), x, next);
    cur.swap(next);
  }
  return cur;
}

}  // namespace

Elem eval(const MultilinearForm& f, std::span<const Vec> xs) {
  check_vectors(f, xs, f.d(), "eval");
  return contract_prefix(f, xs)[0];
}

BigInt eval(const IntMultilinearForm& f, std::span<const std::vector<BigInt>> xs) {
  if (xs.size() != f.d()) throw DomainError("eval: expected d vectors");
  for (const auto& x : xs)
    if (x.size() != f.n()) throw DomainError("eval: vector length != n");
  std::vector<BigInt> cur(f.coeffs().begin(), f.coeffs().end());
  for (const auto& x : xs) {
    std::vector<BigInt> next(cur.size() / f.n(), 0);
    for (unsigned i = 0; i < f.n(); ++i) {
      if (x[i] == 0) continue;
      for (std::size_t r = 0; r < next.size(); ++r) next[r] += x[i] * cur[i * next.size() + r];
    }
    cur.swap(next);
  }
  return cur[0];
}

Covector contract_last(const MultilinearForm& f, std::span<const Vec> xs) {
  check_vectors(f, xs, f.d() - 1, "contract_last");
  return Covector{f.field_ptr(), contract_prefix(f, xs)};
}

Matrix slice_matrix(const MultilinearForm& f, std::span<const Vec> xs) {
  check_vectors(f, xs, f.d() - 2, "slice_matrix");
  Matrix m(f.n(), f.n());
  m.data = contract_prefix(f, xs);
  return m;
}

MultilinearForm base_change(const MultilinearForm& f, const FieldEmbedding& emb) {
  if (!(f.field().spec() == emb.source()->spec())) {
    throw DomainError("base_change: form lives on " + f.field().spec().to_string() + ", embedding starts at " +
                      emb.source()->spec().to_string());
  }
  std::vector<Elem> coeffs(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) coeffs[i] = emb.apply(f.coeffs()[i]);
  return MultilinearForm(emb.target(), f.d(), f.n(), std::move(coeffs));
}

MultilinearForm lift_to_level(const MultilinearForm& f, unsigned level) {
  if (level < 1) throw DomainError("extension level must be >= 1");
  if (level == 1) return f;
  FieldPtr target = Field::make(f.field().p(), f.field().e() * level);
  return base_change(f, FieldEmbedding(f.field_ptr(), target));
}

MultilinearForm weil_restrict(const MultilinearForm& f, const FieldEmbedding& emb) {
  if (!(f.field().spec() == emb.target()->spec())) {
    throw DomainError("weil_restrict: form lives on " + f.field().spec().to_string() + ", embedding ends at " +
                      emb.target()->spec().to_string());
  }
  const Field& big = *emb.target();
  const unsigned l = emb.degree();
  const unsigned n = f.n();
  const unsigned d = f.d();
  const unsigned nk = n * l;

  // theta^s for s up to d(l-1).
  const Elem theta = big.e() == 1 ? 0 : big.generator();
  std::vector<Elem> theta_pow(d * (l - 1) + 1);
  theta_pow[0] = 1;
  for (std::size_t s = 1; s < theta_pow.size(); ++s) theta_pow[s] = big.mul(theta_pow[s - 1], theta);

  MultilinearForm out(emb.source(), d, nk);
  std::vector<unsigned> idx(d), base(d);
  for (std::size_t flat = 0; flat < out.size(); ++flat) {
    std::size_t rest = flat;
    unsigned shift = 0;
    for (unsigned k = d; k-- > 0;) {
      unsigned j = static_cast<unsigned>(rest % nk);
      rest /= nk;
      base[k] = j / l;
      shift += j % l;
    }
    const Elem c = f.coeff(base);
    if (c == 0) continue;
    out.coeffs()[flat] = emb.trace(big.mul(c, theta_pow[shift]));
  }
  return out;
}

MultilinearForm direct_sum(const MultilinearForm& f, const MultilinearForm& g) {
  if (!(f.field().spec() == g.field().spec())) throw DomainError("direct_sum: forms over different fields");
  if (f.d() != g.d()) throw DomainError("direct_sum: forms of different degree");
  const unsigned n = f.n() + g.n();
  MultilinearForm out(f.field_ptr(), f.d(), n);
  std::vector<unsigned> idx(f.d());
  for (std::size_t flat = 0; flat < f.size(); ++flat) {
    if (f.coeffs()[flat] == 0) continue;
    out.set(multi_index(flat, f.n(), f.d()), f.coeffs()[flat]);
  }
  for (std::size_t flat = 0; flat < g.size(); ++flat) {
    if (g.coeffs()[flat] == 0) continue;
    auto gi = multi_index(flat, g.n(), g.d());
    for (auto& i : gi) i += f.n();
    out.set(gi, g.coeffs()[flat]);
  }
  return out;
}

MultilinearForm diagonal(unsigned m, unsigned n, unsigned d, FieldPtr field) {
  if (m > n) throw DomainError("diagonal: m = " + std::to_string(m) + " exceeds n = " + std::to_string(n));
  MultilinearForm out(std::move(field), d, n);
  std::vector<unsigned> idx(d);
  for (unsigned i = 0; i < m; ++i) {
    std::fill(idx.begin(), idx.end(), i);
    out.set(idx, 1);
  }
  return out;
}

IntMultilinearForm int_diagonal(unsigned m, unsigned n, unsigned d) {
  if (m > n) throw DomainError("diagonal: m exceeds n");
  IntMultilinearForm out(d, n);
  std::vector<unsigned> idx(d);
  for (unsigned i = 0; i < m; ++i) {
    std::fill(idx.begin(), idx.end(), i);
    out.set(idx, 1);
  }
  return out;
}

MultilinearForm random_form(FieldPtr field, unsigned d, unsigned n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  std::vector<Elem> coeffs(checked_entries(n, d));
  for (auto& c : coeffs) c = static_cast<Elem>(rng.below(field->q()));
  return MultilinearForm(std::move(field), d, n, std::move(coeffs));
}

IntMultilinearForm random_int_form(unsigned d, unsigned n, std::int64_t coeff_bound, std::uint64_t seed) {
  if (coeff_bound < 0) throw DomainError("coefficient bound must be non-negative");
  SplitMix64 rng(seed);
  std::vector<BigInt> coeffs(checked_entries(n, d));
  for (auto& c : coeffs) c = rng.between(-coeff_bound, coeff_bound);
  return IntMultilinearForm(d, n, std::move(coeffs));
}

}  // namespace multirank
