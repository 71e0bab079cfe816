#include "multirank/field.hpp"

#include "multirank/error.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <sstream>
#include <utility>

namespace multirank {

namespace {

using Poly = std::vector<std::uint32_t>;  // constant term first

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo monic m over F_p.
Poly poly_mod(Poly a, const Poly& m, std::uint32_t p) {
  trim(a);
  const std::size_t dm = m.size() - 1;
  while (a.size() > dm) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dm;
    for (std::size_t i = 0; i <= dm; ++i) {
      std::uint64_t sub = (lead * m[i]) % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& m, std::uint32_t p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) {
      r[i + j] = static_cast<std::uint32_t>((r[i + j] + std::uint64_t{a[i]} * b[j]) % p);
    }
  }
  return poly_mod(std::move(r), m, p);
}

Poly poly_powmod(Poly a, std::uint64_t k, const Poly& m, std::uint32_t p) {
  Poly r{1};
  while (k) {
    if (k & 1) r = poly_mulmod(r, a, m, p);
    a = poly_mulmod(a, a, m, p);
    k >>= 1;
  }
  return r;
}

Poly digits_of(std::uint64_t idx, std::uint32_t p, unsigned e) {
  Poly d(e, 0);
  for (unsigned i = 0; i < e; ++i) {
    d[i] = static_cast<std::uint32_t>(idx % p);
    idx /= p;
  }
  return d;
}

std::uint64_t index_of(const Poly& d, std::uint32_t p) {
  std::uint64_t idx = 0;
  for (std::size_t i = d.size(); i-- > 0;) idx = idx * p + d[i];
  return idx;
}

bool is_irreducible(const Poly& m, std::uint32_t p) {
  const unsigned e = static_cast<unsigned>(m.size() - 1);
  if (e <= 1) return true;
  for (unsigned k = 1; k <= e / 2; ++k) {
    std::uint64_t count = 1;
    for (unsigned i = 0; i < k; ++i) count *= p;
    for (std::uint64_t t = 0; t < count; ++t) {
      Poly divisor = digits_of(t, p, k);
      divisor.push_back(1);
      if (poly_mod(m, divisor, p).empty()) return false;
    }
  }
  return true;
}

// Lexicographically least monic irreducible of degree e, comparing c_0 first.
Poly canonical_modulus(std::uint32_t p, unsigned e) {
  if (e == 1) return {0, 1};
  Poly c(e, 0);
  for (;;) {
    Poly m = c;
    m.push_back(1);
    if (m[0] != 0 && is_irreducible(m, p)) return m;
    // Advance with c_{e-1} least significant.
    std::size_t i = e;
    while (i-- > 0) {
      if (++c[i] < p) break;
      c[i] = 0;
    }
  }
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::uint64_t checked_order(std::uint32_t p, unsigned e) {
  std::uint64_t q = 1;
  for (unsigned i = 0; i < e; ++i) {
    q *= p;
    if (q > kMaxFieldOrder) {
      throw BudgetError("field order " + std::to_string(p) + "^" + std::to_string(e),
                        e * std::log2(static_cast<double>(p)), 20.0);
    }
  }
  return q;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t f = 2; f * f <= n; ++f)
    if (n % f == 0) return false;
  return true;
}

std::uint32_t FieldSpec::q() const {
  std::uint32_t r = 1;
  for (unsigned i = 0; i < e; ++i) r *= p;
  return r;
}

std::string FieldSpec::to_string() const {
  std::ostringstream os;
  os << "F_" << p;
  if (e > 1) os << "^" << e;
  return os.str();
}

Field::Field(FieldSpec spec) : spec_(std::move(spec)) {
  const std::uint32_t p = spec_.p;
  const unsigned e = spec_.e;
  q_ = static_cast<std::uint32_t>(checked_order(p, e));
  p2_ = (p == 2);
  prime_ = (e == 1);

  const Poly& m = spec_.modulus;
  const std::uint64_t order = q_ - 1;
  const auto factors = prime_factors(order);

  // Least primitive element in index order.
  Poly g;
  for (std::uint64_t cand = 1; cand < q_; ++cand) {
    Poly c = digits_of(cand, p, e);
    trim(c);
    bool primitive = true;
    for (auto r : factors) {
      Poly t = poly_powmod(c, order / r, m, p);
      if (t.size() == 1 && t[0] == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      g = c;
      break;
    }
  }

  // Multiplication by g as a linear map on digit vectors.
  std::vector<Poly> cols(e);
  for (unsigned i = 0; i < e; ++i) {
    Poly xi(i + 1, 0);
    xi[i] = 1;
    Poly col = poly_mulmod(xi, g, m, p);
    col.resize(e, 0);
    cols[i] = col;
  }

  exp_.assign(2 * order, 0);
  log_.assign(q_, 0);
  Poly cur(e, 0);
  cur[0] = 1;
  std::uint32_t p2_cols[32] = {};
  if (p2_) {
    for (unsigned i = 0; i < e; ++i) p2_cols[i] = static_cast<std::uint32_t>(index_of(cols[i], 2));
  }
  std::uint32_t cur_bits = 1;
  for (std::uint64_t k = 0; k < order; ++k) {
    Elem idx;
    if (p2_) {
      idx = cur_bits;
      std::uint32_t next = 0;
      for (unsigned i = 0; i < e; ++i)
        if (cur_bits >> i & 1u) next ^= p2_cols[i];
      cur_bits = next;
    } else {
      idx = static_cast<Elem>(index_of(cur, p));
      Poly next(e, 0);
      for (unsigned i = 0; i < e; ++i) {
        if (cur[i] == 0) continue;
        for (unsigned j = 0; j < e; ++j)
          next[j] = static_cast<std::uint32_t>((next[j] + std::uint64_t{cur[i]} * cols[i][j]) % p);
      }
      cur = std::move(next);
    }
    exp_[k] = idx;
    exp_[k + order] = idx;
    log_[idx] = static_cast<std::uint32_t>(k);
  }

  if (!p2_ && !prime_) {
    zech_.assign(order, kNone);
    for (std::uint64_t k = 0; k < order; ++k) {
      Elem a = exp_[k];
      // 1 + a only touches digit 0.
      Elem b = (a % p == p - 1) ? a - (p - 1) : a + 1;
      zech_[k] = b == 0 ? kNone : log_[b];
    }
  }
}

FieldPtr Field::make(std::uint32_t p, unsigned e) {
  if (!is_prime(p)) throw DomainError("field characteristic " + std::to_string(p) + " is not prime");
  if (e < 1) throw DomainError("extension degree must be >= 1");
  checked_order(p, e);

  static std::mutex mutex;
  static std::map<std::pair<std::uint32_t, unsigned>, FieldPtr> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto key = std::make_pair(p, e);
  if (auto it = cache.find(key); it != cache.end()) return it->second;
  FieldSpec spec{p, e, canonical_modulus(p, e)};
  auto f = std::make_shared<const Field>(std::move(spec));
  cache.emplace(key, f);
  return f;
}

FieldPtr Field::make(const FieldSpec& spec) {
  FieldPtr f = make(spec.p, spec.e);
  if (!spec.modulus.empty() && spec.modulus != f->spec().modulus) {
    Poly m = spec.modulus;
    bool monic = m.size() == spec.e + 1 && m.back() == 1;
    std::string why = !monic ? "not monic of degree e"
                      : !is_irreducible(m, spec.p) ? "reducible"
                                                   : "not the canonical (lexicographically least) irreducible";
    throw DomainError("modulus for " + f->spec().to_string() + " is " + why);
  }
  return f;
}

Elem Field::inv(Elem a) const {
  if (a == 0) throw DomainError("inversion of zero in " + spec_.to_string());
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

Elem Field::pow(Elem a, std::uint64_t k) const {
  if (k == 0) return 1;
  if (a == 0) return 0;
  return exp_[(static_cast<std::uint64_t>(log_[a]) * (k % (q_ - 1))) % (q_ - 1)];
}

std::uint32_t Field::to_prime(Elem a) const {
  if (a >= spec_.p) throw DomainError("element is not in the prime subfield");
  return a;
}

FieldElement Field::element(Elem a) const {
  if (a >= q_) throw DomainError("element index out of range for " + spec_.to_string());
  return FieldElement{digits_of(a, spec_.p, spec_.e)};
}

Elem Field::index(const FieldElement& a) const {
  if (a.digits.size() != spec_.e) {
    throw DomainError("element has " + std::to_string(a.digits.size()) + " digits, " + spec_.to_string() +
                      " needs " + std::to_string(spec_.e));
  }
  for (auto d : a.digits)
    if (d >= spec_.p) throw DomainError("digit " + std::to_string(d) + " not reduced mod " + std::to_string(spec_.p));
  return static_cast<Elem>(index_of(a.digits, spec_.p));
}

FieldElement ff_arith(const Field& field, const FieldElement& a, const FieldElement& b, FieldOp op) {
  Elem x = field.index(a);
  switch (op) {
    case FieldOp::add:
      return field.element(field.add(x, field.index(b)));
    case FieldOp::mul:
      return field.element(field.mul(x, field.index(b)));
    case FieldOp::inv:
      return field.element(field.inv(x));
    case FieldOp::neg:
      return field.element(field.neg(x));
  }
  throw DomainError("unknown field operation");
}

std::vector<FieldElement> ff_enumerate(const Field& field) {
  std::vector<FieldElement> out;
  out.reserve(field.q());
  for (Elem a = 0; a < field.q(); ++a) out.push_back(field.element(a));
  return out;
}

FieldEmbedding::FieldEmbedding(FieldPtr source, FieldPtr target)
    : source_(std::move(source)), target_(std::move(target)) {
  const Field& s = *source_;
  const Field& t = *target_;
  if (s.p() != t.p()) throw DomainError("embedding between fields of different characteristic");
  if (t.e() % s.e() != 0) {
    throw DomainError(s.spec().to_string() + " is not a subfield of " + t.spec().to_string());
  }
  const auto& m = s.spec().modulus;
  if (s.e() == 1) {
    image_ = 1;
  } else {
    image_ = 0;
    bool found = false;
    for (Elem r = 0; r < t.q() && !found; ++r) {
      Elem acc = 0;
      for (std::size_t i = m.size(); i-- > 0;) acc = t.add(t.mul(acc, r), t.from_int(m[i]));
      if (acc == 0) {
        image_ = r;
        found = true;
      }
    }
    if (!found) throw DomainError("no root of the source modulus in the target field");
  }

  // table_[a] = sum_i c_i theta^i
  std::vector<Elem> powers(s.e());
  Elem pw = 1;
  for (unsigned i = 0; i < s.e(); ++i) {
    powers[i] = pw;
    pw = t.mul(pw, image_);
  }
  table_.resize(s.q());
  inverse_.assign(t.q(), kNotInImage);
  for (Elem a = 0; a < s.q(); ++a) {
    Elem acc = 0;
    Elem rest = a;
    for (unsigned i = 0; i < s.e(); ++i) {
      acc = t.add(acc, t.mul(t.from_int(rest % s.p()), powers[i]));
      rest /= s.p();
    }
    table_[a] = acc;
    inverse_[acc] = a;
  }
}

bool FieldEmbedding::in_image(Elem b) const { return b < inverse_.size() && inverse_[b] != kNotInImage; }

Elem FieldEmbedding::preimage(Elem b) const {
  if (!in_image(b)) throw DomainError("element is not in the image of the embedding");
  return inverse_[b];
}

Elem FieldEmbedding::trace(Elem b) const {
  const Field& t = *target_;
  const std::uint64_t qs = source_->q();
  Elem acc = 0;
  Elem cur = b;
  for (unsigned i = 0; i < degree(); ++i) {
    acc = t.add(acc, cur);
    cur = t.pow(cur, qs);
  }
  return preimage(acc);
}

FieldEmbedding ff_embed(const FieldPtr& source, const FieldPtr& target) { return FieldEmbedding(source, target); }

}  // namespace multirank
