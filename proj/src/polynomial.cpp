#include "multirank/polynomial.hpp"

#include "multirank/error.hpp"
#include "multirank/rng.hpp"

#include <numeric>

namespace multirank {

namespace {

void basis_rec(unsigned n, unsigned d, unsigned pos, Exponent& cur, std::vector<Exponent>& out) {
  if (pos + 1 == n) {
    cur[pos] = d;
    out.push_back(cur);
    return;
  }
  for (unsigned k = d + 1; k-- > 0;) {
    cur[pos] = k;
    basis_rec(n, d - k, pos + 1, cur, out);
  }
}

}  // namespace

std::vector<Exponent> monomial_basis(unsigned n, unsigned d) {
  std::vector<Exponent> out;
  if (n == 0) return out;
  Exponent cur(n, 0);
  basis_rec(n, d, 0, cur, out);
  return out;
}

HomogeneousForm::HomogeneousForm(FieldPtr field, unsigned n, unsigned d) : field_(std::move(field)), n_(n), d_(d) {
  if (n < 1) throw DomainError("polynomial needs at least one variable");
}

void HomogeneousForm::check_exponent(const Exponent& e) const {
  if (e.size() != n_) throw DomainError("exponent vector length != n");
  if (std::accumulate(e.begin(), e.end(), 0u) != d_) throw DomainError("exponent vector does not sum to d");
}

Elem HomogeneousForm::coeff(const Exponent& e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? 0 : it->second;
}

void HomogeneousForm::set(const Exponent& e, Elem c) {
  check_exponent(e);
  if (!field_->contains(c)) throw DomainError("coefficient outside the field");
  if (c == 0) {
    terms_.erase(e);
  } else {
    terms_[e] = c;
  }
}

void HomogeneousForm::accumulate(const Exponent& e, Elem c) { set(e, field_->add(coeff(e), c)); }

Elem HomogeneousForm::evaluate(std::span<const Elem> x) const {
  if (x.size() != n_) throw DomainError("evaluation point has wrong length");
  const Field& f = *field_;
  Elem acc = 0;
  for (const auto& [e, c] : terms_) {
    Elem t = c;
    for (unsigned j = 0; j < n_ && t != 0; ++j) t = f.mul(t, f.pow(x[j], e[j]));
    acc = f.add(acc, t);
  }
  return acc;
}

IntHomogeneousForm::IntHomogeneousForm(unsigned n, unsigned d) : n_(n), d_(d) {
  if (n < 1) throw DomainError("polynomial needs at least one variable");
}

void IntHomogeneousForm::set(const Exponent& e, BigInt c) {
  if (e.size() != n_ || std::accumulate(e.begin(), e.end(), 0u) != d_) {
    throw DomainError("exponent vector does not match (n, d)");
  }
  if (c == 0) {
    terms_.erase(e);
  } else {
    terms_[e] = std::move(c);
  }
}

BigInt IntHomogeneousForm::evaluate(std::span<const BigInt> x) const {
  if (x.size() != n_) throw DomainError("evaluation point has wrong length");
  BigInt acc = 0;
  for (const auto& [e, c] : terms_) {
    BigInt t = c;
    for (unsigned j = 0; j < n_; ++j) t *= boost::multiprecision::pow(x[j], e[j]);
    acc += t;
  }
  return acc;
}

namespace {

void check_same(const HomogeneousForm& a, const HomogeneousForm& b) {
  if (!(a.field().spec() == b.field().spec()) || a.n() != b.n()) {
    throw DomainError("polynomials over different rings");
  }
}

}  // namespace

HomogeneousForm operator+(const HomogeneousForm& a, const HomogeneousForm& b) {
  check_same(a, b);
  if (a.d() != b.d()) throw DomainError("adding polynomials of different degree");
  HomogeneousForm out = a;
  for (const auto& [e, c] : b.monomials()) out.accumulate(e, c);
  return out;
}

HomogeneousForm operator-(const HomogeneousForm& a, const HomogeneousForm& b) {
  check_same(a, b);
  if (a.d() != b.d()) throw DomainError("subtracting polynomials of different degree");
  HomogeneousForm out = a;
  for (const auto& [e, c] : b.monomials()) out.accumulate(e, a.field().neg(c));
  return out;
}

HomogeneousForm operator*(const HomogeneousForm& a, const HomogeneousForm& b) {
  check_same(a, b);
  HomogeneousForm out(a.field_ptr(), a.n(), a.d() + b.d());
  const Field& f = a.field();
  Exponent e(a.n());
  for (const auto& [ea, ca] : a.monomials()) {
    for (const auto& [eb, cb] : b.monomials()) {
      for (unsigned j = 0; j < a.n(); ++j) e[j] = ea[j] + eb[j];
      out.accumulate(e, f.mul(ca, cb));
    }
  }
  return out;
}

std::vector<HomogeneousForm> partials(const HomogeneousForm& f) {
  if (f.d() == 0) throw DomainError("partials of a constant");
  std::vector<HomogeneousForm> out;
  out.reserve(f.n());
  for (unsigned j = 0; j < f.n(); ++j) {
    HomogeneousForm g(f.field_ptr(), f.n(), f.d() - 1);
    for (const auto& [e, c] : f.monomials()) {
      if (e[j] == 0) continue;
      Exponent ee = e;
      --ee[j];
      g.accumulate(ee, f.field().mul(c, f.field().from_int(e[j])));
    }
    out.push_back(std::move(g));
  }
  return out;
}

HomogeneousForm base_change(const HomogeneousForm& f, const FieldEmbedding& emb) {
  if (!(f.field().spec() == emb.source()->spec())) throw DomainError("base_change: field mismatch");
  HomogeneousForm out(emb.target(), f.n(), f.d());
  for (const auto& [e, c] : f.monomials()) out.set(e, emb.apply(c));
  return out;
}

namespace {

// Multi-indices (i_1 <= ... <= i_d) for symmetric fill.
template <class Visit>
void for_each_sorted_index(unsigned n, unsigned d, Visit&& visit) {
  std::vector<unsigned> idx(d, 0);
  for (;;) {
    visit(idx);
    int k = static_cast<int>(d) - 1;
    while (k >= 0 && idx[k] + 1 == n) --k;
    if (k < 0) return;
    ++idx[k];
    for (unsigned j = k + 1; j < d; ++j) idx[j] = idx[k];
  }
}

template <class Visit>
void for_each_permutation_of(std::vector<unsigned> idx, Visit&& visit) {
  std::sort(idx.begin(), idx.end());
  do {
    visit(idx);
  } while (std::next_permutation(idx.begin(), idx.end()));
}

}  // namespace

MultilinearForm polarize(const HomogeneousForm& f) {
  if (f.field().p() <= f.d()) {
    throw DomainError("polarization needs characteristic > d (p = " + std::to_string(f.field().p()) +
                      ", d = " + std::to_string(f.d()) + ")");
  }
  const unsigned n = f.n();
  const unsigned d = f.d();
  if (d < 2) throw DomainError("polarization needs degree >= 2");
  const Field& field = f.field();
  MultilinearForm out(f.field_ptr(), d, n);
  std::vector<Elem> point(n);
  for_each_sorted_index(n, d, [&](const std::vector<unsigned>& idx) {
    Elem acc = 0;
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
      std::fill(point.begin(), point.end(), Elem{0});
      unsigned size = 0;
      for (unsigned t = 0; t < d; ++t) {
        if (mask >> t & 1u) {
          point[idx[t]] = field.add(point[idx[t]], 1);
          ++size;
        }
      }
      Elem v = f.evaluate(point);
      acc = ((d - size) % 2 == 0) ? field.add(acc, v) : field.sub(acc, v);
    }
    for_each_permutation_of(idx, [&](const std::vector<unsigned>& perm) { out.set(perm, acc); });
  });
  return out;
}

IntMultilinearForm polarize(const IntHomogeneousForm& f) {
  const unsigned n = f.n();
  const unsigned d = f.d();
  if (d < 2) throw DomainError("polarization needs degree >= 2");
  IntMultilinearForm out(d, n);
  std::vector<BigInt> point(n);
  for_each_sorted_index(n, d, [&](const std::vector<unsigned>& idx) {
    BigInt acc = 0;
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
      std::fill(point.begin(), point.end(), BigInt(0));
      unsigned size = 0;
      for (unsigned t = 0; t < d; ++t) {
        if (mask >> t & 1u) {
          point[idx[t]] += 1;
          ++size;
        }
      }
      BigInt v = f.evaluate(point);
      if ((d - size) % 2 == 0) {
        acc += v;
      } else {
        acc -= v;
      }
    }
    for_each_permutation_of(idx, [&](const std::vector<unsigned>& perm) { out.set(perm, acc); });
  });
  return out;
}

HomogeneousForm random_poly(FieldPtr field, unsigned d, unsigned n, std::uint64_t seed) {
  SplitMix64 rng(seed);
  HomogeneousForm out(field, n, d);
  for (const auto& e : monomial_basis(n, d)) out.set(e, static_cast<Elem>(rng.below(field->q())));
  return out;
}

CompiledPoly::CompiledPoly(const HomogeneousForm& f) : field_(&f.field()), n_(f.n()), d_(f.d()) {
  for (const auto& [e, c] : f.monomials()) {
    coeffs_.push_back(c);
    exps_.insert(exps_.end(), e.begin(), e.end());
  }
}

void CompiledPoly::fill_powers(std::span<const Elem> x, std::span<Elem> powers) const {
  for (unsigned j = 0; j < n_; ++j) {
    Elem p = 1;
    for (unsigned k = 0; k <= d_; ++k) {
      powers[j * (d_ + 1) + k] = p;
      p = field_->mul(p, x[j]);
    }
  }
}

Elem CompiledPoly::evaluate(std::span<const Elem> powers) const {
  Elem acc = 0;
  for (std::size_t t = 0; t < coeffs_.size(); ++t) {
    Elem v = coeffs_[t];
    const unsigned* e = exps_.data() + t * n_;
    for (unsigned j = 0; j < n_ && v != 0; ++j) v = field_->mul(v, powers[j * (d_ + 1) + e[j]]);
    acc = field_->add(acc, v);
  }
  return acc;
}

}  // namespace multirank
