#pragma once

#include "multirank/bigint.hpp"
#include "multirank/field.hpp"
#include "multirank/tensor.hpp"

#include <map>
#include <span>
#include <vector>

namespace multirank {

using Exponent = std::vector<unsigned>;

/// Exponent vectors of total degree d in n variables, x_1^d first
/// (lexicographically descending).
std::vector<Exponent> monomial_basis(unsigned n, unsigned d);

/// Homogeneous polynomial of degree d in n variables over a finite field.
/// Zero coefficients are never stored.
class HomogeneousForm {
 public:
  HomogeneousForm(FieldPtr field, unsigned n, unsigned d);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  unsigned n() const { return n_; }
  unsigned d() const { return d_; }
  const std::map<Exponent, Elem>& monomials() const { return terms_; }

  Elem coeff(const Exponent& e) const;
  /// Overwrites a coefficient; setting 0 removes the monomial.
  void set(const Exponent& e, Elem c);
  /// Adds c to the coefficient of e.
  void accumulate(const Exponent& e, Elem c);

  bool is_zero() const { return terms_.empty(); }
  Elem evaluate(std::span<const Elem> x) const;

  bool operator==(const HomogeneousForm& o) const {
    return field_->spec() == o.field_->spec() && n_ == o.n_ && d_ == o.d_ && terms_ == o.terms_;
  }

 private:
  void check_exponent(const Exponent& e) const;

  FieldPtr field_;
  unsigned n_;
  unsigned d_;
  std::map<Exponent, Elem> terms_;
};

/// Homogeneous polynomial with integer coefficients.
class IntHomogeneousForm {
 public:
  IntHomogeneousForm(unsigned n, unsigned d);

  unsigned n() const { return n_; }
  unsigned d() const { return d_; }
  const std::map<Exponent, BigInt>& monomials() const { return terms_; }

  void set(const Exponent& e, BigInt c);
  BigInt evaluate(std::span<const BigInt> x) const;
  bool is_zero() const { return terms_.empty(); }

  bool operator==(const IntHomogeneousForm&) const = default;

 private:
  unsigned n_;
  unsigned d_;
  std::map<Exponent, BigInt> terms_;
};

HomogeneousForm operator+(const HomogeneousForm& a, const HomogeneousForm& b);
HomogeneousForm operator-(const HomogeneousForm& a, const HomogeneousForm& b);
HomogeneousForm operator*(const HomogeneousForm& a, const HomogeneousForm& b);

/// Formal partial derivatives d f / d x_j, j = 0..n-1 (degree d-1 each).
std::vector<HomogeneousForm> partials(const HomogeneousForm& f);

HomogeneousForm base_change(const HomogeneousForm& f, const FieldEmbedding& emb);

/// Symmetric d-linear form with polar(x, ..., x) = d! f(x), by inclusion-exclusion
/// of f over subset sums. Requires characteristic > d.
MultilinearForm polarize(const HomogeneousForm& f);
IntMultilinearForm polarize(const IntHomogeneousForm& f);

/// Uniform i.i.d. coefficient per basis monomial from SplitMix64(seed).
HomogeneousForm random_poly(FieldPtr field, unsigned d, unsigned n, std::uint64_t seed);

/// Flat term list with power tables for repeated evaluation.
class CompiledPoly {
 public:
  explicit CompiledPoly(const HomogeneousForm& f);

  /// `powers` holds x_j^k at [j * (d + 1) + k]; fill with fill_powers().
  Elem evaluate(std::span<const Elem> powers) const;
  void fill_powers(std::span<const Elem> x, std::span<Elem> powers) const;
  std::size_t powers_size() const { return std::size_t{n_} * (d_ + 1); }

 private:
  const Field* field_;
  unsigned n_;
  unsigned d_;
  std::vector<Elem> coeffs_;
  std::vector<unsigned> exps_;  // n per term
};

}  // namespace multirank
