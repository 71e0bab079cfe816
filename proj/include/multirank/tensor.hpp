#pragma once

#include "multirank/bigint.hpp"
#include "multirank/field.hpp"
#include "multirank/linalg.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace multirank {

/// Largest n^d the dense tensor types will allocate.
inline constexpr std::uint64_t kMaxTensorEntries = std::uint64_t{1} << 24;

/// A vector of V = F^n by element index.
using Vec = std::vector<Elem>;

std::uint64_t checked_entries(unsigned n, unsigned d);

/// Row-major flat position of a multi-index (first slot most significant).
std::size_t flat_index(std::span<const unsigned> idx, unsigned n);
std::vector<unsigned> multi_index(std::size_t flat, unsigned n, unsigned d);

/// A d-linear form F: V^d -> F on V = F^n, stored densely (n^d coefficients).
class MultilinearForm {
 public:
  MultilinearForm(FieldPtr field, unsigned d, unsigned n);
  MultilinearForm(FieldPtr field, unsigned d, unsigned n, std::vector<Elem> coeffs);

  const Field& field() const { return *field_; }
  const FieldPtr& field_ptr() const { return field_; }
  unsigned d() const { return d_; }
  unsigned n() const { return n_; }
  std::size_t size() const { return coeffs_.size(); }

  std::span<const Elem> coeffs() const { return coeffs_; }
  std::span<Elem> coeffs() { return coeffs_; }

  Elem coeff(std::span<const unsigned> idx) const { return coeffs_[flat_index(idx, n_)]; }
  void set(std::span<const unsigned> idx, Elem v) { coeffs_[flat_index(idx, n_)] = v; }
  FieldElement coeff_element(std::span<const unsigned> idx) const { return field_->element(coeff(idx)); }

  bool is_zero() const;
  std::size_t nonzero_count() const;

  bool operator==(const MultilinearForm& o) const {
    return field_->spec() == o.field_->spec() && d_ == o.d_ && n_ == o.n_ && coeffs_ == o.coeffs_;
  }

 private:
  FieldPtr field_;
  unsigned d_;
  unsigned n_;
  std::vector<Elem> coeffs_;
};

/// Integer-coefficient d-linear form on Z^n.
class IntMultilinearForm {
 public:
  IntMultilinearForm(unsigned d, unsigned n);
  IntMultilinearForm(unsigned d, unsigned n, std::vector<BigInt> coeffs);

  unsigned d() const { return d_; }
  unsigned n() const { return n_; }
  std::size_t size() const { return coeffs_.size(); }

  std::span<const BigInt> coeffs() const { return coeffs_; }
  std::span<BigInt> coeffs() { return coeffs_; }
  const BigInt& coeff(std::span<const unsigned> idx) const { return coeffs_[flat_index(idx, n_)]; }
  void set(std::span<const unsigned> idx, BigInt v) { coeffs_[flat_index(idx, n_)] = std::move(v); }

  bool is_zero() const;
  BigInt max_abs_coeff() const;

  bool operator==(const IntMultilinearForm&) const = default;

 private:
  unsigned d_;
  unsigned n_;
  std::vector<BigInt> coeffs_;
};

struct Covector {
  FieldPtr field;
  std::vector<Elem> entries;

  bool is_zero() const;
};

/// Contracts the leading slot of a (k-slot) coefficient block with x:
/// out[rest] = sum_i x_i * in[i, rest]. `out` has n^{k-1} entries.
void contract_leading(const Field& field, std::span<const Elem> in, unsigned n, std::span<const Elem> x,
                      std::span<Elem> out);

Elem eval(const MultilinearForm& f, std::span<const Vec> xs);
BigInt eval(const IntMultilinearForm& f, std::span<const std::vector<BigInt>> xs);

/// F(x_1, ..., x_{d-1}, .) as a covector.
Covector contract_last(const MultilinearForm& f, std::span<const Vec> xs);

/// M[i][j] = F(x_1, ..., x_{d-2}, e_i, e_j).
Matrix slice_matrix(const MultilinearForm& f, std::span<const Vec> xs);

/// Coefficients mapped through the embedding; f must live on emb.source().
MultilinearForm base_change(const MultilinearForm& f, const FieldEmbedding& emb);

/// F over F_{q^l}, via the canonical embedding F_q -> F_{q^l}.
MultilinearForm lift_to_level(const MultilinearForm& f, unsigned level);

/// Restriction of scalars along emb: K -> L for a form over L.
///
/// Each slot of K^{ln} is identified with L^n through the K-basis
/// 1, theta, ..., theta^{l-1} (theta the class of x in L), coordinate
/// (i, k) at position i*l + k. The result is Tr_{L/K} o F. Because the trace
/// form of L/K is nondegenerate, F_K(y, .) vanishes on K^{ln} exactly when
/// F(y, .) vanishes on L^n, so S_{F_K}(K) and S_F(L) are the same set.
MultilinearForm weil_restrict(const MultilinearForm& f, const FieldEmbedding& emb);

/// Block-diagonal sum on V_F + V_G.
MultilinearForm direct_sum(const MultilinearForm& f, const MultilinearForm& g);

/// sum_{i<m} x_{1,i} ... x_{d,i}.
MultilinearForm diagonal(unsigned m, unsigned n, unsigned d, FieldPtr field);
IntMultilinearForm int_diagonal(unsigned m, unsigned n, unsigned d);

/// i.i.d. uniform coefficients from SplitMix64(seed), drawn in row-major order.
MultilinearForm random_form(FieldPtr field, unsigned d, unsigned n, std::uint64_t seed);

/// i.i.d. uniform coefficients in [-coeff_bound, coeff_bound].
IntMultilinearForm random_int_form(unsigned d, unsigned n, std::int64_t coeff_bound, std::uint64_t seed);

}  // namespace multirank
