#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace multirank {

/// Index of an element of F_{p^e}: digits c_0 + c_1 p + ... + c_{e-1} p^{e-1}.
/// Index order is the digit-lexicographic enumeration order, zero first.
using Elem = std::uint32_t;

/// Largest field order the library will construct.
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 20;

struct FieldSpec {
  std::uint32_t p = 2;
  unsigned e = 1;
  /// e+1 coefficients, constant term first, monic.
  std::vector<std::uint32_t> modulus;

  std::uint32_t q() const;
  bool operator==(const FieldSpec&) const = default;
  std::string to_string() const;
};

/// External representation of an element: e digits in [0, p).
struct FieldElement {
  std::vector<std::uint32_t> digits;
  bool operator==(const FieldElement&) const = default;
};

class Field;
using FieldPtr = std::shared_ptr<const Field>;

enum class FieldOp { add, mul, inv, neg };

/// F_{p^e} = F_p[x]/(modulus). Immutable; shared between threads.
///
/// Multiplication goes through exp/log tables of a primitive element,
/// addition is xor for p = 2, modular for e = 1 and a Zech-logarithm
/// lookup otherwise.
class Field {
 public:
  /// Canonical field: modulus is the lexicographically least monic irreducible
  /// of degree e (constant coefficient compared first). Cached per (p, e).
  static FieldPtr make(std::uint32_t p, unsigned e);

  /// As make(), but checks that a caller-supplied modulus equals the canonical one.
  static FieldPtr make(const FieldSpec& spec);

  const FieldSpec& spec() const { return spec_; }
  std::uint32_t p() const { return spec_.p; }
  unsigned e() const { return spec_.e; }
  std::uint32_t q() const { return q_; }

  Elem add(Elem a, Elem b) const {
    if (p2_) return a ^ b;
    if (prime_) {
      Elem s = a + b;
      return s >= q_ ? s - q_ : s;
    }
    if (a == 0) return b;
    if (b == 0) return a;
    std::uint32_t la = log_[a], lb = log_[b];
    std::uint32_t k = lb >= la ? lb - la : lb + (q_ - 1) - la;
    std::uint32_t z = zech_[k];
    if (z == kNone) return 0;
    return exp_[la + z];
  }

  Elem neg(Elem a) const {
    if (p2_ || a == 0) return a;
    if (prime_) return q_ - a;
    return exp_[log_[a] + (q_ - 1) / 2];
  }

  Elem sub(Elem a, Elem b) const { return add(a, neg(b)); }

  Elem mul(Elem a, Elem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[log_[a] + log_[b]];
  }

  /// Throws DomainError on zero.
  Elem inv(Elem a) const;

  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }

  Elem pow(Elem a, std::uint64_t k) const;

  /// a^p.
  Elem frobenius(Elem a) const { return pow(a, spec_.p); }

  /// Image of an integer in the prime subfield.
  Elem from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(spec_.p);
    if (r < 0) r += spec_.p;
    return static_cast<Elem>(r);
  }

  /// Residue in [0, p) of a prime-subfield element; throws if a is not in F_p.
  std::uint32_t to_prime(Elem a) const;

  /// The class of x in F_p[x]/(modulus). For e = 1 the modulus is x, so this is 0.
  Elem generator() const { return spec_.e == 1 ? 0 : spec_.p; }

  FieldElement element(Elem a) const;
  /// Validates length and digit range.
  Elem index(const FieldElement& a) const;

  bool contains(Elem a) const { return a < q_; }

  /// Discrete log of a nonzero element w.r.t. the internal primitive element.
  std::uint32_t log(Elem a) const { return log_[a]; }
  Elem exp(std::uint32_t k) const { return exp_[k % (q_ - 1)]; }

  explicit Field(FieldSpec spec);

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;

  FieldSpec spec_;
  std::uint32_t q_;
  bool p2_;
  bool prime_;
  std::vector<Elem> exp_;            // length 2(q-1)
  std::vector<std::uint32_t> log_;   // length q
  std::vector<std::uint32_t> zech_;  // length q-1, only for extension fields of odd p
};

/// Field-level arithmetic on external elements. Validates membership.
FieldElement ff_arith(const Field& field, const FieldElement& a, const FieldElement& b, FieldOp op);

/// All q elements in digit-lexicographic order, zero first.
std::vector<FieldElement> ff_enumerate(const Field& field);

bool is_prime(std::uint64_t n);

/// Embedding F_{p^e} -> F_{p^{el}} sending the source generator to a root
/// of the source modulus in the target.
class FieldEmbedding {
 public:
  /// Root search over the target in index order; the least root is used.
  /// A prime source field maps its generator 1 to 1.
  FieldEmbedding(FieldPtr source, FieldPtr target);

  const FieldPtr& source() const { return source_; }
  const FieldPtr& target() const { return target_; }
  Elem image_of_generator() const { return image_; }
  unsigned degree() const { return target_->e() / source_->e(); }

  Elem apply(Elem a) const { return table_[a]; }

  /// Preimage of an element of the image; throws DomainError otherwise.
  Elem preimage(Elem b) const;

  bool in_image(Elem b) const;

  /// Relative trace Tr_{target/source}(b) = sum_{i<l} b^{q_src^i}, as a source element.
  Elem trace(Elem b) const;

 private:
  FieldPtr source_;
  FieldPtr target_;
  Elem image_;
  std::vector<Elem> table_;
  std::vector<Elem> inverse_;  // target index -> source index, or kNotInImage
  static constexpr Elem kNotInImage = 0xffffffffu;
};

FieldEmbedding ff_embed(const FieldPtr& source, const FieldPtr& target);

}  // namespace multirank
