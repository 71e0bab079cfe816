#pragma once

#include "multirank/bigint.hpp"
#include "multirank/polynomial.hpp"
#include "multirank/tensor.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace multirank {

/// Enumeration gate for the parallel kernels, as log2 of the item count.
struct Budget {
  double bits = 34.0;
};

/// Gate of the literal-enumeration oracles.
inline constexpr double kNaiveBits = 28.0;

/// Throws BudgetError when log2_size > limit.
void check_budget(const std::string& what, double log2_size, double limit);

/// |S_F(F_{q^l})| for S_F = {(x_1..x_{d-1}) : F(x_1, ..., x_{d-1}, .) = 0}.
///
/// Enumerates (x_1, ..., x_{d-2}) and adds Q^{n - rank M(x)} for the slice
/// matrix M(x). Tuples are enumerated up to nonzero scaling of each block
/// (leading coordinate 1), since scaling a block does not change the rank;
/// tuples with a zero block contribute Q^n each. OpenMP-parallel over chunks
/// of representatives; partial rank histograms are merged exactly.
BigInt count_sf(const MultilinearForm& f, unsigned level = 1, Budget budget = {});

/// Serial reference of count_sf: every tuple of F_Q^{n(d-2)}, no symmetry reduction.
BigInt count_sf_serial(const MultilinearForm& f, unsigned level = 1, Budget budget = {});

/// Literal enumeration of (d-1)-tuples testing contract_last = 0. Gate 2^28.
BigInt count_sf_naive(const MultilinearForm& f, unsigned level = 1);

/// #{x in F_{q^l}^n : all formal partials of f vanish at x}. Uses the cone
/// structure of the singular locus (count = 1 + (Q-1) * projective count).
BigInt count_singular(const HomogeneousForm& f, unsigned level = 1, Budget budget = {});
BigInt count_singular_serial(const HomogeneousForm& f, unsigned level = 1);

/// N_R: #{x in (F_q[t]^n)^{d-1} : deg x < R, F(x, e_i) = 0 in F_q[t] for all i}.
/// The last block is solved as a linear system over F_q in its nR coordinates.
BigInt count_nr(const MultilinearForm& f, unsigned R, Budget budget = {});
BigInt count_nr_naive(const MultilinearForm& f, unsigned R);

/// Truncated-polynomial vector in (F_q[t]/t^k)^n, layout [i * k + s] for coefficient of t^s in entry i.
using TruncVec = std::vector<Elem>;

/// N^y = #{x in H^{d-1} : G(x) = 0 mod t^a, x_i = y_i mod t^b}, H = (F_q[t]/t^a)^n,
/// G(x)_i = F(x, e_i). Each y_i has n*b coefficients. Gate q^{n(d-1)a} <= 2^28.
BigInt count_fiber(const MultilinearForm& f, unsigned a, unsigned b, std::span<const TruncVec> y);

/// All fibers at once: entry k counts solutions whose reduction mod t^b has
/// flat index k (blocks x_1..x_{d-1}, each block's n*b coefficients read
/// base q with the [i * b + s] layout, last block least significant).
std::vector<std::uint64_t> fiber_histogram(const MultilinearForm& f, unsigned a, unsigned b);

/// Integer box for the characteristic-zero counts.
struct BoxSpec {
  std::int64_t bound = 1;  ///< B
  bool symmetric = false;  ///< false: entries in [0, B); true: entries in (-B, B)
  std::int64_t modulus = 0;  ///< L for the mod-L variant; 0 means exact over Z

  std::int64_t width() const { return symmetric ? 2 * bound - 1 : bound; }
  std::int64_t lowest() const { return symmetric ? -(bound - 1) : 0; }
};

/// #{x in box^{n(d-1)} : G(x, e_i) = 0 (or = 0 mod L) for all i}.
/// The last coordinate is solved as a linear congruence per row.
BigInt count_box(const IntMultilinearForm& g, const BoxSpec& box, Budget budget = {});

/// Every box solution, in enumeration order (x_1 first, last coordinate fastest).
std::vector<std::vector<std::int64_t>> box_solutions(const IntMultilinearForm& g, const BoxSpec& box,
                                                     Budget budget = {});

/// Literal enumeration reference for count_box.
BigInt count_box_serial(const IntMultilinearForm& g, const BoxSpec& box);

/// Counts per extension level: entries (l, |S_F(F_{q^l})|).
struct CountProfile {
  std::uint64_t q = 0;
  std::uint64_t ambient = 0;  ///< n(d-1), exponent of Q = q^l
  std::vector<std::pair<unsigned, BigInt>> entries;
};

CountProfile count_profile(const MultilinearForm& f, unsigned l_max, Budget budget = {});

}  // namespace multirank
