#include "multirank/counting.hpp"
#include "multirank/error.hpp"
#include "multirank/parallel.hpp"
#include "multirank/rng.hpp"

#include "../support/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace multirank;

namespace {

BigInt pow_big(std::uint64_t b, unsigned e) {
  BigInt r = 1;
  for (unsigned i = 0; i < e; ++i) r *= b;
  return r;
}

MultilinearForm f2_tensor(unsigned bits) {
  MultilinearForm f(Field::make(2, 1), 3, 2);
  for (unsigned i = 0; i < 8; ++i) f.coeffs()[i] = bits >> i & 1u;
  return f;
}

}  // namespace

TEST(CountSF, Examples) {
  const auto f2 = Field::make(2, 1);
  EXPECT_EQ(count_sf(MultilinearForm(f2, 2, 2, {1, 0, 0, 1})), 1);
  EXPECT_EQ(count_sf(diagonal(2, 2, 3, f2)), 9);
  EXPECT_EQ(count_sf_naive(diagonal(1, 1, 3, f2), 2), 7);
  for (unsigned l = 1; l <= 3; ++l) {
    EXPECT_EQ(count_sf(MultilinearForm(f2, 3, 2), l), pow_big(2, 4 * l));
    EXPECT_EQ(count_sf_naive(MultilinearForm(f2, 3, 2), l), pow_big(2, 4 * l));
  }
}

TEST(CountSF, ExhaustiveF2AgainstNaive) {
  for (unsigned bits = 0; bits < 256; ++bits) {
    const auto f = f2_tensor(bits);
    for (unsigned l = 1; l <= 2; ++l) {
      const BigInt naive = count_sf_naive(f, l);
      ASSERT_EQ(count_sf(f, l), naive) << bits;
      ASSERT_EQ(count_sf_serial(f, l), naive) << bits;
      ASSERT_LE(naive, pow_big(1u << l, 4));
    }
  }
}

TEST(CountSF, RandomF3AgainstNaive) {
  const auto f3 = Field::make(3, 1);
  SplitMix64 rng(2024);
  for (int k = 0; k < 100; ++k) {
    const auto f = random_form(f3, 3, 2, rng.next());
    ASSERT_EQ(count_sf(f), count_sf_naive(f)) << k;
  }
  for (int k = 0; k < 10; ++k) {
    const auto f = random_form(Field::make(2, 2), 4, 2, rng.next());
    ASSERT_EQ(count_sf(f), count_sf_naive(f)) << k;
  }
}

TEST(CountSF, DiagonalClosedForm) {
  for (std::uint32_t q : {2u, 3u}) {
    const auto field = Field::make(q, 1);
    for (unsigned n = 1; n <= 3; ++n)
      for (unsigned m = 0; m <= n; ++m)
        for (unsigned l = 1; l <= 4; ++l) {
          const std::uint64_t Q = static_cast<std::uint64_t>(std::pow(q, l));
          const BigInt expected(oracle::diagonal_count(Q, m, n, 3));
          ASSERT_EQ(count_sf(diagonal(m, n, 3, field), l), expected) << q << ' ' << n << ' ' << m << ' ' << l;
        }
  }
}

TEST(CountSF, SchwartzZippelShape) {
  for (std::uint32_t q : {2u, 3u}) {
    const auto field = Field::make(q, 1);
    for (unsigned m = 1; m <= 2; ++m) {
      const auto f = diagonal(m, 2, 3, field);
      for (unsigned l = 1; l <= (q == 2 ? 8u : 5u); ++l) {
        const double Q = std::pow(q, l);
        const double ratio = big_log(count_sf(f, l)) - (2.0 * 2 - m) * std::log(Q);
        EXPECT_LE(ratio, m * 2 * std::log(2.0));
      }
    }
  }
}

TEST(CountSF, LangWeilGapShrinks) {
  const auto f2 = Field::make(2, 1);
  for (unsigned m = 1; m <= 2; ++m) {
    const auto f = diagonal(m, m, 3, f2);
    double previous = 1e9;
    for (unsigned l = 1; l <= 8; ++l) {
      const double gap = std::abs(big_log_base(count_sf(f, l), std::pow(2.0, l)) - (2.0 * m - m));
      EXPECT_LT(gap, previous);
      previous = gap;
    }
  }
  // The gap is m log_Q(2 - 1/Q), below 0.1 once Q > 2^{10 m}.
  const double gap = big_log_base(count_sf(diagonal(1, 1, 3, f2), 11), 2048.0) - 1.0;
  EXPECT_LT(gap, 0.1);
}

TEST(CountSF, ThreadCountDoesNotChangeCounts) {
  const auto f = random_form(Field::make(3, 1), 4, 2, 99);
  const auto g = random_form(Field::make(2, 1), 3, 4, 98);
  std::vector<BigInt> seen;
  for (int t : {1, 2, 8}) {
    parallel::ThreadScope scope(t);
    seen.push_back(count_sf(f, 2));
    seen.push_back(count_sf(g, 3));
  }
  EXPECT_EQ(seen[0], seen[2]);
  EXPECT_EQ(seen[0], seen[4]);
  EXPECT_EQ(seen[1], seen[3]);
  EXPECT_EQ(seen[1], seen[5]);
}

TEST(CountSF, BudgetGate) {
  const auto f = random_form(Field::make(2, 1), 3, 4, 1);
  EXPECT_THROW(count_sf(f, 8, Budget{10}), BudgetError);
  EXPECT_THROW(count_sf_naive(f, 8), BudgetError);
  try {
    count_sf(f, 8, Budget{10});
  } catch (const BudgetError& e) {
    EXPECT_EQ(e.log2_limit(), 10);
    EXPECT_GT(e.log2_size(), 10);
  }
}

TEST(CountSingular, Examples) {
  const auto f5 = Field::make(5, 1);
  HomogeneousForm cubes(f5, 2, 3), x2y(f5, 2, 3);
  cubes.set({3, 0}, 1);
  cubes.set({0, 3}, 1);
  x2y.set({2, 1}, 1);
  EXPECT_EQ(count_singular(cubes), 1);
  EXPECT_EQ(count_singular(x2y), 5);
  EXPECT_EQ(count_singular(HomogeneousForm(f5, 2, 3), 2), 625);
  for (unsigned l = 1; l <= 2; ++l) {
    EXPECT_EQ(count_singular(cubes, l), count_singular_serial(cubes, l));
    EXPECT_EQ(count_singular(x2y, l), count_singular_serial(x2y, l));
  }
  SplitMix64 rng(1);
  for (int k = 0; k < 30; ++k) {
    const auto f = random_poly(Field::make(7, 1), 3, 3, rng.next());
    ASSERT_EQ(count_singular(f), count_singular_serial(f));
  }
}

TEST(CountNR, Examples) {
  const auto f2 = Field::make(2, 1);
  const auto d = diagonal(1, 1, 3, f2);
  EXPECT_EQ(count_nr(d, 1), 3);
  EXPECT_EQ(count_nr(d, 2), 7);
  EXPECT_EQ(count_nr(MultilinearForm(f2, 3, 2), 2), pow_big(2, 8));
  SplitMix64 rng(77);
  for (int k = 0; k < 20; ++k) {
    const auto f = random_form(Field::make(k % 2 ? 3 : 2, 1), 3, 2, rng.next());
    for (unsigned R = 1; R <= 2; ++R) ASSERT_EQ(count_nr(f, R), count_nr_naive(f, R));
  }
}

TEST(CountFiber, Examples) {
  const auto d = diagonal(1, 1, 3, Field::make(2, 1));
  std::vector<TruncVec> zero{{0}, {0}}, one{{1}, {1}}, mixed{{0}, {1}};
  EXPECT_EQ(count_fiber(d, 2, 1, zero), 4);
  EXPECT_EQ(count_fiber(d, 2, 1, one), 0);
  EXPECT_EQ(count_fiber(d, 2, 1, mixed), 2);
  std::vector<TruncVec> none{{}, {}};
  EXPECT_EQ(count_fiber(d, 2, 0, none), 8);
  const auto hist = fiber_histogram(d, 2, 1);
  EXPECT_EQ(hist, (std::vector<std::uint64_t>{4, 2, 2, 0}));
}

TEST(CountBox, Examples) {
  IntMultilinearForm xyz(3, 1, {BigInt(1)});
  EXPECT_EQ(count_box(xyz, BoxSpec{2, true, 0}), 5);
  EXPECT_EQ(count_box(xyz, BoxSpec{4, false, 0}), 7);
  EXPECT_EQ(count_box(IntMultilinearForm(3, 2), BoxSpec{3, false, 0}), 81);
  EXPECT_EQ(count_box(xyz, BoxSpec{10, false, 10}), 27);
}

TEST(CountBox, AgreesWithLiteralEnumeration) {
  SplitMix64 rng(8);
  for (int k = 0; k < 30; ++k) {
    const auto g = random_int_form(3, 1 + k % 2, 3, rng.next());
    for (BoxSpec box : {BoxSpec{3, true, 0}, BoxSpec{4, false, 0}, BoxSpec{6, false, 6}, BoxSpec{3, true, 5}}) {
      ASSERT_EQ(count_box(g, box), count_box_serial(g, box)) << k;
      ASSERT_EQ(BigInt(box_solutions(g, box).size()), count_box(g, box));
    }
  }
}

TEST(CountProfile, DiagonalLevels) {
  const auto p = count_profile(diagonal(2, 2, 3, Field::make(2, 1)), 3);
  EXPECT_EQ(p.q, 2u);
  EXPECT_EQ(p.ambient, 4u);
  ASSERT_EQ(p.entries.size(), 3u);
  EXPECT_EQ(p.entries[0].second, 9);
  EXPECT_EQ(p.entries[1].second, 49);
  EXPECT_EQ(p.entries[2].second, 225);
}
