#include "multirank/counting.hpp"
#include "multirank/error.hpp"
#include "multirank/linalg.hpp"
#include "multirank/polynomial.hpp"
#include "multirank/rng.hpp"
#include "multirank/tensor.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

using namespace multirank;

namespace {

Vec random_vec(const Field& f, unsigned n, SplitMix64& rng) {
  Vec v(n);
  for (auto& x : v) x = rng.below(f.q());
  return v;
}

Vec basis(unsigned n, unsigned i) {
  Vec v(n, 0);
  v[i] = 1;
  return v;
}

}  // namespace

TEST(Tensor, EvalExamples) {
  const auto f2 = Field::make(2, 1);
  const auto diag = diagonal(1, 1, 3, f2);
  std::vector<Vec> ones{{1}, {1}, {1}};
  EXPECT_EQ(eval(diag, ones), 1u);

  MultilinearForm m(f2, 2, 2, {0, 1, 0, 0});
  std::vector<Vec> e12{basis(2, 0), basis(2, 1)};
  EXPECT_EQ(eval(m, e12), 1u);

  const auto r = random_form(Field::make(3, 1), 3, 2, 9);
  std::vector<Vec> with_zero{{1, 2}, {0, 0}, {2, 1}};
  EXPECT_EQ(eval(r, with_zero), 0u);
}

TEST(Tensor, ContractLastExamples) {
  const auto f2 = Field::make(2, 1);
  const auto d = diagonal(2, 2, 3, f2);
  std::vector<Vec> a{{1, 0}, {1, 0}};
  EXPECT_EQ(contract_last(d, a).entries, (Vec{1, 0}));
  std::vector<Vec> b{{1, 1}, {1, 0}};
  EXPECT_EQ(contract_last(d, b).entries, (Vec{1, 0}));
  for (unsigned i = 0; i < 2; ++i) {
    std::vector<Vec> full{b[0], b[1], basis(2, i)};
    EXPECT_EQ(eval(d, full), contract_last(d, b).entries[i]);
  }
  EXPECT_TRUE(contract_last(MultilinearForm(f2, 3, 2), a).is_zero());
}

TEST(Tensor, SliceMatrixExamples) {
  const auto f2 = Field::make(2, 1);
  MultilinearForm id(f2, 2, 2, {1, 0, 0, 1});
  const Matrix s = slice_matrix(id, {});
  EXPECT_EQ(s.data, (Vec{1, 0, 0, 1}));
  const auto d = diagonal(2, 2, 3, f2);
  std::vector<Vec> x11{{1, 1}}, x10{{1, 0}};
  EXPECT_EQ(slice_matrix(d, x11).data, (Vec{1, 0, 0, 1}));
  EXPECT_EQ(slice_matrix(d, x10).data, (Vec{1, 0, 0, 0}));
}

TEST(Tensor, SliceMatrixMatchesContraction) {
  SplitMix64 rng(5);
  for (std::uint32_t q : {2u, 3u, 4u}) {
    const auto field = Field::make(q == 4 ? 2 : q, q == 4 ? 2 : 1);
    for (unsigned d : {3u, 4u}) {
      const auto f = random_form(field, d, 3, rng.next());
      std::vector<Vec> xs;
      for (unsigned k = 0; k + 2 < d; ++k) xs.push_back(random_vec(*field, 3, rng));
      const Matrix m = slice_matrix(f, xs);
      for (unsigned i = 0; i < 3; ++i) {
        auto ys = xs;
        ys.push_back(basis(3, i));
        const auto row = contract_last(f, ys).entries;
        for (unsigned j = 0; j < 3; ++j) EXPECT_EQ(row[j], m.at(i, j));
      }
    }
  }
}

TEST(Tensor, Multilinearity) {
  SplitMix64 rng(17);
  for (auto [p, e] : {std::pair{2u, 1u}, std::pair{3u, 1u}, std::pair{2u, 2u}, std::pair{5u, 1u}}) {
    const auto field = Field::make(p, e);
    for (int trial = 0; trial < 40; ++trial) {
      const unsigned d = 2 + trial % 3, n = 1 + trial % 3;
      const auto f = random_form(field, d, n, rng.next());
      std::vector<Vec> xs;
      for (unsigned k = 0; k < d; ++k) xs.push_back(random_vec(*field, n, rng));
      const unsigned j = rng.below(d);
      const Vec u = random_vec(*field, n, rng), v = random_vec(*field, n, rng);
      const Elem lambda = rng.below(field->q());
      Vec w(n);
      for (unsigned i = 0; i < n; ++i) w[i] = field->add(u[i], field->mul(lambda, v[i]));
      auto at = [&](const Vec& z) {
        auto ys = xs;
        ys[j] = z;
        return eval(f, ys);
      };
      ASSERT_EQ(at(w), field->add(at(u), field->mul(lambda, at(v))));
    }
  }
}

TEST(Tensor, Diagonal) {
  const auto f2 = Field::make(2, 1);
  EXPECT_TRUE(diagonal(0, 3, 3, f2).is_zero());
  const auto one = diagonal(1, 1, 3, f2);
  EXPECT_EQ(one.size(), 1u);
  EXPECT_EQ(one.coeffs()[0], 1u);
  EXPECT_THROW(diagonal(3, 2, 3, f2), Error);
}

TEST(Tensor, DirectSum) {
  const auto f3 = Field::make(3, 1);
  const auto f = random_form(f3, 3, 2, 4);
  const auto padded = direct_sum(f, MultilinearForm(f3, 3, 1));
  EXPECT_EQ(padded.n(), 3u);
  for (std::size_t flat = 0; flat < padded.size(); ++flat) {
    const auto idx = multi_index(flat, 3, 3);
    const bool inside = std::all_of(idx.begin(), idx.end(), [](unsigned i) { return i < 2; });
    EXPECT_EQ(padded.coeffs()[flat], inside ? f.coeff(idx) : 0u);
  }
  EXPECT_EQ(direct_sum(diagonal(1, 1, 3, f3), diagonal(2, 2, 3, f3)), diagonal(3, 3, 3, f3));
}

TEST(Tensor, WeilRestrictF4Gram) {
  const auto f4 = Field::make(2, 2);
  const FieldEmbedding emb(Field::make(2, 1), f4);
  MultilinearForm xy(f4, 2, 1, {1});
  const auto r = weil_restrict(xy, emb);
  EXPECT_EQ(r.n(), 2u);
  EXPECT_EQ(r.field().q(), 2u);
  EXPECT_EQ(std::vector<Elem>(r.coeffs().begin(), r.coeffs().end()), (Vec{0, 1, 1, 1}));
  Matrix m(2, 2);
  m.data.assign(r.coeffs().begin(), r.coeffs().end());
  EXPECT_EQ(rank(r.field(), m), 2u);

  const auto zero = weil_restrict(MultilinearForm(f4, 3, 2), emb);
  EXPECT_EQ(zero.n(), 4u);
  EXPECT_TRUE(zero.is_zero());
}

TEST(Tensor, WeilRestrictShape) {
  const FieldEmbedding emb(Field::make(3, 1), Field::make(3, 2));
  const auto r = weil_restrict(random_form(Field::make(3, 2), 3, 2, 1), emb);
  EXPECT_EQ(r.n(), 4u);
  EXPECT_EQ(r.field().spec(), emb.source()->spec());
}

TEST(Tensor, BaseChangeKeepsPrimeCoefficients) {
  const auto f2 = Field::make(2, 1);
  const auto f = random_form(f2, 3, 2, 12);
  const auto g = base_change(f, FieldEmbedding(f2, Field::make(2, 3)));
  EXPECT_EQ(std::vector<Elem>(f.coeffs().begin(), f.coeffs().end()),
            std::vector<Elem>(g.coeffs().begin(), g.coeffs().end()));
  EXPECT_EQ(lift_to_level(f, 3), g);
}

TEST(Tensor, RandomDeterminismAndRange) {
  const auto f3 = Field::make(3, 1);
  EXPECT_EQ(random_form(f3, 3, 2, 42), random_form(f3, 3, 2, 42));
  EXPECT_NE(random_form(f3, 3, 2, 42), random_form(f3, 3, 2, 43));
  EXPECT_EQ(random_int_form(3, 2, 3, 8), random_int_form(3, 2, 3, 8));

  const auto big = random_int_form(2, 100, 3, 1);
  for (const auto& c : big.coeffs()) {
    EXPECT_LE(c, 3);
    EXPECT_GE(c, -3);
  }

  // 10^4 draws: each value within 5 sigma of 1/3.
  const auto many = random_form(f3, 2, 100, 7);
  std::array<double, 3> hist{};
  for (Elem c : many.coeffs()) hist[c] += 1;
  const double n = 10000, sigma = std::sqrt(n * (1.0 / 3) * (2.0 / 3));
  for (double h : hist) EXPECT_LT(std::abs(h - n / 3), 5 * sigma);
}

TEST(Polarize, Examples) {
  const auto f5 = Field::make(5, 1);
  HomogeneousForm xy(f5, 2, 2);
  xy.set({1, 1}, 1);
  const auto pxy = polarize(xy);
  EXPECT_EQ(std::vector<Elem>(pxy.coeffs().begin(), pxy.coeffs().end()), (Vec{0, 1, 1, 0}));

  HomogeneousForm cube(f5, 1, 3);
  cube.set({3}, 1);
  const auto pc = polarize(cube);
  EXPECT_EQ(pc.coeffs()[0], 1u);  // 6 = 1 mod 5

  EXPECT_TRUE(polarize(HomogeneousForm(f5, 2, 3)).is_zero());
}

TEST(Polarize, DiagonalIsFactorialTimesForm) {
  SplitMix64 rng(3);
  const auto f7 = Field::make(7, 1);
  for (unsigned d = 2; d <= 4; ++d) {
    const auto f = random_poly(f7, d, 3, rng.next());
    const auto pf = polarize(f);
    Elem fact = 1;
    for (unsigned k = 2; k <= d; ++k) fact = f7->mul(fact, k);
    for (int t = 0; t < 20; ++t) {
      const Vec x = random_vec(*f7, 3, rng);
      std::vector<Vec> xs(d, x);
      EXPECT_EQ(eval(pf, xs), f7->mul(fact, f.evaluate(x)));
    }
  }
}

TEST(Polarize, SymmetricUnderSlotPermutations) {
  SplitMix64 rng(11);
  const auto f5 = Field::make(5, 1);
  for (unsigned d = 2; d <= 4; ++d) {
    const auto pf = polarize(random_poly(f5, d, 2, rng.next()));
    std::vector<Vec> xs;
    for (unsigned k = 0; k < d; ++k) xs.push_back(random_vec(*f5, 2, rng));
    std::vector<unsigned> perm(d);
    std::iota(perm.begin(), perm.end(), 0u);
    const Elem base = eval(pf, xs);
    do {
      std::vector<Vec> ys;
      for (unsigned k : perm) ys.push_back(xs[k]);
      ASSERT_EQ(eval(pf, ys), base);
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
}

TEST(Polynomial, ProductExpandsFactorization) {
  // x^3 + y^3 = (x + y)(x^2 - xy + y^2) over F_5.
  const auto f5 = Field::make(5, 1);
  HomogeneousForm g(f5, 2, 1), h(f5, 2, 2), f(f5, 2, 3);
  g.set({1, 0}, 1);
  g.set({0, 1}, 1);
  h.set({2, 0}, 1);
  h.set({1, 1}, 4);
  h.set({0, 2}, 1);
  f.set({3, 0}, 1);
  f.set({0, 3}, 1);
  EXPECT_EQ(g * h, f);
}
