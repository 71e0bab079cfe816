#include "multirank/error.hpp"
#include "multirank/field.hpp"
#include "multirank/rng.hpp"

#include <gtest/gtest.h>

using namespace multirank;

namespace {

std::vector<std::uint32_t> modulus(std::uint32_t p, unsigned e) { return Field::make(p, e)->spec().modulus; }

FieldElement el(std::vector<std::uint32_t> d) { return FieldElement{std::move(d)}; }

}  // namespace

TEST(Field, CanonicalModulus) {
  EXPECT_EQ(modulus(2, 1), (std::vector<std::uint32_t>{0, 1}));
  EXPECT_EQ(modulus(2, 2), (std::vector<std::uint32_t>{1, 1, 1}));
  EXPECT_EQ(modulus(3, 2), (std::vector<std::uint32_t>{1, 0, 1}));
}

TEST(Field, UniqueIrreducibleQuadraticOverF2) {
  // x^2 + a x + b is irreducible iff it has no root in {0, 1}.
  std::vector<std::vector<std::uint32_t>> irreducible;
  for (std::uint32_t b = 0; b < 2; ++b)
    for (std::uint32_t a = 0; a < 2; ++a)
      if (b != 0 && (1 + a + b) % 2 != 0) irreducible.push_back({b, a, 1});
  ASSERT_EQ(irreducible.size(), 1u);
  EXPECT_EQ(irreducible[0], modulus(2, 2));
}

TEST(Field, RejectsBadParameters) {
  EXPECT_THROW(Field::make(4, 1), DomainError);
  EXPECT_THROW(Field::make(2, 21), Error);
  FieldSpec spec{2, 2, {1, 0, 1}};
  EXPECT_THROW(Field::make(spec), Error);
}

TEST(Field, F4Arithmetic) {
  const auto f4 = Field::make(2, 2);
  EXPECT_EQ(ff_arith(*f4, el({1, 0}), el({0, 1}), FieldOp::mul), el({0, 1}));
  EXPECT_EQ(ff_arith(*f4, el({0, 1}), el({0, 1}), FieldOp::mul), el({1, 1}));
  EXPECT_EQ(ff_arith(*f4, el({0, 1}), el({0, 0}), FieldOp::inv), el({1, 1}));
  EXPECT_THROW(ff_arith(*f4, el({0, 0}), el({0, 0}), FieldOp::inv), DomainError);
  EXPECT_THROW(ff_arith(*f4, el({2, 0}), el({0, 0}), FieldOp::add), Error);
}

TEST(Field, Enumerate) {
  EXPECT_EQ(ff_enumerate(*Field::make(2, 1)), (std::vector<FieldElement>{el({0}), el({1})}));
  EXPECT_EQ(ff_enumerate(*Field::make(3, 1)), (std::vector<FieldElement>{el({0}), el({1}), el({2})}));
  EXPECT_EQ(ff_enumerate(*Field::make(2, 2)),
            (std::vector<FieldElement>{el({0, 0}), el({1, 0}), el({0, 1}), el({1, 1})}));
}

class FieldAxioms : public ::testing::TestWithParam<std::pair<std::uint32_t, unsigned>> {};

TEST_P(FieldAxioms, RingLawsAndFrobenius) {
  const auto [p, e] = GetParam();
  const auto f = Field::make(p, e);
  SplitMix64 rng(p * 100 + e);
  for (int i = 0; i < 1000; ++i) {
    const Elem a = rng.below(f->q()), b = rng.below(f->q()), c = rng.below(f->q());
    ASSERT_EQ(f->add(f->add(a, b), c), f->add(a, f->add(b, c)));
    ASSERT_EQ(f->mul(f->mul(a, b), c), f->mul(a, f->mul(b, c)));
    ASSERT_EQ(f->add(a, b), f->add(b, a));
    ASSERT_EQ(f->mul(a, b), f->mul(b, a));
    ASSERT_EQ(f->mul(a, f->add(b, c)), f->add(f->mul(a, b), f->mul(a, c)));
    ASSERT_EQ(f->add(a, f->neg(a)), 0u);
    if (a != 0) ASSERT_EQ(f->mul(a, f->inv(a)), 1u);
  }
  for (int i = 0; i < 100; ++i) {
    const Elem a = rng.below(f->q()), b = rng.below(f->q());
    ASSERT_EQ(f->frobenius(f->add(a, b)), f->add(f->frobenius(a), f->frobenius(b)));
  }
}

INSTANTIATE_TEST_SUITE_P(Fields, FieldAxioms,
                         ::testing::Values(std::pair{2u, 1u}, std::pair{3u, 1u}, std::pair{5u, 1u},
                                           std::pair{2u, 2u}, std::pair{2u, 4u}, std::pair{3u, 2u},
                                           std::pair{3u, 4u}, std::pair{7u, 3u}, std::pair{2u, 10u}));

TEST(Field, SchoolbookMultiplicationAgrees) {
  // Reduce the digit-polynomial product mod the modulus by hand.
  for (auto [p, e] : {std::pair{2u, 3u}, std::pair{3u, 2u}, std::pair{5u, 2u}}) {
    const auto f = Field::make(p, e);
    const auto& m = f->spec().modulus;
    for (Elem a = 0; a < f->q(); ++a) {
      for (Elem b = 0; b < f->q(); ++b) {
        const auto da = f->element(a).digits, db = f->element(b).digits;
        std::vector<std::uint32_t> prod(2 * e - 1, 0);
        for (unsigned i = 0; i < e; ++i)
          for (unsigned j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
        for (unsigned k = 2 * e - 2; k >= e; --k) {
          const std::uint32_t c = prod[k];
          for (unsigned i = 0; i <= e; ++i) prod[k - e + i] = (prod[k - e + i] + (p - c) * m[i]) % p;
        }
        prod.resize(e);
        ASSERT_EQ(f->element(f->mul(a, b)).digits, prod);
      }
    }
  }
}

TEST(Embedding, PrimeSubfield) {
  const FieldEmbedding emb(Field::make(2, 1), Field::make(2, 2));
  EXPECT_EQ(emb.apply(1), 1u);
  EXPECT_EQ(emb.image_of_generator(), 1u);
}

namespace {

void expect_root_of_source_modulus(const FieldEmbedding& emb) {
  const auto& t = *emb.target();
  const auto& m = emb.source()->spec().modulus;
  const Elem r = emb.image_of_generator();
  Elem acc = 0, power = 1;
  for (std::uint32_t c : m) {
    acc = t.add(acc, t.mul(t.from_int(c), power));
    power = t.mul(power, r);
  }
  EXPECT_EQ(acc, 0u);
}

}  // namespace

TEST(Embedding, RootsOfModulus) {
  const FieldEmbedding e4(Field::make(2, 2), Field::make(2, 4));
  const auto& f16 = *e4.target();
  const Elem r = e4.image_of_generator();
  EXPECT_EQ(f16.add(f16.add(f16.mul(r, r), r), 1), 0u);
  expect_root_of_source_modulus(e4);

  const FieldEmbedding e9(Field::make(3, 2), Field::make(3, 4));
  const auto& f81 = *e9.target();
  const Elem s = e9.image_of_generator();
  EXPECT_EQ(f81.mul(s, s), f81.neg(1));
}

TEST(Embedding, HomomorphismAndTrace) {
  for (auto [p, e, l] : {std::tuple{2u, 1u, 3u}, std::tuple{2u, 2u, 2u}, std::tuple{3u, 1u, 2u}, std::tuple{3u, 2u, 2u}}) {
    const FieldEmbedding emb(Field::make(p, e), Field::make(p, e * l));
    const auto& s = *emb.source();
    const auto& t = *emb.target();
    for (Elem a = 0; a < s.q(); ++a) {
      EXPECT_EQ(emb.preimage(emb.apply(a)), a);
      for (Elem b = 0; b < s.q(); ++b) {
        ASSERT_EQ(emb.apply(s.add(a, b)), t.add(emb.apply(a), emb.apply(b)));
        ASSERT_EQ(emb.apply(s.mul(a, b)), t.mul(emb.apply(a), emb.apply(b)));
      }
    }
    std::size_t images = 0;
    for (Elem b = 0; b < t.q(); ++b) {
      images += emb.in_image(b);
      ASSERT_LT(emb.trace(b), s.q());
    }
    EXPECT_EQ(images, s.q());
  }
}

TEST(Embedding, CompositionHitsRootOfSourceModulus) {
  for (std::uint32_t p : {2u, 3u}) {
    const auto a = Field::make(p, 2);
    const auto b = Field::make(p, 2 * a->e());
    const auto c = Field::make(p, 4 * a->e());
    const FieldEmbedding ab(a, b), bc(b, c), ac(a, c);
    const Elem composed = bc.apply(ab.image_of_generator());
    const auto& m = a->spec().modulus;
    Elem acc = 0, power = 1;
    for (std::uint32_t k : m) {
      acc = c->add(acc, c->mul(c->from_int(k), power));
      power = c->mul(power, composed);
    }
    EXPECT_EQ(acc, 0u);
    expect_root_of_source_modulus(ac);
  }
}

TEST(Field, TraceOfF4) {
  const FieldEmbedding emb(Field::make(2, 1), Field::make(2, 2));
  const Elem theta = Field::make(2, 2)->generator();
  EXPECT_EQ(emb.trace(1), 0u);
  EXPECT_EQ(emb.trace(theta), 1u);
  EXPECT_EQ(emb.trace(Field::make(2, 2)->mul(theta, theta)), 1u);
}
