#include <random>

#include <gtest/gtest.h>

#include "ghz/dense.hpp"
#include "ghz/errors.hpp"
#include "ghz/monomial.hpp"
#include "ghz/site_operators.hpp"
#include "ghz/words.hpp"
#include "test_util.hpp"

namespace ghz {
namespace {

using testing::dense;
using testing::R;

TEST(Rational, CanonicalForm) {
  const Rational x = make_rational(6, -4);
  EXPECT_EQ(numerator(x), -3);
  EXPECT_EQ(denominator(x), 2);
  EXPECT_EQ(to_string(x), "-3/2");
  EXPECT_EQ(to_string(R(4, 2)), "2");
}

TEST(Rational, ParseFormats) {
  EXPECT_EQ(parse_rational("3/6"), R(1, 2));
  EXPECT_EQ(parse_rational("-7"), R(-7));
  EXPECT_EQ(parse_rational("+5/1"), R(5));
  EXPECT_THROW(parse_rational("1/0"), ParseError);
  EXPECT_THROW(parse_rational("1/-2"), ParseError);
  EXPECT_THROW(parse_rational("x"), ParseError);
  EXPECT_THROW(parse_rational(""), ParseError);
  EXPECT_THROW(parse_rational("1.5"), ParseError);
}

TEST(Rational, ParseRoundTrip) {
  std::mt19937 rng(7);
  for (int i = 0; i < 200; ++i) {
    const Rational x = testing::random_rational(rng) * testing::random_rational(rng);
    EXPECT_EQ(parse_rational(to_string(x)), x);
  }
}

TEST(MatMultiply, IdentityIsNeutral) {
  const DenseMatrix m = dense(3, 3, {R(1), R(2), R(3), R(4), R(5, 2), R(6), R(-7), R(8), R(9)});
  EXPECT_EQ(mat_multiply(DenseMatrix(DenseMatrix::Identity(3, 3)), m), m);
}

TEST(MatMultiply, QutritAB) {
  // Hand multiplication: (AB)[j][2-j] = a_j * b_j = (1*1, 0*0, -1*1).
  const DenseMatrix ab = mat_multiply(densify(build_A(3)), densify(build_B(3)));
  EXPECT_EQ(ab, dense(3, 3, {R(0), R(0), R(1), R(0), R(0), R(0), R(-1), R(0), R(0)}));
  const DenseMatrix ba = mat_multiply(densify(build_B(3)), densify(build_A(3)));
  EXPECT_EQ(ab, DenseMatrix(-ba));
}

TEST(MatMultiply, QubitBSquared) {
  const DenseMatrix b = densify(build_B(2));
  EXPECT_EQ(mat_multiply(b, b), dense(2, 2, {R(1, 4), R(0), R(0), R(1, 4)}));
}

TEST(MatMultiply, ShapeMismatchThrows) {
  EXPECT_THROW(mat_multiply(DenseMatrix(DenseMatrix::Zero(2, 3)), DenseMatrix(DenseMatrix::Zero(2, 3))), ShapeError);
}

TEST(MatMultiply, AgreesWithEigenProduct) {
  std::mt19937 rng(1);
  for (int t = 0; t < 20; ++t) {
    const DenseMatrix a = testing::random_dense(rng, 3, 4);
    const DenseMatrix b = testing::random_dense(rng, 4, 2);
    EXPECT_EQ(mat_multiply(a, b), DenseMatrix(a * b));
  }
}

TEST(MatMultiply, AssociativeOnRandomTriples) {
  std::mt19937 rng(2);
  std::uniform_int_distribution<int> dim(1, 4);
  for (int t = 0; t < 50; ++t) {
    const int p = dim(rng), q = dim(rng), r = dim(rng), s = dim(rng);
    const DenseMatrix a = testing::random_dense(rng, p, q);
    const DenseMatrix b = testing::random_dense(rng, q, r);
    const DenseMatrix c = testing::random_dense(rng, r, s);
    EXPECT_EQ(mat_multiply(mat_multiply(a, b), c), mat_multiply(a, mat_multiply(b, c)));
  }
}

TEST(MatTensor, IdentityTensorIdentity) {
  EXPECT_EQ(mat_tensor(DenseMatrix(DenseMatrix::Identity(2, 2)), DenseMatrix(DenseMatrix::Identity(3, 3))),
            DenseMatrix(DenseMatrix::Identity(6, 6)));
}

TEST(MatTensor, DiagonalRule) {
  const DenseMatrix d = densify(build_A(3));
  const DenseMatrix t = mat_tensor(d, d);
  ASSERT_TRUE(is_diagonal(t));
  const std::vector<Rational> expected{R(1), R(0), R(-1), R(0), R(0), R(0), R(-1), R(0), R(1)};
  for (Eigen::Index i = 0; i < 9; ++i) EXPECT_EQ(t(i, i), expected[static_cast<std::size_t>(i)]);
}

TEST(MatTensor, RowMajorIndexConvention) {
  // (a (x) b)(i*rb + k, j*cb + l) = a(i,j) b(k,l)
  std::mt19937 rng(3);
  const DenseMatrix a = testing::random_dense(rng, 2, 3);
  const DenseMatrix b = testing::random_dense(rng, 3, 2);
  const DenseMatrix t = mat_tensor(a, b);
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 3; ++j)
      for (Eigen::Index k = 0; k < 3; ++k)
        for (Eigen::Index l = 0; l < 2; ++l) EXPECT_EQ(t(i * 3 + k, j * 2 + l), a(i, j) * b(k, l));
}

TEST(MatTensor, MixedProductProperty) {
  std::mt19937 rng(4);
  std::uniform_int_distribution<int> dim(1, 3);
  for (int t = 0; t < 30; ++t) {
    const int p = dim(rng), q = dim(rng), r = dim(rng), u = dim(rng), v = dim(rng), w = dim(rng);
    const DenseMatrix P = testing::random_dense(rng, p, q);
    const DenseMatrix Q = testing::random_dense(rng, u, v);
    const DenseMatrix Rm = testing::random_dense(rng, q, r);
    const DenseMatrix S = testing::random_dense(rng, v, w);
    EXPECT_EQ(mat_multiply(mat_tensor(P, Q), mat_tensor(Rm, S)), mat_tensor(mat_multiply(P, Rm), mat_multiply(Q, S)));
  }
}

TEST(MatTensor, MonomialPathMatchesKroneckerOracle) {
  const SiteFamily family = canonical_family(PartySpec::uniform(3, 3));
  const TensorWord w = TensorWord::parse("ABB");
  EXPECT_EQ(densify(realize(w, family)), realize_dense(w, family));
}

TEST(RowBasis, CanonicalRref) {
  const DenseMatrix m = dense(3, 3, {R(2), R(4), R(0), R(1), R(2), R(0), R(0), R(1), R(3)});
  EXPECT_EQ(row_basis(m), dense(2, 3, {R(1), R(0), R(-6), R(0), R(1), R(3)}));
}

TEST(Monomial, RejectsBrokenInvariants) {
  EXPECT_FALSE(MonomialMatrix<Rational>::try_make({1, 2, 0}, {R(1), R(1), R(1)}));  // 3-cycle
  EXPECT_FALSE(MonomialMatrix<Rational>::try_make({1, 0}, {R(1), R(2)}));          // asymmetric
  EXPECT_FALSE(MonomialMatrix<Rational>::try_make({0, 5}, {R(1), R(1)}));          // out of range
  EXPECT_TRUE(MonomialMatrix<Rational>::try_make({1, 0, 2}, {R(3), R(3), R(0)}));
  EXPECT_THROW(MonomialMatrix<Rational>::make({1, 0}, {R(1), R(2)}), ContractError);
}

TEST(Monomial, InvolutionWithWeightsLaw) {
  std::mt19937 rng(5);
  for (int t = 0; t < 30; ++t) {
    const auto m = testing::random_monomial(rng, 1 + t % 7);
    const DenseMatrix d = densify(m);
    for (std::size_t j = 0; j < m.dim(); ++j) {
      Vector e = Vector::Zero(static_cast<Eigen::Index>(m.dim()));
      e(static_cast<Eigen::Index>(j)) = 1;
      const Vector twice = d * (d * e).eval();
      EXPECT_EQ(twice, Vector(m.weight(j) * m.weight(m.target(j)) * e));
    }
  }
}

TEST(Monomial, DensifyThenSparsifyIsIdentity) {
  std::mt19937 rng(6);
  for (int t = 0; t < 50; ++t) {
    const auto m = testing::random_monomial(rng, 1 + t % 9);
    const auto back = sparsify(densify(m));
    ASSERT_TRUE(back.has_value());
    EXPECT_EQ(*back, m);
    EXPECT_EQ(densify(*back), densify(m));
  }
}

TEST(Monomial, SparsifyRejectsNonMonomial) {
  EXPECT_FALSE(sparsify(dense(2, 2, {R(1), R(1), R(0), R(1)})));
  EXPECT_FALSE(sparsify(dense(2, 2, {R(0), R(1), R(2), R(0)})));
  EXPECT_FALSE(sparsify(DenseMatrix(DenseMatrix::Zero(2, 3))));
}

TEST(Monomial, ApplyMatchesDense) {
  std::mt19937 rng(8);
  for (int t = 0; t < 20; ++t) {
    const auto m = testing::random_monomial(rng, 6);
    const DenseMatrix v = testing::random_dense(rng, 6, 1);
    const Vector col = v.col(0);
    EXPECT_EQ(apply(m, col), Vector(densify(m) * col));
  }
}

TEST(MonomialCompose, WordSquaredIsDiagonal) {
  const auto w = realize(TensorWord::parse("ABB"), canonical_family(PartySpec::uniform(3, 3)));
  const auto product = monomial_compose(std::vector{w, w});
  const auto* m = std::get_if<MonomialMatrix<Rational>>(&product);
  ASSERT_NE(m, nullptr);
  EXPECT_TRUE(m->is_diagonal());
  for (std::size_t j = 0; j < w.dim(); ++j) EXPECT_EQ(m->weight(j), w.weight(j) * w.weight(w.target(j)));
}

TEST(MonomialCompose, QutritCanonicalProductIsNegativeDiagonal) {
  const auto family = canonical_family(PartySpec::uniform(3, 3));
  std::vector<MonomialMatrix<Rational>> words;
  for (const char* s : {"ABB", "BAB", "BBA", "AAA"}) words.push_back(realize(TensorWord::parse(s), family));
  const auto product = monomial_compose(words);
  const auto* m = std::get_if<MonomialMatrix<Rational>>(&product);
  ASSERT_NE(m, nullptr);
  ASSERT_TRUE(m->is_diagonal());
  std::size_t minus = 0, zero = 0;
  for (const auto& w : m->weights()) {
    minus += w == R(-1);
    zero += is_zero(w);
  }
  EXPECT_EQ(minus, 8u);
  EXPECT_EQ(zero, 19u);
}

TEST(MonomialCompose, QubitProductMatchesDenseOracle) {
  const auto family = canonical_family(PartySpec::uniform(3, 2));
  std::vector<MonomialMatrix<Rational>> words;
  DenseMatrix oracle = DenseMatrix::Identity(8, 8);
  for (const char* s : {"ABB", "BAB", "BBA", "AAA"}) {
    words.push_back(realize(TensorWord::parse(s), family));
    oracle = mat_multiply(oracle, realize_dense(TensorWord::parse(s), family));
  }
  const auto product = monomial_compose(words);
  const auto* m = std::get_if<MonomialMatrix<Rational>>(&product);
  ASSERT_NE(m, nullptr);
  EXPECT_EQ(densify(*m), oracle);
  ASSERT_TRUE(is_diagonal(oracle));
  for (Eigen::Index i = 0; i < 8; ++i) EXPECT_LT(oracle(i, i), 0);
}

TEST(MonomialCompose, NonInvolutiveProductIsDensified) {
  const auto family = canonical_family(PartySpec::uniform(3, 3));
  const auto u = realize(TensorWord::parse("ABB"), family);
  const auto v = realize(TensorWord::parse("BBB"), family);  // AB on party 1 has weights (1, 0, -1)
  const auto product = monomial_compose(std::vector{u, v});
  const auto* d = std::get_if<DenseMatrix>(&product);
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(*d, mat_multiply(densify(u), densify(v)));
}

TEST(MonomialCompose, DimensionMismatchThrows) {
  EXPECT_THROW(monomial_compose(std::vector{MonomialMatrix<Rational>::identity(2), MonomialMatrix<Rational>::identity(3)}),
               ShapeError);
  EXPECT_THROW(monomial_compose(std::vector<MonomialMatrix<Rational>>{}), ShapeError);
}

TEST(Monomial, TemplatedOnScalar) {
  const auto m = MonomialMatrix<long long>::make({1, 0, 2}, {3, 3, -2});
  const auto sq = monomial_compose(std::vector{m, m});
  const auto* d = std::get_if<MonomialMatrix<long long>>(&sq);
  ASSERT_NE(d, nullptr);
  EXPECT_EQ(d->weights(), (std::vector<long long>{9, 9, 4}));
  EXPECT_EQ(mat_multiply(densify(m), densify(m)), densify(*d));
}

}  // namespace
}  // namespace ghz
