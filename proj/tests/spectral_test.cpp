#include <gtest/gtest.h>

#include "ghz/dense.hpp"
#include "ghz/errors.hpp"
#include "ghz/spectral.hpp"
#include "test_util.hpp"

namespace ghz {
namespace {

using testing::R;

Spectrum spectrum_for(const char* word, std::size_t m) {
  const TensorWord w = TensorWord::parse(word);
  return spectrum_of_word(w, canonical_family(PartySpec::uniform(w.size(), m)));
}

// Oracle: eigenvalue multiplicities from dense kernel dimensions.
void expect_matches_dense(const Spectrum& s, const DenseMatrix& d) {
  std::size_t total = 0;
  for (const auto& [value, mult] : s.entries) {
    EXPECT_EQ(testing::dense_multiplicity(d, value), mult) << to_string(value);
    total += mult;
  }
  EXPECT_EQ(total, static_cast<std::size_t>(d.rows()));
}

TEST(Spectrum, QutritWord) {
  const Spectrum s = spectrum_for("ABB", 3);
  EXPECT_EQ(s.multiplicity(R(-1)), 4u);
  EXPECT_EQ(s.zero_count(), 19u);
  EXPECT_EQ(s.multiplicity(R(1)), 4u);
  EXPECT_EQ(s.entries.size(), 3u);
  const auto family = canonical_family(PartySpec::uniform(3, 3));
  expect_matches_dense(s, realize_dense(TensorWord::parse("ABB"), family));
}

TEST(Spectrum, QubitDiagonalWord) {
  const Spectrum s = spectrum_for("AAA", 2);
  EXPECT_EQ(s.multiplicity(R(1, 8)), 4u);
  EXPECT_EQ(s.multiplicity(R(-1, 8)), 4u);
  EXPECT_EQ(s.dim(), 8u);
}

TEST(Spectrum, FiveLevelZeroCount) {
  EXPECT_EQ(spectrum_for("ABB", 5).zero_count(), 61u);
}

TEST(Spectrum, AllCanonicalWordsMatchDenseOracle) {
  for (std::size_t m : {2u, 3u, 4u}) {
    const auto family = canonical_family(PartySpec::uniform(3, m));
    for (const char* w : {"ABB", "BAB", "BBA", "AAA", "BBB", "AAB"})
      expect_matches_dense(spectrum_of_word(TensorWord::parse(w), family), realize_dense(TensorWord::parse(w), family));
  }
}

TEST(Spectrum, ZeroCountLaw) {
  for (long long s = 1; s <= 3; ++s) {
    const std::size_t m = static_cast<std::size_t>(2 * s + 1);
    const std::size_t dim = m * m * m;
    const std::size_t k = static_cast<std::size_t>(12 * s * s + 6 * s + 1);
    const auto family = canonical_family(PartySpec::uniform(3, m));
    const ProofSet ps = build_proof_set(PartySpec::uniform(3, m));
    for (const auto& w : ps.words) {
      const Spectrum sp = spectrum_of_word(w, family);
      EXPECT_EQ(sp.zero_count(), k);
      EXPECT_EQ(sp.positive_count(), (dim - k) / 2);
      EXPECT_EQ(sp.negative_count(), (dim - k) / 2);
    }
    const Spectrum c = spectrum_of(plan_product(ps, family));
    EXPECT_EQ(c.negative_count(), dim - k);
    EXPECT_EQ(c.zero_count(), k);
    EXPECT_EQ(c.positive_count(), 0u);
  }
}

TEST(Definiteness, PlanProductClasses) {
  for (std::size_t m : {2u, 3u, 4u}) {
    const auto family = canonical_family(PartySpec::uniform(3, m));
    const auto c = plan_product(build_proof_set(PartySpec::uniform(3, m)), family);
    EXPECT_EQ(classify_definiteness(c), m % 2 ? Definiteness::NegativeSemidefinite : Definiteness::NegativeDefinite);
  }
  const auto c3 = plan_product(build_proof_set(PartySpec::uniform(3, 3)), canonical_family(PartySpec::uniform(3, 3)));
  const Spectrum s = spectrum_of(c3);
  EXPECT_EQ(s.multiplicity(R(-1)), 8u);
  EXPECT_EQ(s.zero_count(), 19u);
}

TEST(Definiteness, FourLevelProductDenseOracle) {
  const auto family = canonical_family(PartySpec::uniform(3, 4));
  DenseMatrix c = DenseMatrix::Identity(64, 64);
  for (const char* w : {"ABB", "BAB", "BBA", "AAA"}) c = mat_multiply(c, realize_dense(TensorWord::parse(w), family));
  ASSERT_TRUE(is_diagonal(c));
  for (Eigen::Index i = 0; i < 64; ++i) EXPECT_LT(c(i, i), 0);
}

TEST(Definiteness, SyntheticSpectra) {
  auto make = [](std::initializer_list<std::pair<long long, std::size_t>> xs) {
    Spectrum s;
    for (auto [v, k] : xs) s.entries[R(v)] = k;
    return s;
  };
  EXPECT_EQ(classify_definiteness(make({{1, 2}})), Definiteness::PositiveDefinite);
  EXPECT_EQ(classify_definiteness(make({{0, 1}, {1, 2}})), Definiteness::PositiveSemidefinite);
  EXPECT_EQ(classify_definiteness(make({{-1, 1}, {1, 2}})), Definiteness::Indefinite);
  EXPECT_EQ(classify_definiteness(make({{-3, 1}})), Definiteness::NegativeDefinite);
  EXPECT_EQ(classify_definiteness(make({{-3, 1}, {0, 4}})), Definiteness::NegativeSemidefinite);
}

TEST(Orbits, PartitionTheIndexSet) {
  const auto family = canonical_family(PartySpec::uniform(3, 3));
  const auto words = realize_all(build_proof_set(PartySpec::uniform(3, 3)), family);
  const auto orbits = orbit_decomposition(words).orbits;
  std::vector<int> seen(27, 0);
  for (const auto& o : orbits)
    for (std::size_t i : o) seen[i]++;
  for (int c : seen) EXPECT_EQ(c, 1);
}

void check_eigenbasis(std::size_t n, std::size_t m) {
  const PartySpec parties = PartySpec::uniform(n, m);
  const auto family = canonical_family(parties);
  const ProofSet ps = build_proof_set(parties);
  const auto words = realize_all(ps, family);
  const auto basis = simultaneous_eigenbasis(ps, family);
  const std::size_t dim = parties.dim();
  ASSERT_EQ(basis.size(), dim);

  // Completeness: the vectors span the full space (dense rank oracle).
  DenseMatrix stacked(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  for (std::size_t k = 0; k < dim; ++k) stacked.row(static_cast<Eigen::Index>(k)) = basis[k].state.to_dense(dim).transpose();
  EXPECT_EQ(static_cast<std::size_t>(row_basis(stacked).rows()), dim);

  for (std::size_t k = 0; k < dim; ++k) {
    const auto& ev = basis[k];
    const Vector v = ev.state.to_dense(dim);
    ASSERT_EQ(ev.eigen_tuple.size(), words.size());
    for (std::size_t w = 0; w < words.size(); ++w) EXPECT_EQ(apply(words[w], v), Vector(ev.eigen_tuple[w] * v));
    EXPECT_EQ(ev.state.norm_sq, dot(ev.state, ev.state));
    for (const auto& c : ev.state.coefficients) EXPECT_FALSE(is_zero(c));
    for (std::size_t j = k + 1; j < dim; ++j) EXPECT_TRUE(is_zero(dot(ev.state, basis[j].state)));
  }
}

TEST(Eigenbasis, QubitsComplete) { check_eigenbasis(3, 2); }
TEST(Eigenbasis, QutritsComplete) { check_eigenbasis(3, 3); }
TEST(Eigenbasis, FourLevelComplete) { check_eigenbasis(3, 4); }
TEST(Eigenbasis, FourPartyEvenConstruction) { check_eigenbasis(4, 2); }

TEST(Eigenbasis, QutritEligibleCount) {
  const auto family = canonical_family(PartySpec::uniform(3, 3));
  const ProofSet ps = build_proof_set(PartySpec::uniform(3, 3));
  std::size_t nonzero = 0;
  for (const auto& ev : simultaneous_eigenbasis(ps, family)) {
    bool all = true;
    for (const auto& x : ev.eigen_tuple) all &= !is_zero(x);
    if (!all) continue;
    ++nonzero;
    EXPECT_EQ(plan_value(ev.eigen_tuple, ps.plan), R(-1));
  }
  EXPECT_EQ(nonzero, 8u);
}

TEST(Eigenbasis, EvenLevelsAllEligible) {
  for (std::size_t m : {2u, 4u}) {
    const auto family = canonical_family(PartySpec::uniform(3, m));
    const ProofSet ps = build_proof_set(PartySpec::uniform(3, m));
    for (const auto& ev : simultaneous_eigenbasis(ps, family)) EXPECT_TRUE(eligible_tuple(ev.eigen_tuple, ps.plan));
  }
}

TEST(Eigenbasis, DiagonalWordGivesStandardBasis) {
  const auto family = canonical_family(PartySpec::uniform(3, 2));
  const auto basis = simultaneous_eigenbasis(std::vector{realize(TensorWord::parse("AAA"), family)});
  ASSERT_EQ(basis.size(), 8u);
  for (std::size_t k = 0; k < 8; ++k) {
    EXPECT_EQ(basis[k].state.support, (std::vector<std::size_t>{k}));
    EXPECT_EQ(basis[k].state.coefficients, (std::vector<Rational>{R(1)}));
  }
}

TEST(Eigenbasis, NonCommutingSetRejected) {
  const auto family = canonical_family(PartySpec::uniform(3, 3));
  EXPECT_THROW(simultaneous_eigenbasis(std::vector{realize(TensorWord::parse("ABB"), family),
                                                   realize(TensorWord::parse("BBB"), family)}),
               ContractError);
}

TEST(SelectGhz, QutritState) {
  const auto family = canonical_family(PartySpec::uniform(3, 3));
  const ProofSet ps = build_proof_set(PartySpec::uniform(3, 3));
  for (const auto& hint : {std::optional<std::vector<Rational>>{}, std::optional{std::vector{R(1), R(1), R(1), R(-1)}}}) {
    const GhzState g = select_ghz(ps, family, hint);
    EXPECT_EQ(g.state.support, (std::vector<std::size_t>{2, 6, 18, 26}));
    EXPECT_EQ(g.state.coefficients, (std::vector<Rational>{R(1), R(1), R(1), R(-1)}));
    EXPECT_EQ(g.state.norm_sq, R(4));
    EXPECT_EQ(g.eigen_tuple, (std::vector<Rational>{R(1), R(1), R(1), R(-1)}));
  }
}

TEST(SelectGhz, QubitAnalogue) {
  const auto family = canonical_family(PartySpec::uniform(3, 2));
  const ProofSet ps = build_proof_set(PartySpec::uniform(3, 2));
  const GhzState g = select_ghz(ps, family, std::vector{R(1, 8), R(1, 8), R(1, 8), R(-1, 8)});
  EXPECT_EQ(g.state.support, (std::vector<std::size_t>{1, 2, 4, 7}));
  EXPECT_EQ(g.state.coefficients, (std::vector<Rational>{R(1), R(1), R(1), R(-1)}));
  EXPECT_EQ(g.state.norm_sq, R(4));
}

TEST(SelectGhz, PositivePlanHintRejected) {
  const auto family = canonical_family(PartySpec::uniform(3, 3));
  const ProofSet ps = build_proof_set(PartySpec::uniform(3, 3));
  EXPECT_THROW(select_ghz(ps, family, std::vector{R(1), R(1), R(1), R(1)}), NoGhzStateError);
  EXPECT_THROW(select_ghz(ps, family, std::vector{R(1), R(1), R(1)}), NoGhzStateError);
}

TEST(SelectGhz, CustomFamilyWithoutEligibleState) {
  // Word AAA with only positive weights at party 1 still anticommutes, but a
  // one-word plan has positive sign for every tuple of the form w*w.
  const auto family = canonical_family(PartySpec::uniform(3, 2));
  ProofSet ps{PartySpec::uniform(3, 2), {TensorWord::parse("ABB")}, {0, 0}};
  EXPECT_THROW(select_ghz(ps, family), NoGhzStateError);
}

TEST(SelectGhz, ResultSatisfiesEquationsAcrossShapes) {
  for (const auto& levels : std::vector<std::vector<std::size_t>>{{2, 2, 2}, {4, 4, 4}, {3, 5, 3}, {3, 3, 3, 3}}) {
    const PartySpec parties = PartySpec::make(levels);
    const auto family = canonical_family(parties);
    const ProofSet ps = build_proof_set(parties);
    const GhzState g = select_ghz(ps, family);
    EXPECT_TRUE(eligible_tuple(g.eigen_tuple, ps.plan));
    const Vector v = g.state.to_dense(parties.dim());
    const auto words = realize_all(ps, family);
    for (std::size_t w = 0; w < words.size(); ++w) EXPECT_EQ(apply(words[w], v), Vector(g.eigen_tuple[w] * v));
  }
}

}  // namespace
}  // namespace ghz
