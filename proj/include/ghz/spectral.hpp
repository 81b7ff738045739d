#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "ghz/monomial.hpp"
#include "ghz/words.hpp"

namespace ghz {

/// Exact eigenvalue multiset.
struct Spectrum {
  std::map<Rational, std::size_t> entries;

  std::size_t dim() const;
  std::size_t multiplicity(const Rational& value) const;
  std::size_t negative_count() const;
  std::size_t zero_count() const { return multiplicity(Rational(0)); }
  std::size_t positive_count() const;
  std::vector<Rational> distinct_values() const;

  friend bool operator==(const Spectrum&, const Spectrum&) = default;
};

/// Fixed points contribute their weight, 2-cycles {j, t(j)} contribute +w(j)
/// and -w(j).
Spectrum spectrum_of(const MonomialMatrix<Rational>& m);
Spectrum spectrum_of(const SiteOperator& op);
Spectrum spectrum_of_word(const TensorWord& w, const SiteFamily& family);

enum class Definiteness {
  NegativeDefinite,
  PositiveDefinite,
  NegativeSemidefinite,
  PositiveSemidefinite,
  Indefinite,
};

const char* to_string(Definiteness d);

// The zero operator counts as positive-semidefinite.
Definiteness classify_definiteness(const Spectrum& s);
Definiteness classify_definiteness(const MonomialMatrix<Rational>& m);

/// Operator product of the plan words, in plan order. Throws ContractError if
/// the product is not an involutive monomial (never the case for valid sets).
MonomialMatrix<Rational> plan_product(const ProofSet& ps, const SiteFamily& family);

/// Orbits of composite indices under the group generated by the words' index
/// involutions, each sorted, ordered by smallest member.
struct OrbitDecomposition {
  std::vector<std::vector<std::size_t>> orbits;
};

OrbitDecomposition orbit_decomposition(const std::vector<MonomialMatrix<Rational>>& words);

/// Sparse vector with integer-scaled coefficients; the unit vector is
/// coefficients / sqrt(norm_sq).
struct StateVector {
  std::vector<std::size_t> support;
  std::vector<Rational> coefficients;
  Rational norm_sq;

  Vector to_dense(std::size_t dim) const;
  friend bool operator==(const StateVector&, const StateVector&) = default;
};

Rational dot(const StateVector& a, const StateVector& b);

struct JointEigenvector {
  std::vector<Rational> eigen_tuple;
  StateVector state;
};

/// Complete orthogonal joint eigenbasis of mutually commuting words. Each
/// orbit subspace is refined word by word: for W with W^2 = diag(w^2), the
/// coordinate block where w^2 = mu splits into the images of (1 +- W/|w|).
/// Degenerate joint eigenspaces get an exact Gram-Schmidt basis. Output is
/// sorted by smallest support index; coefficients are coprime integers with
/// the first one positive. Throws ContractError if some pair fails to commute.
std::vector<JointEigenvector> simultaneous_eigenbasis(const std::vector<MonomialMatrix<Rational>>& words);
std::vector<JointEigenvector> simultaneous_eigenbasis(const ProofSet& ps, const SiteFamily& family);

struct GhzState {
  StateVector state;
  std::vector<Rational> eigen_tuple;
};

/// Every tuple entry nonzero and the plan product of the entries negative.
bool eligible_tuple(const std::vector<Rational>& tuple, const std::vector<std::size_t>& plan);

Rational plan_value(const std::vector<Rational>& tuple, const std::vector<std::size_t>& plan);

/// The first joint eigenvector (basis order) matching `tuple_hint`. Without a
/// hint: the eligible eigenvector with the lexicographically greatest tuple,
/// ties going to basis order. Throws NoGhzStateError if none qualifies.
GhzState select_ghz(const ProofSet& ps, const SiteFamily& family,
                    const std::optional<std::vector<Rational>>& tuple_hint = std::nullopt);

}  // namespace ghz
