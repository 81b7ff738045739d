#pragma once

#include <cstddef>
#include <vector>

#include "ghz/dense.hpp"
#include "ghz/monomial.hpp"
#include "ghz/rational.hpp"

namespace ghz {

enum class SiteKind { A, B };

/// One-party m x m operator. A-kind is diagonal (weights top to bottom);
/// B-kind is anti-diagonal, weights[j] sitting in row j, column m-1-j.
struct SiteOperator {
  std::size_t dim = 0;
  SiteKind kind = SiteKind::A;
  std::vector<Rational> weights;

  friend bool operator==(const SiteOperator&, const SiteOperator&) = default;
};

/// diag(s, s-1, ..., -s) with s = (m-1)/2. Throws InvalidLevelsError for m < 2.
SiteOperator build_A(std::size_t m);

/// Anti-diagonal with weights |s - j|; symmetric, and 0 in the centre for odd m.
SiteOperator build_B(std::size_t m);

/// Custom site operator; checks only the shape (length == dim, B weights symmetric).
SiteOperator make_site_operator(SiteKind kind, std::vector<Rational> weights);

MonomialMatrix<Rational> to_monomial(const SiteOperator& op);
DenseMatrix densify(const SiteOperator& op);

/// a*b == -b*a, decided on the dense matrices.
bool check_anticommute(const SiteOperator& a, const SiteOperator& b);

struct SitePair {
  SiteOperator a;
  SiteOperator b;

  std::size_t dim() const { return a.dim; }
  const SiteOperator& operator[](SiteKind k) const { return k == SiteKind::A ? a : b; }

  friend bool operator==(const SitePair&, const SitePair&) = default;
};

SitePair canonical_pair(std::size_t m);

/// Accepts a user pair iff a is A-kind, b is B-kind, dims agree and they
/// anticommute; throws ContractError otherwise.
SitePair make_site_pair(SiteOperator a, SiteOperator b);

bool is_canonical(const SitePair& p);

}  // namespace ghz
