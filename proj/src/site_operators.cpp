#include "ghz/site_operators.hpp"

#include <string>

#include "ghz/errors.hpp"

namespace ghz {

namespace {

void require_levels(std::size_t m) {
  if (m < 2) throw InvalidLevelsError("level count must be >= 2, got " + std::to_string(m));
}

Rational spin(std::size_t m) { return Rational(static_cast<long long>(m) - 1, 2); }

}  // namespace

SiteOperator build_A(std::size_t m) {
  require_levels(m);
  const Rational s = spin(m);
  std::vector<Rational> w;
  w.reserve(m);
  for (std::size_t j = 0; j < m; ++j) w.push_back(s - static_cast<long long>(j));
  return {m, SiteKind::A, std::move(w)};
}

SiteOperator build_B(std::size_t m) {
  require_levels(m);
  const Rational s = spin(m);
  std::vector<Rational> w;
  w.reserve(m);
  for (std::size_t j = 0; j < m; ++j) w.push_back(abs(s - static_cast<long long>(j)));
  return {m, SiteKind::B, std::move(w)};
}

SiteOperator make_site_operator(SiteKind kind, std::vector<Rational> weights) {
  const std::size_t m = weights.size();
  require_levels(m);
  if (kind == SiteKind::B) {
    for (std::size_t j = 0; j < m; ++j)
      if (weights[j] != weights[m - 1 - j])
        throw ContractError("B-kind weights must be symmetric (w[j] == w[m-1-j])");
  }
  return {m, kind, std::move(weights)};
}

MonomialMatrix<Rational> to_monomial(const SiteOperator& op) {
  std::vector<std::size_t> target(op.dim);
  for (std::size_t j = 0; j < op.dim; ++j) target[j] = op.kind == SiteKind::A ? j : op.dim - 1 - j;
  return MonomialMatrix<Rational>::make(std::move(target), op.weights);
}

DenseMatrix densify(const SiteOperator& op) {
  const auto m = static_cast<Eigen::Index>(op.dim);
  DenseMatrix d = DenseMatrix::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const Eigen::Index col = op.kind == SiteKind::A ? j : m - 1 - j;
    d(j, col) = op.weights[static_cast<std::size_t>(j)];
  }
  return d;
}

bool check_anticommute(const SiteOperator& a, const SiteOperator& b) {
  if (a.dim != b.dim) throw ShapeError("check_anticommute: dimension mismatch");
  const DenseMatrix da = densify(a);
  const DenseMatrix db = densify(b);
  return mat_multiply(da, db) == DenseMatrix(-mat_multiply(db, da));
}

SitePair canonical_pair(std::size_t m) { return {build_A(m), build_B(m)}; }

SitePair make_site_pair(SiteOperator a, SiteOperator b) {
  if (a.kind != SiteKind::A || b.kind != SiteKind::B)
    throw ContractError("site pair must be (A-kind, B-kind)");
  if (a.dim != b.dim) throw ContractError("site pair dimensions differ");
  b = make_site_operator(SiteKind::B, std::move(b.weights));
  if (!check_anticommute(a, b)) throw ContractError("site pair does not anticommute");
  return {std::move(a), std::move(b)};
}

bool is_canonical(const SitePair& p) { return p == canonical_pair(p.dim()); }

}  // namespace ghz
