#include "ghz/spectral.hpp"

#include <algorithm>
#include <numeric>
#include <string>

#include "ghz/errors.hpp"

namespace ghz {

std::size_t Spectrum::dim() const {
  std::size_t d = 0;
  for (const auto& [v, k] : entries) d += k;
  return d;
}

std::size_t Spectrum::multiplicity(const Rational& value) const {
  const auto it = entries.find(value);
  return it == entries.end() ? 0 : it->second;
}

std::size_t Spectrum::negative_count() const {
  std::size_t c = 0;
  for (const auto& [v, k] : entries)
    if (v.sign() < 0) c += k;
  return c;
}

std::size_t Spectrum::positive_count() const {
  std::size_t c = 0;
  for (const auto& [v, k] : entries)
    if (v.sign() > 0) c += k;
  return c;
}

std::vector<Rational> Spectrum::distinct_values() const {
  std::vector<Rational> out;
  for (const auto& [v, k] : entries) out.push_back(v);
  return out;
}

Spectrum spectrum_of(const MonomialMatrix<Rational>& m) {
  Spectrum s;
  for (std::size_t j = 0; j < m.dim(); ++j) {
    const std::size_t t = m.target(j);
    if (t == j) {
      ++s.entries[m.weight(j)];
    } else if (j < t) {
      ++s.entries[m.weight(j)];
      ++s.entries[Rational(-m.weight(j))];
    }
  }
  return s;
}

Spectrum spectrum_of(const SiteOperator& op) { return spectrum_of(to_monomial(op)); }

Spectrum spectrum_of_word(const TensorWord& w, const SiteFamily& family) { return spectrum_of(realize(w, family)); }

const char* to_string(Definiteness d) {
  switch (d) {
    case Definiteness::NegativeDefinite: return "negative-definite";
    case Definiteness::PositiveDefinite: return "positive-definite";
    case Definiteness::NegativeSemidefinite: return "negative-semidefinite";
    case Definiteness::PositiveSemidefinite: return "positive-semidefinite";
    case Definiteness::Indefinite: return "indefinite";
  }
  return "indefinite";
}

Definiteness classify_definiteness(const Spectrum& s) {
  const std::size_t neg = s.negative_count();
  const std::size_t pos = s.positive_count();
  const std::size_t zero = s.zero_count();
  if (neg > 0 && pos > 0) return Definiteness::Indefinite;
  if (neg > 0) return zero == 0 ? Definiteness::NegativeDefinite : Definiteness::NegativeSemidefinite;
  if (pos > 0 && zero == 0) return Definiteness::PositiveDefinite;
  return Definiteness::PositiveSemidefinite;
}

Definiteness classify_definiteness(const MonomialMatrix<Rational>& m) { return classify_definiteness(spectrum_of(m)); }

MonomialMatrix<Rational> plan_product(const ProofSet& ps, const SiteFamily& family) {
  const auto realized = realize_all(ps, family);
  std::vector<MonomialMatrix<Rational>> factors;
  if (ps.plan.empty()) {
    factors = realized;
  } else {
    for (std::size_t i : ps.plan) factors.push_back(realized.at(i));
  }
  auto product = monomial_compose(factors);
  if (auto* m = std::get_if<MonomialMatrix<Rational>>(&product)) return *m;
  throw ContractError("plan product is not an involutive monomial operator");
}

OrbitDecomposition orbit_decomposition(const std::vector<MonomialMatrix<Rational>>& words) {
  if (words.empty()) throw ContractError("orbit decomposition of an empty word list");
  const std::size_t dim = words.front().dim();
  for (const auto& w : words)
    if (w.dim() != dim) throw ShapeError("orbit_decomposition: dimension mismatch");
  OrbitDecomposition out;
  std::vector<bool> seen(dim, false);
  for (std::size_t start = 0; start < dim; ++start) {
    if (seen[start]) continue;
    std::vector<std::size_t> orbit{start};
    seen[start] = true;
    for (std::size_t head = 0; head < orbit.size(); ++head) {
      for (const auto& w : words) {
        const std::size_t next = w.target(orbit[head]);
        if (!seen[next]) {
          seen[next] = true;
          orbit.push_back(next);
        }
      }
    }
    std::sort(orbit.begin(), orbit.end());
    out.orbits.push_back(std::move(orbit));
  }
  return out;
}

Vector StateVector::to_dense(std::size_t dim) const {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  for (std::size_t i = 0; i < support.size(); ++i) {
    if (support[i] >= dim) throw ShapeError("state support index out of range");
    v(static_cast<Eigen::Index>(support[i])) = coefficients[i];
  }
  return v;
}

Rational dot(const StateVector& a, const StateVector& b) {
  Rational acc = 0;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.support.size() && j < b.support.size()) {
    if (a.support[i] < b.support[j]) {
      ++i;
    } else if (b.support[j] < a.support[i]) {
      ++j;
    } else {
      acc += a.coefficients[i] * b.coefficients[j];
      ++i;
      ++j;
    }
  }
  return acc;
}

namespace {

struct Subspace {
  DenseMatrix basis;  // rows, RREF
  std::vector<Rational> tuple;
};

// Split one W-invariant subspace into eigenspaces of the local operator.
std::vector<Subspace> split(const Subspace& s, const DenseMatrix& w_local, const std::vector<Rational>& w_diag) {
  std::vector<Rational> mus;
  for (const auto& w : w_diag) mus.push_back(w * w);
  std::vector<Rational> levels = mus;
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  std::vector<Subspace> out;
  for (const Rational& mu : levels) {
    DenseMatrix block = s.basis;
    for (Eigen::Index c = 0; c < block.cols(); ++c)
      if (mus[static_cast<std::size_t>(c)] != mu) block.col(c).setZero();
    block = row_basis(block);
    if (block.rows() == 0) continue;

    if (is_zero(mu)) {
      Subspace piece{block, s.tuple};
      piece.tuple.push_back(Rational(0));
      out.push_back(std::move(piece));
      continue;
    }
    Rational r;
    for (std::size_t c = 0; c < mus.size(); ++c)
      if (mus[c] == mu) {
        r = abs(w_diag[c]);
        break;
      }
    const DenseMatrix image = mat_multiply(block, w_local) / r;
    for (int sign : {1, -1}) {
      DenseMatrix projected = block + Rational(sign) * image;
      projected = row_basis(projected);
      if (projected.rows() == 0) continue;
      Subspace piece{projected, s.tuple};
      piece.tuple.push_back(Rational(sign) * r);
      out.push_back(std::move(piece));
    }
  }
  return out;
}

// Coprime integer coefficients, first nonzero positive.
std::vector<Rational> primitive(const std::vector<Rational>& v) {
  Integer lcm_den = 1;
  for (const auto& x : v)
    if (!is_zero(x)) lcm_den = boost::multiprecision::lcm(lcm_den, Integer(denominator(x)));
  std::vector<Integer> ints;
  Integer g = 0;
  for (const auto& x : v) {
    Integer k = Integer(numerator(x)) * (lcm_den / Integer(denominator(x)));
    g = boost::multiprecision::gcd(g, k);
    ints.push_back(k);
  }
  std::vector<Rational> out;
  int sign = 0;
  for (const auto& k : ints) {
    if (sign == 0 && k != 0) sign = k > 0 ? 1 : -1;
    out.push_back(g == 0 ? Rational(0) : Rational(Integer(k / g) * sign));
  }
  return out;
}

std::vector<std::vector<Rational>> orthogonal_rows(const DenseMatrix& basis) {
  std::vector<Vector> done;
  for (Eigen::Index r = 0; r < basis.rows(); ++r) {
    Vector v = basis.row(r).transpose();
    for (const auto& u : done) v -= (v.dot(u) / u.dot(u)) * u;
    done.push_back(v);
  }
  std::vector<std::vector<Rational>> out;
  for (const auto& v : done) out.emplace_back(v.data(), v.data() + v.size());
  return out;
}

void require_commuting(const std::vector<MonomialMatrix<Rational>>& words) {
  for (std::size_t i = 0; i < words.size(); ++i)
    for (std::size_t j = i + 1; j < words.size(); ++j)
      if (!operators_commute(words[i], words[j]))
        throw ContractError("words " + std::to_string(i + 1) + " and " + std::to_string(j + 1) + " do not commute");
}

}  // namespace

std::vector<JointEigenvector> simultaneous_eigenbasis(const std::vector<MonomialMatrix<Rational>>& words) {
  require_commuting(words);
  const auto decomposition = orbit_decomposition(words);
  std::vector<JointEigenvector> out;
  for (const auto& orbit : decomposition.orbits) {
    const auto size = static_cast<Eigen::Index>(orbit.size());
    auto local = [&](std::size_t global) {
      return static_cast<Eigen::Index>(std::lower_bound(orbit.begin(), orbit.end(), global) - orbit.begin());
    };
    std::vector<Subspace> current{{DenseMatrix::Identity(size, size), {}}};
    for (const auto& w : words) {
      DenseMatrix w_local = DenseMatrix::Zero(size, size);
      std::vector<Rational> w_diag(orbit.size());
      for (std::size_t a = 0; a < orbit.size(); ++a) {
        w_diag[a] = w.weight(orbit[a]);
        w_local(static_cast<Eigen::Index>(a), local(w.target(orbit[a]))) = w_diag[a];
      }
      std::vector<Subspace> next;
      for (const auto& s : current)
        for (auto& piece : split(s, w_local, w_diag)) next.push_back(std::move(piece));
      current = std::move(next);
    }
    for (const auto& s : current) {
      for (const auto& row : orthogonal_rows(s.basis)) {
        JointEigenvector ev;
        ev.eigen_tuple = s.tuple;
        ev.state.norm_sq = 0;
        const auto coeffs = primitive(row);
        for (std::size_t a = 0; a < coeffs.size(); ++a) {
          if (is_zero(coeffs[a])) continue;
          ev.state.support.push_back(orbit[a]);
          ev.state.coefficients.push_back(coeffs[a]);
          ev.state.norm_sq += coeffs[a] * coeffs[a];
        }
        out.push_back(std::move(ev));
      }
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const JointEigenvector& a, const JointEigenvector& b) {
    return a.state.support.front() < b.state.support.front();
  });
  return out;
}

std::vector<JointEigenvector> simultaneous_eigenbasis(const ProofSet& ps, const SiteFamily& family) {
  return simultaneous_eigenbasis(realize_all(ps, family));
}

Rational plan_value(const std::vector<Rational>& tuple, const std::vector<std::size_t>& plan) {
  Rational p = 1;
  if (plan.empty()) {
    for (const auto& x : tuple) p *= x;
    return p;
  }
  for (std::size_t i : plan) p *= tuple.at(i);
  return p;
}

bool eligible_tuple(const std::vector<Rational>& tuple, const std::vector<std::size_t>& plan) {
  if (std::any_of(tuple.begin(), tuple.end(), [](const Rational& x) { return is_zero(x); })) return false;
  return plan_value(tuple, plan).sign() < 0;
}

GhzState select_ghz(const ProofSet& ps, const SiteFamily& family,
                    const std::optional<std::vector<Rational>>& tuple_hint) {
  if (tuple_hint) {
    if (tuple_hint->size() != ps.words.size())
      throw NoGhzStateError("tuple hint has " + std::to_string(tuple_hint->size()) + " entries for " +
                            std::to_string(ps.words.size()) + " words");
    if (!eligible_tuple(*tuple_hint, ps.plan))
      throw NoGhzStateError("tuple hint is not eligible (needs nonzero entries and a negative plan product)");
  }
  auto basis = simultaneous_eigenbasis(ps, family);
  JointEigenvector* best = nullptr;
  for (auto& ev : basis) {
    if (tuple_hint) {
      if (ev.eigen_tuple == *tuple_hint) return {std::move(ev.state), std::move(ev.eigen_tuple)};
      continue;
    }
    if (!eligible_tuple(ev.eigen_tuple, ps.plan)) continue;
    if (best == nullptr || ev.eigen_tuple > best->eigen_tuple) best = &ev;
  }
  if (best != nullptr) return {std::move(best->state), std::move(best->eigen_tuple)};
  throw NoGhzStateError(tuple_hint ? "no joint eigenvector with the requested eigenvalue tuple"
                                   : "no joint eigenvector with nonzero eigenvalues and negative plan product");
}

}  // namespace ghz
