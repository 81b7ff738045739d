#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ghz/dense.hpp"
#include "ghz/errors.hpp"

namespace ghz {

/// Square matrix with exactly one (possibly zero) entry per row: row i holds
/// `weight(i)` in column `target(i)`. Invariants: `target` is an involution
/// and `weight(i) == weight(target(i))`, so the matrix is symmetric and
/// M * M is diagonal with entries weight(i)^2.
///
/// Equality is operator equality: targets only matter where the weight is
/// nonzero.
template <typename Scalar = Rational>
class MonomialMatrix {
 public:
  MonomialMatrix() = default;

  static std::optional<MonomialMatrix> try_make(std::vector<std::size_t> target,
                                                std::vector<Scalar> weight) {
    if (target.size() != weight.size()) return std::nullopt;
    const std::size_t n = target.size();
    for (std::size_t j = 0; j < n; ++j) {
      if (target[j] >= n) return std::nullopt;
      if (target[target[j]] != j) return std::nullopt;
      if (weight[j] != weight[target[j]]) return std::nullopt;
    }
    MonomialMatrix m;
    m.target_ = std::move(target);
    m.weight_ = std::move(weight);
    return m;
  }

  static MonomialMatrix make(std::vector<std::size_t> target, std::vector<Scalar> weight) {
    auto m = try_make(std::move(target), std::move(weight));
    if (!m) throw ContractError("MonomialMatrix: target must be an involution with symmetric weights");
    return *std::move(m);
  }

  static MonomialMatrix identity(std::size_t dim) {
    std::vector<std::size_t> t(dim);
    for (std::size_t j = 0; j < dim; ++j) t[j] = j;
    return make(std::move(t), std::vector<Scalar>(dim, Scalar(1)));
  }

  static MonomialMatrix diagonal(std::vector<Scalar> weight) {
    std::vector<std::size_t> t(weight.size());
    for (std::size_t j = 0; j < t.size(); ++j) t[j] = j;
    return make(std::move(t), std::move(weight));
  }

  std::size_t dim() const { return target_.size(); }
  std::size_t target(std::size_t j) const { return target_[j]; }
  const Scalar& weight(std::size_t j) const { return weight_[j]; }
  const std::vector<std::size_t>& targets() const { return target_; }
  const std::vector<Scalar>& weights() const { return weight_; }

  bool is_diagonal() const {
    for (std::size_t j = 0; j < dim(); ++j)
      if (target_[j] != j && !is_zero_scalar(weight_[j])) return false;
    return true;
  }

  friend bool operator==(const MonomialMatrix& a, const MonomialMatrix& b) {
    if (a.dim() != b.dim()) return false;
    for (std::size_t j = 0; j < a.dim(); ++j) {
      if (a.weight_[j] != b.weight_[j]) return false;
      if (!is_zero_scalar(a.weight_[j]) && a.target_[j] != b.target_[j]) return false;
    }
    return true;
  }

 private:
  std::vector<std::size_t> target_;
  std::vector<Scalar> weight_;
};

template <typename Scalar>
Dense<Scalar> densify(const MonomialMatrix<Scalar>& m) {
  const auto n = static_cast<Eigen::Index>(m.dim());
  Dense<Scalar> d = Dense<Scalar>::Zero(n, n);
  for (std::size_t j = 0; j < m.dim(); ++j) d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(m.target(j))) = m.weight(j);
  return d;
}

/// Re-sparsify a dense matrix. Returns nullopt unless the matrix is square,
/// has at most one nonzero per row, and the nonzeros form a symmetric
/// involutive pattern. Zero rows become weight-0 fixed points.
template <typename Scalar>
std::optional<MonomialMatrix<Scalar>> sparsify(const Dense<Scalar>& d) {
  if (d.rows() != d.cols()) return std::nullopt;
  const auto n = static_cast<std::size_t>(d.rows());
  std::vector<std::size_t> target(n);
  std::vector<Scalar> weight(n, Scalar(0));
  for (std::size_t i = 0; i < n; ++i) {
    target[i] = i;
    bool seen = false;
    for (std::size_t j = 0; j < n; ++j) {
      const Scalar& x = d(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
      if (is_zero_scalar(x)) continue;
      if (seen) return std::nullopt;
      seen = true;
      target[i] = j;
      weight[i] = x;
    }
  }
  return MonomialMatrix<Scalar>::try_make(std::move(target), std::move(weight));
}

/// (M v)_i = weight(i) * v_{target(i)}.
template <typename Scalar>
Column<Scalar> apply(const MonomialMatrix<Scalar>& m, const Column<Scalar>& v) {
  if (static_cast<std::size_t>(v.size()) != m.dim()) throw ShapeError("apply: vector length mismatch");
  Column<Scalar> out(v.size());
  for (std::size_t i = 0; i < m.dim(); ++i)
    out(static_cast<Eigen::Index>(i)) = m.weight(i) * v(static_cast<Eigen::Index>(m.target(i)));
  return out;
}

/// Kronecker product of monomial factors, left factor most significant.
template <typename Scalar>
MonomialMatrix<Scalar> monomial_tensor(const MonomialMatrix<Scalar>& a, const MonomialMatrix<Scalar>& b) {
  const std::size_t db = b.dim();
  const std::size_t n = a.dim() * db;
  std::vector<std::size_t> target(n);
  std::vector<Scalar> weight(n);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t k = 0; k < db; ++k) {
      target[i * db + k] = a.target(i) * db + b.target(k);
      weight[i * db + k] = a.weight(i) * b.weight(k);
    }
  }
  return MonomialMatrix<Scalar>::make(std::move(target), std::move(weight));
}

template <typename Scalar>
MonomialMatrix<Scalar> monomial_tensor(const std::vector<MonomialMatrix<Scalar>>& factors) {
  if (factors.empty()) return MonomialMatrix<Scalar>::identity(1);
  MonomialMatrix<Scalar> out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = monomial_tensor(out, factors[i]);
  return out;
}

namespace detail {

// Unconstrained generalized permutation matrix; closed under products.
template <typename Scalar>
struct RawMonomial {
  std::vector<std::size_t> target;
  std::vector<Scalar> weight;

  explicit RawMonomial(const MonomialMatrix<Scalar>& m) : target(m.targets()), weight(m.weights()) {}

  // this := this * rhs
  void right_multiply(const MonomialMatrix<Scalar>& rhs) {
    for (std::size_t i = 0; i < target.size(); ++i) {
      const std::size_t mid = target[i];
      weight[i] = weight[i] * rhs.weight(mid);
      target[i] = rhs.target(mid);
    }
  }

  Dense<Scalar> densify() const {
    const auto n = static_cast<Eigen::Index>(target.size());
    Dense<Scalar> d = Dense<Scalar>::Zero(n, n);
    for (std::size_t j = 0; j < target.size(); ++j)
      d(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(target[j])) = weight[j];
    return d;
  }

  bool same_operator(const RawMonomial& o) const {
    if (target.size() != o.target.size()) return false;
    for (std::size_t j = 0; j < target.size(); ++j) {
      if (weight[j] != o.weight[j]) return false;
      if (!is_zero_scalar(weight[j]) && target[j] != o.target[j]) return false;
    }
    return true;
  }

  std::optional<MonomialMatrix<Scalar>> to_monomial() const {
    if (auto m = MonomialMatrix<Scalar>::try_make(target, weight)) return m;
    std::vector<std::size_t> t = target;
    for (std::size_t j = 0; j < t.size(); ++j)
      if (is_zero_scalar(weight[j])) t[j] = j;
    return MonomialMatrix<Scalar>::try_make(std::move(t), weight);
  }
};

}  // namespace detail

template <typename Scalar>
using ComposeResult = std::variant<MonomialMatrix<Scalar>, Dense<Scalar>>;

/// Left-to-right product of the given operators. The result stays a
/// MonomialMatrix when it still satisfies the involution/symmetric-weight
/// invariants; otherwise it is returned densified.
template <typename Scalar>
ComposeResult<Scalar> monomial_compose(const std::vector<MonomialMatrix<Scalar>>& words) {
  if (words.empty()) throw ShapeError("monomial_compose: empty product");
  const std::size_t n = words.front().dim();
  detail::RawMonomial<Scalar> acc(words.front());
  for (std::size_t i = 1; i < words.size(); ++i) {
    if (words[i].dim() != n) throw ShapeError("monomial_compose: dimension mismatch");
    acc.right_multiply(words[i]);
  }
  if (auto m = acc.to_monomial()) return *std::move(m);
  return acc.densify();
}

template <typename Scalar>
bool operators_commute(const MonomialMatrix<Scalar>& a, const MonomialMatrix<Scalar>& b) {
  if (a.dim() != b.dim()) throw ShapeError("operators_commute: dimension mismatch");
  detail::RawMonomial<Scalar> ab(a);
  ab.right_multiply(b);
  detail::RawMonomial<Scalar> ba(b);
  ba.right_multiply(a);
  return ab.same_operator(ba);
}

}  // namespace ghz
