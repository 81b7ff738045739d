#pragma once

#include <cstddef>
#include <vector>

#include <boost/multiprecision/eigen.hpp>
#include <Eigen/Core>
#include <unsupported/Eigen/KroneckerProduct>

#include "ghz/errors.hpp"
#include "ghz/rational.hpp"

namespace ghz {

template <typename Scalar>
using Dense = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

template <typename Scalar>
using Column = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using DenseMatrix = Dense<Rational>;
using Vector = Column<Rational>;

template <typename Scalar>
bool is_zero_scalar(const Scalar& x) {
  return x == Scalar(0);
}

/// Exact product a * b. Rows of `a` are scanned for nonzero entries and the
/// matching rows of `b` accumulated, which keeps structured (sparse-in-dense)
/// operators cheap without assuming any structure.
template <typename Scalar>
Dense<Scalar> mat_multiply(const Dense<Scalar>& a, const Dense<Scalar>& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("mat_multiply: " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                     " times " + std::to_string(b.rows()) + "x" + std::to_string(b.cols()));
  }
  Dense<Scalar> out = Dense<Scalar>::Zero(a.rows(), b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index k = 0; k < a.cols(); ++k) {
      const Scalar& aik = a(i, k);
      if (is_zero_scalar(aik)) continue;
      out.row(i) += aik * b.row(k);
    }
  }
  return out;
}

/// Kronecker product; composite index j = j_a * b.rows() + j_b, so the left
/// factor is the most significant digit.
template <typename Scalar>
Dense<Scalar> mat_tensor(const Dense<Scalar>& a, const Dense<Scalar>& b) {
  return Eigen::kroneckerProduct(a, b).eval();
}

template <typename Scalar>
Dense<Scalar> mat_tensor(const std::vector<Dense<Scalar>>& factors) {
  if (factors.empty()) return Dense<Scalar>::Identity(1, 1);
  Dense<Scalar> out = factors.front();
  for (std::size_t i = 1; i < factors.size(); ++i) out = mat_tensor(out, factors[i]);
  return out;
}

template <typename Scalar>
bool is_diagonal(const Dense<Scalar>& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j)
      if (i != j && !is_zero_scalar(m(i, j))) return false;
  return true;
}

// Reduced row echelon form of the rows of `m`, zero rows dropped. Two
// matrices span the same row space iff their RREFs are equal.
template <typename Scalar>
Dense<Scalar> row_basis(Dense<Scalar> m) {
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < m.cols() && rank < m.rows(); ++col) {
    Eigen::Index pivot = rank;
    while (pivot < m.rows() && is_zero_scalar(m(pivot, col))) ++pivot;
    if (pivot == m.rows()) continue;
    m.row(pivot).swap(m.row(rank));
    const Scalar inv = Scalar(1) / m(rank, col);
    m.row(rank) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == rank || is_zero_scalar(m(r, col))) continue;
      const Scalar f = m(r, col);
      m.row(r) -= f * m.row(rank);
    }
    ++rank;
  }
  return m.topRows(rank).eval();
}

}  // namespace ghz
