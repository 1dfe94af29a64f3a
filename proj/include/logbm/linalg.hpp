#pragma once

#include <type_traits>
#include <utility>
#include <vector>

#include "logbm/errors.hpp"
#include "logbm/scalar.hpp"

namespace logbm {

namespace detail {

// Row index of the pivot for column `col` among rows [row, rows). Exact
// scalars take the first nonzero entry; floating point takes the largest.
template <typename Scalar>
Eigen::Index pick_pivot(const MatrixX<Scalar>& m, Eigen::Index row, Eigen::Index col) {
  Eigen::Index best = -1;
  if constexpr (std::is_floating_point_v<Scalar>) {
    Scalar largest = 0;
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (std::abs(m(r, col)) > largest) {
        largest = std::abs(m(r, col));
        best = r;
      }
    }
  } else {
    for (Eigen::Index r = row; r < m.rows(); ++r) {
      if (m(r, col) != 0) return r;
    }
  }
  return best;
}

}  // namespace detail

/// Reduces `m` in place to row echelon form; returns the pivot columns.
template <typename Scalar>
std::vector<Eigen::Index> row_echelon(MatrixX<Scalar>& m, bool reduced = false) {
  std::vector<Eigen::Index> pivots;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    const Eigen::Index p = detail::pick_pivot(m, row, col);
    if (p < 0) continue;
    if (p != row) m.row(p).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    if (reduced) {
      m.row(row) *= inv;
      for (Eigen::Index r = 0; r < m.rows(); ++r) {
        if (r == row || m(r, col) == Scalar(0)) continue;
        const Scalar f = m(r, col);
        m.row(r) -= f * m.row(row);
      }
    } else {
      for (Eigen::Index r = row + 1; r < m.rows(); ++r) {
        if (m(r, col) == Scalar(0)) continue;
        const Scalar f = m(r, col) * inv;
        m.row(r) -= f * m.row(row);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename Scalar>
Scalar determinant(MatrixX<Scalar> m) {
  const Eigen::Index n = m.rows();
  Scalar det(1);
  for (Eigen::Index col = 0; col < n; ++col) {
    const Eigen::Index p = detail::pick_pivot(m, col, col);
    if (p < 0 || m(p, col) == Scalar(0)) return Scalar(0);
    if (p != col) {
      m.row(p).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    const Scalar inv = Scalar(1) / m(col, col);
    for (Eigen::Index r = col + 1; r < n; ++r) {
      if (m(r, col) == Scalar(0)) continue;
      const Scalar f = m(r, col) * inv;
      m.row(r).tail(n - col) -= f * m.row(col).tail(n - col);
    }
  }
  return det;
}

template <typename Scalar>
int rank(MatrixX<Scalar> m) {
  return static_cast<int>(row_echelon(m).size());
}

/// Solves the square system a x = b. Throws SingularMatrix.
template <typename Scalar>
VectorX<Scalar> solve(const MatrixX<Scalar>& a, const VectorX<Scalar>& b) {
  const Eigen::Index n = a.rows();
  MatrixX<Scalar> aug(n, n + 1);
  aug.leftCols(n) = a;
  aug.col(n) = b;
  const auto pivots = row_echelon(aug, true);
  if (static_cast<Eigen::Index>(pivots.size()) < n || pivots.back() >= n) {
    throw SingularMatrix("singular linear system");
  }
  return aug.col(n);
}

template <typename Scalar>
MatrixX<Scalar> inverse(const MatrixX<Scalar>& a) {
  const Eigen::Index n = a.rows();
  MatrixX<Scalar> aug(n, 2 * n);
  aug.leftCols(n) = a;
  aug.rightCols(n) = MatrixX<Scalar>::Identity(n, n);
  const auto pivots = row_echelon(aug, true);
  if (static_cast<Eigen::Index>(pivots.size()) < n || pivots[n - 1] >= n) {
    throw SingularMatrix("matrix is not invertible");
  }
  return aug.rightCols(n);
}

/// Vector c with det([rows; x]) = <c, x> for every x; `rows` is (n-1) x n.
Vec generalized_cross(const Mat& rows);

/// Basis of {x : rows * x = 0}.
std::vector<Vec> nullspace(const Mat& rows);

/// Positive multiple of v that is a primitive integer vector.
Vec primitive_direction(const Vec& v);

/// primitive_direction with the first nonzero coordinate made positive, so
/// that v and -v share one key.
Vec canonical_direction(const Vec& v);

Mat rows_to_matrix(const std::vector<Vec>& rows);

}  // namespace logbm
