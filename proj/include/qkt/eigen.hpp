// Eigen glue for the exact scalar types: NumTraits so that Eigen dense
// matrices can carry them, plus the handful of exact linear-algebra routines
// (elimination, rank profile, inverse) that Eigen's floating-point
// decompositions cannot provide.

#pragma once

#include <Eigen/Core>

#include <vector>

#include "qkt/qlaurent.hpp"

namespace Eigen {

template <>
struct NumTraits<qkt::QLaurent> : GenericNumTraits<qkt::QLaurent> {
  typedef qkt::QLaurent Real;
  typedef qkt::QLaurent NonInteger;
  typedef qkt::QLaurent Nested;
  typedef qkt::QLaurent Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 40,
    MulCost = 80
  };
  static inline Real epsilon() { return qkt::QLaurent(); }
  static inline Real dummy_precision() { return qkt::QLaurent(); }
  static inline int digits10() { return 0; }
};

template <>
struct NumTraits<qkt::QFraction> : GenericNumTraits<qkt::QFraction> {
  typedef qkt::QFraction Real;
  typedef qkt::QFraction NonInteger;
  typedef qkt::QFraction Nested;
  typedef qkt::QFraction Literal;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 8,
    AddCost = 60,
    MulCost = 120
  };
  static inline Real epsilon() { return qkt::QFraction(); }
  static inline Real dummy_precision() { return qkt::QFraction(); }
  static inline int digits10() { return 0; }
};

}  // namespace Eigen

namespace qkt {

template <class Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using MatQ = MatrixX<QLaurent>;
using MatF = MatrixX<QFraction>;

template <class Derived>
bool isZeroMatrix(const Eigen::MatrixBase<Derived>& expr) {
  const auto m = expr.eval();
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (!m(i, j).isZero()) return false;
  return true;
}

/// Indices of the first maximal set of columns that is linearly independent,
/// scanning columns left to right (exact Gaussian elimination over a field).
template <class Scalar>
std::vector<int> columnRankProfile(MatrixX<Scalar> m) {
  std::vector<int> profile;
  const Eigen::Index rows = m.rows(), cols = m.cols();
  Eigen::Index rank = 0;
  std::vector<bool> rowUsed(rows, false);
  for (Eigen::Index j = 0; j < cols && rank < rows; ++j) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = 0; i < rows; ++i)
      if (!rowUsed[i] && !m(i, j).isZero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    profile.push_back(static_cast<int>(j));
    rowUsed[pivot] = true;
    ++rank;
    Scalar inv = Scalar(1) / m(pivot, j);
    for (Eigen::Index i = 0; i < rows; ++i) {
      if (i == pivot || m(i, j).isZero()) continue;
      Scalar f = m(i, j) * inv;
      for (Eigen::Index jj = j; jj < cols; ++jj) m(i, jj) -= f * m(pivot, jj);
    }
  }
  return profile;
}

/// Solve A X = B exactly over a field. Throws InternalError when A is
/// singular.
template <class Scalar>
MatrixX<Scalar> solveLinear(MatrixX<Scalar> a, MatrixX<Scalar> b) {
  const Eigen::Index n = a.rows();
  if (a.cols() != n || b.rows() != n)
    throw InternalError("solveLinear: shape mismatch");
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index pivot = -1;
    for (Eigen::Index i = col; i < n; ++i)
      if (!a(i, col).isZero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) throw InternalError("solveLinear: singular matrix");
    if (pivot != col) {
      a.row(pivot).swap(a.row(col));
      b.row(pivot).swap(b.row(col));
    }
    Scalar inv = Scalar(1) / a(col, col);
    for (Eigen::Index j = col; j < n; ++j) a(col, j) *= inv;
    b.row(col) *= inv;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == col || a(i, col).isZero()) continue;
      Scalar f = a(i, col);
      for (Eigen::Index j = col; j < n; ++j) a(i, j) -= f * a(col, j);
      b.row(i) -= f * b.row(col);
    }
  }
  return b;
}

template <class Scalar>
MatrixX<Scalar> inverseMatrix(const MatrixX<Scalar>& a) {
  MatrixX<Scalar> id = MatrixX<Scalar>::Identity(a.rows(), a.rows());
  return solveLinear<Scalar>(a, id);
}

template <class Scalar>
bool isInvertible(const MatrixX<Scalar>& a) {
  if (a.rows() != a.cols()) return false;
  if (a.rows() == 0) return true;
  return columnRankProfile<Scalar>(a).size() == static_cast<size_t>(a.rows());
}

inline MatF toFractionMatrix(const MatQ& m) {
  MatF r(m.rows(), m.cols());
  for (Eigen::Index j = 0; j < m.cols(); ++j)
    for (Eigen::Index i = 0; i < m.rows(); ++i) r(i, j) = QFraction(m(i, j));
  return r;
}

}  // namespace qkt
