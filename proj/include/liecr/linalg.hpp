#ifndef LIECR_LINALG_HPP
#define LIECR_LINALG_HPP

// Rank-revealing helpers shared by every module. All rank decisions go
// through singular values with a threshold relative to the largest one.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "liecr/tolerance.hpp"

namespace liecr::linalg {

/// Stacks real and imaginary parts: C^n -> R^(2n).
inline Eigen::MatrixXd realify(const Eigen::MatrixXcd& m) {
  Eigen::MatrixXd out(2 * m.rows(), m.cols());
  out.topRows(m.rows()) = m.real();
  out.bottomRows(m.rows()) = m.imag();
  return out;
}

inline Eigen::VectorXd realify(const Eigen::VectorXcd& v) {
  Eigen::VectorXd out(2 * v.size());
  out.head(v.size()) = v.real();
  out.tail(v.size()) = v.imag();
  return out;
}

inline Eigen::MatrixXcd decomplexify(const Eigen::MatrixXd& m) {
  const Eigen::Index n = m.rows() / 2;
  Eigen::MatrixXcd out(n, m.cols());
  out.real() = m.topRows(n);
  out.imag() = m.bottomRows(n);
  return out;
}

template <typename Matrix>
Eigen::VectorXd singular_values(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return Eigen::VectorXd(0);
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

/// Number of singular values above tol * sigma_max (0 for an empty or zero matrix).
inline int rank_from_singular_values(const Eigen::VectorXd& sv, double tol, double scale = -1.0) {
  if (sv.size() == 0) return 0;
  const double ref = scale > 0.0 ? scale : sv(0);
  if (ref <= 0.0) return 0;
  int r = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i) {
    if (sv(i) > tol * ref) ++r;
  }
  return r;
}

template <typename Matrix>
int rank(const Matrix& m, double tol = tolerance()) {
  return rank_from_singular_values(singular_values(m), tol);
}

/// Orthonormal basis of the column span.
template <typename Matrix>
Matrix orthonormal_columns(const Matrix& m, double tol = tolerance()) {
  if (m.rows() == 0 || m.cols() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeThinU);
  const int r = rank_from_singular_values(svd.singularValues(), tol);
  return svd.matrixU().leftCols(r);
}

/// Orthonormal basis of the right null space.
template <typename Matrix>
Matrix nullspace(const Matrix& m, double tol = tolerance()) {
  if (m.cols() == 0) return Matrix(0, 0);
  if (m.rows() == 0) return Matrix::Identity(m.cols(), m.cols());
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullV);
  const int r = rank_from_singular_values(svd.singularValues(), tol);
  return svd.matrixV().rightCols(m.cols() - r);
}

/// Reduced row echelon form of the rows of `rows`, used for canonical display.
template <typename Matrix>
Matrix rref(Matrix rows, double tol = 1e-9) {
  using std::abs;
  Eigen::Index lead = 0;
  Eigen::Index r = 0;
  for (; r < rows.rows() && lead < rows.cols(); ++lead) {
    Eigen::Index best = r;
    for (Eigen::Index i = r + 1; i < rows.rows(); ++i) {
      if (abs(rows(i, lead)) > abs(rows(best, lead))) best = i;
    }
    if (abs(rows(best, lead)) <= tol) continue;
    rows.row(r).swap(rows.row(best));
    rows.row(r) /= rows(r, lead);
    for (Eigen::Index i = 0; i < rows.rows(); ++i) {
      if (i != r) rows.row(i) -= rows(i, lead) * rows.row(r);
    }
    ++r;
  }
  return rows.topRows(r);
}

inline double snap(double x) {
  if (std::abs(x) < 1e-13) return 0.0;
  const double nearest = std::round(x);
  if (std::abs(x - nearest) < 1e-12) return nearest;
  return x;
}

}  // namespace liecr::linalg

#endif  // LIECR_LINALG_HPP
