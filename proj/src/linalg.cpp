#include "polycap/linalg.hpp"

#include <cmath>

namespace polycap::linalg {

Eigen::MatrixXd to_eigen(const RealMatrix& m) {
  Eigen::MatrixXd e(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) e(i, j) = m(i, j);
  return e;
}

RealMatrix from_eigen(const Eigen::MatrixXd& e) {
  RealMatrix m(e.rows(), e.cols());
  for (Eigen::Index i = 0; i < e.rows(); ++i)
    for (Eigen::Index j = 0; j < e.cols(); ++j) m(i, j) = e(i, j);
  return m;
}

Rational determinant(RationalMatrix m) {
  const std::size_t n = m.rows();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m(pivot, col) == 0) ++pivot;
    if (pivot == n) return 0;
    if (pivot != col) {
      for (std::size_t j = col; j < n; ++j) std::swap(m(pivot, j), m(col, j));
      det = -det;
    }
    det *= m(col, col);
    for (std::size_t i = col + 1; i < n; ++i) {
      if (m(i, col) == 0) continue;
      Rational factor = m(i, col) / m(col, col);
      for (std::size_t j = col + 1; j < n; ++j) m(i, j) -= factor * m(col, j);
      m(i, col) = 0;
    }
  }
  return det;
}

double determinant(const Eigen::MatrixXd& m) {
  if (m.rows() == 0) return 1.0;
  return m.partialPivLu().determinant();
}

Complex determinant(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0) return Complex(1.0);
  return m.partialPivLu().determinant();
}

int rank(RationalMatrix m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t pivot = r;
    while (pivot < rows && m(pivot, col) == 0) ++pivot;
    if (pivot == rows) continue;
    for (std::size_t j = 0; j < cols; ++j) std::swap(m(pivot, j), m(r, j));
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (m(i, col) == 0) continue;
      Rational factor = m(i, col) / m(r, col);
      for (std::size_t j = col; j < cols; ++j) m(i, j) -= factor * m(r, j);
    }
    ++r;
  }
  return static_cast<int>(r);
}

double min_eigenvalue_symmetric(const Eigen::MatrixXd& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

int symmetric_rank(const Eigen::MatrixXd& m, double rel_tol) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m, Eigen::EigenvaluesOnly);
  const auto& eig = solver.eigenvalues();
  const double scale = eig.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0;
  int rank = 0;
  for (Eigen::Index i = 0; i < eig.size(); ++i) {
    if (std::abs(eig[i]) > rel_tol * scale) ++rank;
  }
  return rank;
}

}  // namespace polycap::linalg
