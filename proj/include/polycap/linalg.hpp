#pragma once

#include <Eigen/Dense>

#include <vector>

#include "polycap/matrix.hpp"

namespace polycap::linalg {

Eigen::MatrixXd to_eigen(const RealMatrix& m);
RealMatrix from_eigen(const Eigen::MatrixXd& m);

/// Fraction-exact Gaussian elimination.
Rational determinant(RationalMatrix m);
double determinant(const Eigen::MatrixXd& m);
Complex determinant(const Eigen::MatrixXcd& m);

int rank(RationalMatrix m);

double min_eigenvalue_symmetric(const Eigen::MatrixXd& m);

/// Numerical rank of a symmetric matrix: eigenvalues above rel_tol * max|eig|.
int symmetric_rank(const Eigen::MatrixXd& m, double rel_tol = 1e-9);

}  // namespace polycap::linalg
