#pragma once

#include <map>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "polycap/matrix.hpp"
#include "polycap/rational.hpp"

namespace polycap {

using Exponent = std::vector<int>;

/// Explicit homogeneous polynomial with strictly positive coefficients.
///
/// Coefficients are held exactly; a double mirror is kept for fast
/// floating-point evaluation. Zero coefficients are dropped, negative ones
/// and an empty (identically zero) term set are rejected.
class SparsePolynomial {
 public:
  using TermMap = std::map<Exponent, Rational>;

  SparsePolynomial(int n_vars, TermMap terms, ScalarMode mode = ScalarMode::exact);

  /// Builds from an explicit term list; duplicate exponents are rejected.
  static SparsePolynomial from_terms(int n_vars, const std::vector<std::pair<Exponent, Rational>>& terms,
                                     ScalarMode mode = ScalarMode::exact);

  int n_vars() const { return n_vars_; }
  int degree() const { return degree_; }
  ScalarMode mode() const { return mode_; }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  /// Zero when the monomial is absent.
  Rational coefficient(const Exponent& exponent) const;

  double evaluate(std::span<const double> x) const;
  Complex evaluate(std::span<const Complex> x) const;
  Rational evaluate(std::span<const Rational> x) const;

  /// Parallel arrays used by the analytic log-derivative code.
  const std::vector<Exponent>& exponents() const { return exponents_; }
  const std::vector<double>& real_coefficients() const { return real_coefficients_; }

 private:
  int n_vars_;
  int degree_ = 0;
  ScalarMode mode_;
  TermMap terms_;
  std::vector<Exponent> exponents_;
  std::vector<double> real_coefficients_;
};

/// p_A(x) = prod_i (A x)_i for a square nonnegative matrix without zero rows.
class ProductFormPolynomial {
 public:
  explicit ProductFormPolynomial(RationalMatrix matrix, ScalarMode mode = ScalarMode::exact);
  explicit ProductFormPolynomial(const RealMatrix& matrix);

  int n_vars() const { return static_cast<int>(matrix_.cols()); }
  int degree() const { return static_cast<int>(matrix_.rows()); }
  ScalarMode mode() const { return mode_; }
  const RationalMatrix& matrix() const { return matrix_; }
  const RealMatrix& real_matrix() const { return real_matrix_; }

  double evaluate(std::span<const double> x) const;
  Complex evaluate(std::span<const Complex> x) const;
  Rational evaluate(std::span<const Rational> x) const;

 private:
  RationalMatrix matrix_;
  RealMatrix real_matrix_;
  ScalarMode mode_;
};

/// p(x) = det(sum_i x_i A_i) for real symmetric positive semidefinite A_i.
///
/// Evaluation uses LU factorization (floating) or fraction-exact
/// elimination (exact), never symbolic expansion.
class DeterminantalPolynomial {
 public:
  static constexpr double kSymmetryTolerance = 1e-12;
  static constexpr double kPsdTolerance = 1e-10;

  explicit DeterminantalPolynomial(std::vector<RationalMatrix> matrices, ScalarMode mode = ScalarMode::exact);
  explicit DeterminantalPolynomial(const std::vector<RealMatrix>& matrices);

  int n_vars() const { return static_cast<int>(matrices_.size()); }
  int degree() const { return static_cast<int>(matrices_.front().rows()); }
  ScalarMode mode() const { return mode_; }
  const std::vector<RationalMatrix>& matrices() const { return matrices_; }
  const std::vector<RealMatrix>& real_matrices() const { return real_matrices_; }

  double evaluate(std::span<const double> x) const;
  Complex evaluate(std::span<const Complex> x) const;
  Rational evaluate(std::span<const Rational> x) const;

 private:
  std::vector<RationalMatrix> matrices_;
  std::vector<RealMatrix> real_matrices_;
  ScalarMode mode_;
};

using Polynomial = std::variant<SparsePolynomial, ProductFormPolynomial, DeterminantalPolynomial>;

int n_vars(const Polynomial& p);
int degree(const Polynomial& p);
ScalarMode mode(const Polynomial& p);

/// Throws InputError when x.size() != n_vars(p).
double evaluate(const Polynomial& p, std::span<const double> x);
Complex evaluate(const Polynomial& p, std::span<const Complex> x);
Rational evaluate(const Polynomial& p, std::span<const Rational> x);

inline constexpr int kDefaultExpansionCap = 10;

/// Exact monomial expansion of an implicit polynomial. Throws ResourceError
/// when the dimension exceeds `cap`.
SparsePolynomial expand(const Polynomial& p, int cap = kDefaultExpansionCap);

/// r(x_2..x_n) = d/dx_1 q(0, x_2, ..., x_n): keeps the terms of q that are
/// linear in x_1 and deletes x_1. Requires n_vars >= 2 and degree == n_vars.
SparsePolynomial derivative_reduce(const SparsePolynomial& q);

/// Degree of p in variable i (0-based): max exponent (sparse), column
/// support size (product form), rank of A_i (determinantal).
int variable_degree(const Polynomial& p, int i);

}  // namespace polycap
