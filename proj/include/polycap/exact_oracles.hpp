#pragma once

#include <vector>

#include "polycap/matrix.hpp"
#include "polycap/oracle.hpp"
#include "polycap/polynomial.hpp"

namespace polycap {

inline constexpr int kPermanentCapFloat = 20;
inline constexpr int kPermanentCapExact = 14;
inline constexpr int kPolarizationCapFloat = 22;
inline constexpr int kPolarizationCapExact = 14;
inline constexpr int kMixedDiscriminantCap = 12;
inline constexpr int kTaylorCap = 10;

/// Ryser inclusion-exclusion over Gray-code ordered column subsets.
double permanent_ryser(const RealMatrix& a);
Rational permanent_ryser(const RationalMatrix& a);

/// Mixed form M_p(v_1..v_n) = 2^-n sum_{b in {+-1}^n} p(sum_i b_i v_i) prod_i b_i.
/// Requires vectors.size() == p.degree() and each vector of length p.n_vars().
/// Scalar is double or Rational.
template <class Scalar>
Scalar mixed_form(const EvaluationOracle& p, const std::vector<std::vector<Scalar>>& vectors);

/// d^n p / dx_1..dx_n for a degree-n polynomial in n variables, i.e. the
/// mixed form of the canonical basis. This equals the coefficient of
/// x_1...x_n because the only exponent vector with all-odd entries summing
/// to n is (1,...,1).
template <class Scalar>
Scalar mixed_partial_polarization(const EvaluationOracle& p);

/// Coefficient of x_1...x_n: symbolic lookup for sparse input, exact
/// polarization otherwise.
Rational mixed_partial(const Polynomial& p);

/// d^n/dx_1..dx_n det(sum_i x_i A_i). Requires n matrices of size n x n.
template <class Scalar>
Scalar mixed_discriminant(const std::vector<Matrix<Scalar>>& matrices);

/// Coefficient of prod x_i^{r_i} recovered as M_q(X_r) / prod r_i!, where
/// X_r holds r_i copies of e_i. Throws CheckFailure when it disagrees with
/// the stored coefficient of q.
Rational taylor_mixed_form_coefficient(const SparsePolynomial& q, const Exponent& r);

}  // namespace polycap
