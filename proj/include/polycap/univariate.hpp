#pragma once

#include <utility>
#include <vector>

#include "polycap/rational.hpp"

// Dense univariate polynomials, coefficients in increasing degree.
namespace polycap::univariate {

using RationalPoly = std::vector<Rational>;

/// Trailing zero coefficients removed; the zero polynomial is empty.
void trim(RationalPoly& p);

RationalPoly derivative(const RationalPoly& p);

/// Monic gcd over Q.
RationalPoly gcd(RationalPoly a, RationalPoly b);

/// Exact quotient a / b; b must divide a.
RationalPoly divide_exact(const RationalPoly& a, const RationalPoly& b);

/// Interpolating polynomial through (0, v_0), (1, v_1), ..., (d, v_d).
RationalPoly interpolate_integer_nodes(const std::vector<Rational>& values);

/// Yun's algorithm: p = c * prod_i f_i^{m_i} with squarefree, pairwise
/// coprime f_i. Returns the (f_i, m_i) pairs; constants are dropped.
std::vector<std::pair<RationalPoly, int>> squarefree_factorization(const RationalPoly& p);

/// Complex roots of a real polynomial via eigenvalues of its companion
/// matrix, polished by a few Newton steps.
std::vector<Complex> companion_roots(const std::vector<double>& coefficients);

/// Least-squares fit through Chebyshev nodes of [-scale, scale]; returns
/// coefficients in t (not in the scaled variable).
std::vector<double> fit_chebyshev_nodes(const std::vector<double>& nodes, const std::vector<double>& values,
                                        double scale);

/// Chebyshev nodes of the first kind on [-scale, scale].
std::vector<double> chebyshev_nodes(int count, double scale);

}  // namespace polycap::univariate
