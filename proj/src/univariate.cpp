#include "polycap/univariate.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "polycap/errors.hpp"

namespace polycap::univariate {
namespace {

void make_monic(RationalPoly& p) {
  if (p.empty()) return;
  const Rational lead = p.back();
  for (auto& c : p) c /= lead;
}

RationalPoly remainder(RationalPoly a, const RationalPoly& b) {
  trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    const Rational factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= factor * b[k];
    a.pop_back();
    trim(a);
  }
  return a;
}

RationalPoly subtract(RationalPoly a, const RationalPoly& b) {
  if (a.size() < b.size()) a.resize(b.size(), Rational(0));
  for (std::size_t k = 0; k < b.size(); ++k) a[k] -= b[k];
  trim(a);
  return a;
}

Complex horner(const std::vector<double>& c, Complex z) {
  Complex v(0.0);
  for (std::size_t k = c.size(); k-- > 0;) v = v * z + c[k];
  return v;
}

}  // namespace

void trim(RationalPoly& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

RationalPoly derivative(const RationalPoly& p) {
  RationalPoly d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  trim(d);
  return d;
}

RationalPoly gcd(RationalPoly a, RationalPoly b) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    RationalPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  make_monic(a);
  return a;
}

RationalPoly divide_exact(const RationalPoly& a_in, const RationalPoly& b) {
  RationalPoly a = a_in;
  trim(a);
  if (b.empty()) throw std::domain_error("division by the zero polynomial");
  if (a.size() < b.size()) {
    if (!a.empty()) throw CheckFailure("polynomial division is not exact");
    return {};
  }
  RationalPoly q(a.size() - b.size() + 1, Rational(0));
  while (a.size() >= b.size() && !a.empty()) {
    const Rational factor = a.back() / b.back();
    const std::size_t shift = a.size() - b.size();
    q[shift] = factor;
    for (std::size_t k = 0; k < b.size(); ++k) a[shift + k] -= factor * b[k];
    a.pop_back();
    trim(a);
  }
  if (!a.empty()) throw CheckFailure("polynomial division is not exact");
  return q;
}

RationalPoly interpolate_integer_nodes(const std::vector<Rational>& values) {
  const std::size_t count = values.size();
  // Newton divided differences on nodes 0, 1, ..., d.
  std::vector<Rational> diff = values;
  for (std::size_t level = 1; level < count; ++level) {
    for (std::size_t i = count - 1; i >= level; --i) {
      diff[i] = (diff[i] - diff[i - 1]) / Rational(static_cast<long>(level));
    }
  }
  RationalPoly result{diff[count - 1]};
  for (std::size_t i = count - 1; i-- > 0;) {
    // result = result * (t - i) + diff[i]
    RationalPoly next(result.size() + 1, Rational(0));
    for (std::size_t k = 0; k < result.size(); ++k) {
      next[k + 1] += result[k];
      next[k] -= result[k] * Rational(static_cast<long>(i));
    }
    next[0] += diff[i];
    result = std::move(next);
  }
  trim(result);
  return result;
}

std::vector<std::pair<RationalPoly, int>> squarefree_factorization(const RationalPoly& p_in) {
  RationalPoly p = p_in;
  trim(p);
  std::vector<std::pair<RationalPoly, int>> factors;
  if (p.size() <= 1) return factors;
  RationalPoly dp = derivative(p);
  RationalPoly a = gcd(p, dp);
  RationalPoly b = divide_exact(p, a);
  RationalPoly c = divide_exact(dp, a);
  RationalPoly d = subtract(c, derivative(b));
  int multiplicity = 1;
  while (b.size() > 1) {
    RationalPoly f = gcd(b, d);
    if (f.size() > 1) factors.emplace_back(f, multiplicity);
    b = divide_exact(b, f);
    c = divide_exact(d, f);
    d = subtract(c, derivative(b));
    ++multiplicity;
  }
  return factors;
}

std::vector<Complex> companion_roots(const std::vector<double>& coefficients) {
  std::vector<double> c = coefficients;
  while (!c.empty() && c.back() == 0.0) c.pop_back();
  if (c.size() <= 1) return {};
  const int m = static_cast<int>(c.size()) - 1;
  const double lead = c.back();
  std::vector<Complex> roots;
  if (m == 1) {
    roots.emplace_back(-c[0] / lead, 0.0);
    return roots;
  }
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(m, m);
  for (int i = 1; i < m; ++i) companion(i, i - 1) = 1.0;
  for (int i = 0; i < m; ++i) companion(i, m - 1) = -c[i] / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, false);
  const auto eig = solver.eigenvalues();
  std::vector<double> dc(m);
  for (int k = 1; k <= m; ++k) dc[k - 1] = k * c[k];
  for (int i = 0; i < m; ++i) {
    Complex z = eig[i];
    for (int step = 0; step < 3; ++step) {
      const Complex f = horner(c, z);
      const Complex df = horner(dc, z);
      if (df == Complex(0.0)) break;
      const Complex next = z - f / df;
      if (std::abs(horner(c, next)) < std::abs(f)) {
        z = next;
      } else {
        break;
      }
    }
    roots.push_back(z);
  }
  return roots;
}

std::vector<double> chebyshev_nodes(int count, double scale) {
  std::vector<double> nodes(count);
  for (int k = 0; k < count; ++k) {
    nodes[k] = scale * std::cos(std::numbers::pi * (2.0 * k + 1.0) / (2.0 * count));
  }
  return nodes;
}

std::vector<double> fit_chebyshev_nodes(const std::vector<double>& nodes, const std::vector<double>& values,
                                        double scale) {
  const int count = static_cast<int>(nodes.size());
  Eigen::MatrixXd vandermonde(count, count);
  for (int i = 0; i < count; ++i) {
    double u = nodes[i] / scale;
    double power = 1.0;
    for (int k = 0; k < count; ++k) {
      vandermonde(i, k) = power;
      power *= u;
    }
  }
  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(values.data(), count);
  Eigen::VectorXd scaled = vandermonde.colPivHouseholderQr().solve(rhs);
  std::vector<double> coefficients(count);
  double factor = 1.0;
  for (int k = 0; k < count; ++k) {
    coefficients[k] = scaled[k] / factor;
    factor *= scale;
  }
  return coefficients;
}

}  // namespace polycap::univariate
