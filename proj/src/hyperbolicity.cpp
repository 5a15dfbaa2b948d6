#include "polycap/hyperbolicity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "polycap/errors.hpp"
#include "polycap/univariate.hpp"

namespace polycap {
namespace {

std::vector<double> to_doubles_normalized(const univariate::RationalPoly& f) {
  Rational max_abs = 0;
  for (const auto& c : f) max_abs = std::max(max_abs, Rational(abs(c)));
  std::vector<double> out;
  out.reserve(f.size());
  for (const auto& c : f) out.push_back(Rational(c / max_abs).get_d());
  return out;
}

std::vector<Complex> exact_roots(const EvaluationOracle& p, const std::vector<double>& point,
                                 const std::vector<double>& direction) {
  const int d = p.degree();
  const std::size_t m = point.size();
  std::vector<Rational> x(m), e(m);
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = to_rational(point[i]);
    e[i] = to_rational(direction[i]);
  }
  std::vector<Rational> values(d + 1);
  std::vector<Rational> at(m);
  for (int t = 0; t <= d; ++t) {
    for (std::size_t i = 0; i < m; ++i) at[i] = x[i] - Rational(t) * e[i];
    values[t] = p.evaluate(std::span<const Rational>(at));
  }
  univariate::RationalPoly g = univariate::interpolate_integer_nodes(values);
  if (static_cast<int>(g.size()) != d + 1) {
    if (g.empty()) throw InputError("polynomial vanishes identically along the line");
    throw InputError("p(direction) vanishes: univariate restriction has degree below " + std::to_string(d));
  }
  std::size_t zeros = 0;
  while (g[zeros] == 0) ++zeros;
  g.erase(g.begin(), g.begin() + static_cast<std::ptrdiff_t>(zeros));

  std::vector<Complex> roots(zeros, Complex(0.0));
  for (const auto& [factor, multiplicity] : univariate::squarefree_factorization(g)) {
    for (const Complex& r : univariate::companion_roots(to_doubles_normalized(factor))) {
      for (int k = 0; k < multiplicity; ++k) roots.push_back(r);
    }
  }
  return roots;
}

std::vector<Complex> float_roots(const EvaluationOracle& p, const std::vector<double>& point,
                                 const std::vector<double>& direction) {
  const int d = p.degree();
  const std::size_t m = point.size();
  double xmax = 0.0, emax = 0.0;
  for (std::size_t i = 0; i < m; ++i) {
    xmax = std::max(xmax, std::abs(point[i]));
    emax = std::max(emax, std::abs(direction[i]));
  }
  double scale = 2.0 * std::max(1.0, xmax) / std::max(emax, 1e-300);
  std::vector<Complex> roots;
  for (int pass = 0; pass < 2; ++pass) {
    const auto nodes = univariate::chebyshev_nodes(d + 1, scale);
    std::vector<double> values(d + 1);
    std::vector<double> at(m);
    for (int k = 0; k <= d; ++k) {
      for (std::size_t i = 0; i < m; ++i) at[i] = point[i] - nodes[k] * direction[i];
      values[k] = p.evaluate(std::span<const double>(at));
    }
    roots = univariate::companion_roots(univariate::fit_chebyshev_nodes(nodes, values, scale));
    double largest = 0.0;
    for (const auto& r : roots) largest = std::max(largest, std::abs(r));
    if (largest <= scale) break;
    scale = 1.5 * largest;
  }
  if (static_cast<int>(roots.size()) != d) {
    throw InputError("p(direction) vanishes: univariate restriction has degree below " + std::to_string(d));
  }
  return roots;
}

void finish_profile(RootProfile& profile) {
  profile.max_imag = 0.0;
  profile.scale = 0.0;
  for (const auto& r : profile.roots) {
    profile.max_imag = std::max(profile.max_imag, std::abs(r.imag()));
    profile.scale = std::max(profile.scale, std::abs(r));
  }
  profile.all_real = profile.max_imag <= kRealRootTolerance * std::max(profile.scale, 1e-300);
}

double margin_of(const RootProfile& profile) {
  return profile.max_imag / std::max(profile.scale, 1e-300);
}

}  // namespace

RootProfile root_profile(const EvaluationOracle& p, const std::vector<double>& point,
                         const std::vector<double>& direction) {
  const std::size_t m = p.n_vars();
  if (point.size() != m || direction.size() != m) throw InputError("root profile: dimension mismatch");
  RootProfile profile;
  profile.point = point;
  profile.direction = direction;
  profile.exact_path = p.supports_exact();
  profile.roots = profile.exact_path ? exact_roots(p, point, direction) : float_roots(p, point, direction);
  finish_profile(profile);
  return profile;
}

DiagnosticReport real_rootedness_check(const EvaluationOracle& p, const std::vector<double>& direction, int trials,
                                       std::uint64_t seed) {
  if (!(p.evaluate(std::span<const double>(direction)) > 0.0)) {
    throw InputError("real-rootedness check needs p(direction) > 0");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> numerator(-16, 16);
  DiagnosticReport report;
  report.check = "real-rootedness";
  report.trials = trials;
  report.worst_margin = 0.0;
  const std::size_t m = p.n_vars();
  for (int trial = 0; trial < trials; ++trial) {
    std::vector<double> x(m);
    for (auto& v : x) v = numerator(rng) / 8.0;
    RootProfile profile = root_profile(p, x, direction);
    const double margin = margin_of(profile);
    if (!report.worst_profile || margin > report.worst_margin) {
      report.worst_margin = margin;
      report.witness = x;
      report.worst_profile = std::move(profile);
    }
  }
  report.passed = report.worst_margin <= kRealRootTolerance;
  return report;
}

DiagnosticReport half_plane_sample_check(const EvaluationOracle& p, int samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  const std::size_t m = p.n_vars();
  DiagnosticReport report;
  report.check = "half-plane";
  report.trials = samples;
  report.worst_margin = std::numeric_limits<double>::infinity();
  bool nonzero = true;
  for (int s = 0; s < samples; ++s) {
    std::vector<double> x(m), y(m);
    std::vector<Complex> z(m);
    for (std::size_t i = 0; i < m; ++i) {
      x[i] = std::exp(0.5 * normal(rng));
      y[i] = x[i] * normal(rng);
      z[i] = Complex(x[i], y[i]);
    }
    const double modulus = std::abs(p.evaluate(std::span<const Complex>(z)));
    const double real_value = p.evaluate(std::span<const double>(x));
    nonzero = nonzero && modulus > 0.0;
    const double margin = real_value > 0.0 ? modulus / real_value - 1.0 : -std::numeric_limits<double>::infinity();
    if (margin < report.worst_margin) {
      report.worst_margin = margin;
      report.witness = x;
      report.witness.insert(report.witness.end(), y.begin(), y.end());
    }
  }
  report.passed = nonzero && report.worst_margin >= -1e-9;
  return report;
}

Factorization factorization_check(const EvaluationOracle& p, const std::vector<double>& z,
                                  const std::vector<double>& y) {
  const std::size_t m = p.n_vars();
  if (z.size() != m || y.size() != m) throw InputError("factorization check: dimension mismatch");
  std::vector<double> d(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!(z[i] >= 0.0 && y[i] >= 0.0)) throw InputError("factorization check needs Z, Y >= 0");
    d[i] = z[i] + y[i];
    if (!(d[i] > 0.0)) throw InputError("factorization check needs Z + Y > 0");
  }
  const double pd = p.evaluate(std::span<const double>(d));
  if (!(pd > 0.0)) throw InputError("factorization check needs p(Z + Y) > 0");
  RootProfile profile = root_profile(p, z, d);
  constexpr double kUnitTolerance = 1e-9;
  for (const auto& r : profile.roots) {
    if (std::abs(r.imag()) > kRealRootTolerance * std::max(profile.scale, 1.0)) {
      throw NotHyperbolicError("pencil has a complex root", r);
    }
    if (r.real() < -kUnitTolerance || r.real() > 1.0 + kUnitTolerance) {
      throw NotHyperbolicError("pencil root outside [0, 1]", r);
    }
  }
  const int n = p.degree();
  const double c = std::pow(pd, 1.0 / n);
  Factorization out;
  for (const auto& r : profile.roots) {
    const double lambda = std::clamp(r.real(), 0.0, 1.0);
    out.lambda.push_back(lambda);
    out.a.push_back(c * lambda);
    out.b.push_back(c * (1.0 - lambda));
  }
  return out;
}

RootRank rank_via_roots(const EvaluationOracle& p, int i) {
  const int m = p.n_vars();
  if (i < 0 || i >= m) throw InputError("variable index out of range");
  std::vector<double> point(m, 0.0), ones(m, 1.0);
  point[i] = 1.0;
  RootProfile profile = root_profile(p, point, ones);
  const double scale = std::max(profile.scale, 1e-300);
  RootRank out;
  for (const auto& r : profile.roots) {
    const double size = std::abs(r);
    if (size > 1e-7 * scale) {
      ++out.rank;
    } else if (size >= 1e-9 * scale) {
      out.ambiguous = true;
    }
  }
  return out;
}

}  // namespace polycap
