#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "polycap/errors.hpp"
#include "polycap/fixtures.hpp"
#include "polycap/hyperbolicity.hpp"

using namespace polycap;

namespace {

FunctionOracle lorentz() {
  return FunctionOracle::from_generic(3, 2, [](auto x) { using T = typename decltype(x)::value_type; return T(x[0] * x[0] - x[1] * x[1] - x[2] * x[2]); });
}

FunctionOracle sum_of_squares() {
  return FunctionOracle::from_generic(2, 2, [](auto x) { using T = typename decltype(x)::value_type; return T(x[0] * x[0] + x[1] * x[1]); });
}

Polynomial sum_of_cubes() {
  return SparsePolynomial(3, {{{3, 0, 0}, Rational(1, 3)}, {{0, 3, 0}, Rational(1, 3)}, {{0, 0, 3}, Rational(1, 3)}});
}

// Same polynomial, but only through floating-point evaluation.
FunctionOracle float_only(const Polynomial& p) {
  return FunctionOracle(
      n_vars(p), degree(p), [p](std::span<const double> x) { return evaluate(p, x); },
      [p](std::span<const Complex> x) { return evaluate(p, x); });
}

std::vector<Polynomial> hyperbolic_fixtures() {
  std::mt19937_64 rng(42);
  std::vector<Polynomial> out;
  for (int n = 2; n <= 5; ++n) out.emplace_back(ProductFormPolynomial(fixtures::uniform_matrix(n)));
  out.emplace_back(ProductFormPolynomial(fixtures::circulant3()));
  out.emplace_back(ProductFormPolynomial(fixtures::random_rational_matrix(5, rng)));
  out.emplace_back(DeterminantalPolynomial(fixtures::random_psd_tuple(3, 3, rng)));
  std::vector<RationalMatrix> low_rank{fixtures::random_psd_matrix(4, rng, 1), fixtures::random_psd_matrix(4, rng, 2),
                                       fixtures::random_psd_matrix(4, rng, 4), fixtures::random_psd_matrix(4, rng, 3)};
  out.emplace_back(DeterminantalPolynomial(low_rank));
  out.emplace_back(fixtures::q_family({Rational(1), Rational(2), Rational(1, 2), Rational(3)}));
  out.emplace_back(SparsePolynomial(3, {{{1, 1, 1}, Rational(1)}}));
  return out;
}

const std::vector<double> kOnes3{1, 1, 1};

}  // namespace

TEST(RootProfileTest, DoubleRootOfJ2) {
  PolynomialOracle p{Polynomial(ProductFormPolynomial(fixtures::uniform_matrix(2)))};
  const auto profile = root_profile(p, {0.5, -1.25}, {1, 1});
  EXPECT_TRUE(profile.exact_path);
  ASSERT_EQ(profile.roots.size(), 2u);
  for (const auto& r : profile.roots) {
    EXPECT_NEAR(r.real(), -0.375, 1e-12);
    EXPECT_EQ(r.imag(), 0.0);
  }
}

TEST(RootProfileTest, RootProductIdentity) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-2, 2);
  for (const auto& poly : hyperbolic_fixtures()) {
    PolynomialOracle p(poly);
    const int m = p.n_vars();
    std::vector<double> e(m, 1.0), x(m);
    for (auto& v : x) v = u(rng);
    const auto profile = root_profile(p, x, e);
    ASSERT_EQ(static_cast<int>(profile.roots.size()), p.degree());
    Complex product = 1.0;
    for (const auto& r : profile.roots) product *= r;
    const double lhs = std::abs(product.real() * p.evaluate(e));
    const double rhs = std::abs(p.evaluate(x));
    EXPECT_NEAR(lhs, rhs, 1e-6 * std::max(rhs, 1e-12));
  }
}

TEST(RootProfileTest, FloatPathAgreesWithExactPath) {
  std::mt19937_64 rng(2);
  const Polynomial poly = ProductFormPolynomial(fixtures::random_rational_matrix(4, rng));
  PolynomialOracle exact(poly);
  FunctionOracle approx = float_only(poly);
  EXPECT_FALSE(approx.supports_exact());
  const std::vector<double> x{0.25, -1.5, 2.0, 0.75}, e{1, 1, 1, 1};
  auto a = root_profile(exact, x, e).roots;
  auto b = root_profile(approx, x, e).roots;
  auto by_real = [](Complex l, Complex r) { return l.real() < r.real(); };
  std::sort(a.begin(), a.end(), by_real);
  std::sort(b.begin(), b.end(), by_real);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(std::abs(a[i] - b[i]), 0.0, 1e-6);
}

TEST(RealRootedness, PassesOnFixtures) {
  for (const auto& poly : hyperbolic_fixtures()) {
    PolynomialOracle p(poly);
    const auto report = real_rootedness_check(p, std::vector<double>(p.n_vars(), 1.0), 15, 7);
    EXPECT_TRUE(report.passed) << report.worst_margin;
    EXPECT_EQ(report.trials, 15);
  }
}

TEST(RealRootedness, FloatOnlyOracles) {
  std::mt19937_64 rng(3);
  const Polynomial poly = ProductFormPolynomial(fixtures::random_rational_matrix(5, rng));
  FunctionOracle p = float_only(poly);
  EXPECT_TRUE(real_rootedness_check(p, std::vector<double>(5, 1.0), 15, 8).passed);
}

TEST(RealRootedness, Lorentz) {
  FunctionOracle p = lorentz();
  EXPECT_TRUE(real_rootedness_check(p, {1, 0, 0}, 30, 9).passed);
}

TEST(RealRootedness, SumOfSquaresFails) {
  FunctionOracle p = sum_of_squares();
  // (1 - t)^2 + t^2 has discriminant 4 - 8 < 0
  const auto profile = root_profile(p, {1, 0}, {1, 1});
  EXPECT_FALSE(profile.all_real);
  EXPECT_FALSE(real_rootedness_check(p, {1, 1}, 20, 10).passed);
}

TEST(RealRootedness, SumOfCubesFails) {
  PolynomialOracle p(sum_of_cubes());
  const auto report = real_rootedness_check(p, kOnes3, 20, 11);
  EXPECT_FALSE(report.passed);
  ASSERT_TRUE(report.worst_profile.has_value());
  EXPECT_EQ(report.witness, report.worst_profile->point);
}

TEST(RealRootedness, NonpositiveDirectionIsInputError) {
  FunctionOracle p = lorentz();
  EXPECT_THROW(real_rootedness_check(p, {0, 1, 0}, 5, 1), InputError);
}

TEST(HalfPlane, PassesOnFixtures) {
  for (const auto& poly : hyperbolic_fixtures()) {
    PolynomialOracle p(poly);
    const auto report = half_plane_sample_check(p, 2000, 12);
    EXPECT_TRUE(report.passed) << report.worst_margin;
    EXPECT_GE(report.worst_margin, -1e-9);
  }
}

TEST(HalfPlane, SumOfCubesFails) {
  PolynomialOracle p(sum_of_cubes());
  const auto report = half_plane_sample_check(p, 2000, 13);
  EXPECT_FALSE(report.passed);
  EXPECT_LT(report.worst_margin, -0.1);
  EXPECT_EQ(report.witness.size(), 6u);
}

TEST(HalfPlane, SumOfSquaresFails) {
  FunctionOracle p = sum_of_squares();
  EXPECT_FALSE(half_plane_sample_check(p, 2000, 14).passed);
}

TEST(Factorization, J2Pencil) {
  PolynomialOracle p{Polynomial(ProductFormPolynomial(fixtures::uniform_matrix(2)))};
  const auto f = factorization_check(p, {1, 0}, {0, 1});
  ASSERT_EQ(f.a.size(), 2u);
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(f.a[i], 0.5, 1e-9);
    EXPECT_NEAR(f.b[i], 0.5, 1e-9);
  }
}

TEST(Factorization, ReconstructsPencil) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(0.0, 2.0);
  for (const auto& poly : hyperbolic_fixtures()) {
    PolynomialOracle p(poly);
    const int m = p.n_vars();
    std::vector<double> z(m), y(m);
    for (int i = 0; i < m; ++i) {
      z[i] = u(rng);
      y[i] = u(rng) + 0.1;
    }
    const auto f = factorization_check(p, z, y);
    for (double t : {0.0, 0.3, 1.0, 4.0}) {
      std::vector<double> x(m);
      for (int i = 0; i < m; ++i) x[i] = t * z[i] + y[i];
      double product = 1.0;
      for (std::size_t i = 0; i < f.a.size(); ++i) {
        EXPECT_GE(f.a[i], 0.0);
        EXPECT_GE(f.b[i], 0.0);
        EXPECT_GT(f.a[i] + f.b[i], 0.0);
        product *= f.a[i] * t + f.b[i];
      }
      const double expected = p.evaluate(x);
      EXPECT_NEAR(product, expected, 1e-6 * expected);
    }
  }
}

TEST(Factorization, SumOfSquaresThrows) {
  FunctionOracle p = sum_of_squares();
  EXPECT_THROW(factorization_check(p, {1, 0}, {0, 1}), NotHyperbolicError);
  EXPECT_THROW(factorization_check(p, {-1, 0}, {0, 1}), InputError);
}

TEST(RankViaRoots, Examples) {
  PolynomialOracle j3{Polynomial(ProductFormPolynomial(fixtures::uniform_matrix(3)))};
  EXPECT_EQ(rank_via_roots(j3, 0).rank, 3);
  PolynomialOracle mono{Polynomial(SparsePolynomial(3, {{{1, 1, 1}, Rational(1)}}))};
  EXPECT_EQ(rank_via_roots(mono, 0).rank, 1);
  PolynomialOracle circ{Polynomial(ProductFormPolynomial(fixtures::circulant3()))};
  EXPECT_EQ(rank_via_roots(circ, 0).rank, 2);
}

TEST(RankViaRoots, AgreesWithVariableDegree) {
  for (const auto& poly : hyperbolic_fixtures()) {
    PolynomialOracle p(poly);
    for (int i = 0; i < p.n_vars(); ++i) {
      const auto r = rank_via_roots(p, i);
      EXPECT_FALSE(r.ambiguous);
      EXPECT_EQ(r.rank, variable_degree(poly, i));
    }
  }
}

TEST(DerivativePreservesHyperbolicity, OnExpandedFixtures) {
  for (const auto& poly : hyperbolic_fixtures()) {
    if (n_vars(poly) < 2 || n_vars(poly) != degree(poly)) continue;
    const SparsePolynomial r = derivative_reduce(expand(poly));
    PolynomialOracle p(r);
    EXPECT_TRUE(real_rootedness_check(p, std::vector<double>(r.n_vars(), 1.0), 10, 15).passed);
  }
}
