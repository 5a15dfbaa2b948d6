#include <gtest/gtest.h>

#include <random>

#include "polycap/approx.hpp"
#include "polycap/errors.hpp"
#include "polycap/exact_oracles.hpp"
#include "polycap/fixtures.hpp"

using namespace polycap;

namespace {

std::vector<Rational> random_point(int n, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> num(-9, 9), den(1, 5);
  std::vector<Rational> x(n);
  for (auto& v : x) {
    v = Rational(num(rng), den(rng));
    v.canonicalize();
  }
  return x;
}

double ratio_of(const ApproxResult& r, const Rational& exact) { return r.estimate / exact.get_d(); }

}  // namespace

TEST(PkOracleTest, MonomialK1) {
  PolynomialOracle p{Polynomial(SparsePolynomial(3, {{{1, 1, 1}, Rational(1)}}))};
  PkOracle pk(p, 1);
  EXPECT_EQ(pk.n_vars(), 2);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int i = 0; i < 20; ++i) {
    const std::vector<double> x{u(rng), u(rng)};
    EXPECT_NEAR(pk.evaluate(x), x[0] * x[1], 1e-9 * std::max(1.0, std::abs(x[0] * x[1])));
  }
}

TEST(PkOracleTest, UniformMatrixK1) {
  PolynomialOracle p{Polynomial(ProductFormPolynomial(fixtures::uniform_matrix(3)))};
  PkOracle pk(p, 1);
  const std::vector<Rational> ones{1, 1};
  EXPECT_EQ(pk.evaluate(ones), Rational(4, 9));
  const std::vector<Rational> x{2, 5};
  EXPECT_EQ(pk.evaluate(x), Rational(49, 9));
}

TEST(PkOracleTest, MatchesRepeatedDerivativeReduce) {
  std::mt19937_64 rng(2);
  for (int n = 2; n <= 8; ++n) {
    const SparsePolynomial q = fixtures::random_sparse_hyperbolic(n, rng);
    PolynomialOracle p(q);
    SparsePolynomial reduced = q;
    for (int k = 1; k <= std::min(4, n - 1); ++k) {
      reduced = derivative_reduce(reduced);
      PkOracle pk(p, k);
      for (int trial = 0; trial < 5; ++trial) {
        const auto x = random_point(n - k, rng);
        EXPECT_EQ(pk.evaluate(x), reduced.evaluate(std::span<const Rational>(x))) << "n=" << n << " k=" << k;
      }
    }
  }
}

TEST(PkOracleTest, CallAccounting) {
  std::mt19937_64 rng(3);
  for (int n = 2; n <= 9; ++n) {
    PolynomialOracle p{Polynomial(ProductFormPolynomial(fixtures::random_positive_matrix(n, rng)))};
    for (int k = 1; k < n; ++k) {
      PkOracle pk(p, k);
      const std::uint64_t expected = (std::uint64_t{1} << k) * static_cast<std::uint64_t>((n - k + 1) / 2 + 1);
      EXPECT_EQ(pk.base_calls_per_evaluation(), expected);
      p.reset_call_count();
      const std::vector<double> x(n - k, 1.0);
      pk.evaluate(x);
      EXPECT_EQ(p.call_count(), expected);
      EXPECT_EQ(pk.call_count(), 1u);
    }
  }
}

TEST(PkOracleTest, RangeErrors) {
  PolynomialOracle p{Polynomial(ProductFormPolynomial(fixtures::uniform_matrix(3)))};
  EXPECT_THROW(PkOracle(p, 0), InputError);
  EXPECT_THROW(PkOracle(p, 3), InputError);
  EXPECT_THROW(improved_estimate(p, 3), InputError);
}

TEST(PkOracleTest, ConditionReported) {
  PolynomialOracle p{Polynomial(ProductFormPolynomial(fixtures::uniform_matrix(6)))};
  PkOracle pk(p, 2);
  EXPECT_GE(pk.extrapolation_condition(), 1.0);
  EXPECT_EQ(pk.sample_count(), 3);
}

TEST(PkOracleTest, MixedPartialOfPkEqualsMixedPartialOfP) {
  std::mt19937_64 rng(4);
  for (int n = 3; n <= 10; ++n) {
    const RationalMatrix a = fixtures::random_rational_matrix(n, rng, 3, 2);
    PolynomialOracle p{Polynomial(ProductFormPolynomial(a))};
    const Rational expected = permanent_ryser(a);
    for (int k = 1; k <= 3 && k < n; ++k) {
      PkOracle pk(p, k);
      EXPECT_EQ(mixed_partial_polarization<Rational>(pk), expected) << "n=" << n << " k=" << k;
    }
  }
}

TEST(GuaranteeFactor, StrictlyDecreasing) {
  EXPECT_DOUBLE_EQ(approx_guarantee_factor(0), 1.0);
  EXPECT_DOUBLE_EQ(approx_guarantee_factor(1), 1.0);
  EXPECT_NEAR(approx_guarantee_factor(3), 4.5, 1e-14);
  for (int n = 2; n <= 30; ++n) {
    for (int k = 0; k + 1 < n; ++k) {
      EXPECT_GT(approx_guarantee_factor(n - k), approx_guarantee_factor(n - k - 1));
    }
    EXPECT_LE(approx_guarantee_factor(n), std::exp(static_cast<double>(n)));
  }
}

TEST(CapacityEstimate, Monomial) {
  PolynomialOracle p{Polynomial(SparsePolynomial(3, {{{1, 1, 1}, Rational(1)}}))};
  const auto r = capacity_estimate(p);
  EXPECT_NEAR(r.estimate, 1.0, 1e-9);
  EXPECT_GT(r.oracle_calls, 0u);
  EXPECT_EQ(r.k_used, 0);
}

TEST(CapacityEstimate, UniformMatrix) {
  PolynomialOracle p{Polynomial(ProductFormPolynomial(fixtures::uniform_matrix(3)))};
  const auto r = capacity_estimate(p);
  EXPECT_NEAR(r.estimate, 1.0, 1e-9);
  EXPECT_NEAR(ratio_of(r, Rational(2, 9)), 4.5, 1e-8);
  EXPECT_NEAR(r.guarantee_factor, 4.5, 1e-14);
}

TEST(CapacityEstimate, RandomDoublyStochastic) {
  std::mt19937_64 rng(5);
  const RealMatrix a = fixtures::random_doubly_stochastic(8, rng);
  PolynomialOracle p{Polynomial(ProductFormPolynomial(a))};
  const auto r = capacity_estimate(p);
  const double ratio = r.estimate / permanent_ryser(a);
  EXPECT_GE(ratio, 1.0 - 1e-7);
  EXPECT_LE(ratio, r.guarantee_factor * (1 + 1e-7));
}

TEST(CapacityEstimate, Degenerate) {
  PolynomialOracle p{Polynomial(ProductFormPolynomial(RationalMatrix{{1, 0}, {1, 0}}))};
  const auto r = capacity_estimate(p);
  EXPECT_EQ(r.estimate, 0.0);
  EXPECT_EQ(r.capacity_result.status, CapacityStatus::degenerate_zero);
}

TEST(Improved, UniformMatrixK1) {
  PolynomialOracle p{Polynomial(ProductFormPolynomial(fixtures::uniform_matrix(4)))};
  const auto r = improved_estimate(p, 1);
  const double ratio = ratio_of(r, Rational(24, 256));
  EXPECT_NEAR(r.guarantee_factor, 4.5, 1e-14);
  EXPECT_GE(ratio, 1.0 - 1e-7);
  EXPECT_LE(ratio, 4.5 * (1 + 1e-7));
}

TEST(Improved, LastKIsExact) {
  std::mt19937_64 rng(6);
  const RationalMatrix a = fixtures::random_rational_matrix(5, rng);
  PolynomialOracle p{Polynomial(ProductFormPolynomial(a))};
  const auto r = improved_estimate(p, 4);
  EXPECT_DOUBLE_EQ(r.guarantee_factor, 1.0);
  EXPECT_NEAR(r.estimate, permanent_ryser(a).get_d(), 1e-9 * permanent_ryser(a).get_d());
}

TEST(Improved, RandomProductFormK2) {
  std::mt19937_64 rng(7);
  const RealMatrix a = fixtures::random_positive_matrix(8, rng);
  PolynomialOracle p{Polynomial(ProductFormPolynomial(a))};
  const auto r = improved_estimate(p, 2);
  EXPECT_NEAR(r.guarantee_factor, 46656.0 / 720.0, 1e-10);
  const double ratio = r.estimate / permanent_ryser(a);
  EXPECT_GE(ratio, 1.0 - 1e-7);
  EXPECT_LE(ratio, r.guarantee_factor * (1 + 1e-7));
  EXPECT_LE(ratio, capacity_estimate(p).estimate / permanent_ryser(a) * (1 + 1e-7));
}

TEST(Improved, KZeroDelegates) {
  PolynomialOracle p{Polynomial(ProductFormPolynomial(fixtures::uniform_matrix(3)))};
  const auto a = improved_estimate(p, 0);
  const auto b = capacity_estimate(p);
  EXPECT_EQ(a.estimate, b.estimate);
  EXPECT_EQ(a.k_used, 0);
}
