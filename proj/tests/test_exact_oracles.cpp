#include <gtest/gtest.h>

#include <random>

#include "polycap/errors.hpp"
#include "polycap/exact_oracles.hpp"
#include "polycap/fixtures.hpp"
#include "polycap/linalg.hpp"
#include "polycap/parallel.hpp"

using namespace polycap;

namespace {

// Permanent by summing over all permutations, independent of Ryser.
Rational permanent_bruteforce(const RationalMatrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  Rational total = 0;
  do {
    Rational term = 1;
    for (int i = 0; i < n; ++i) term *= a(i, perm[i]);
    total += term;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

std::vector<RationalMatrix> diagonal_tuple(const RationalMatrix& a) {
  const int n = static_cast<int>(a.rows());
  std::vector<RationalMatrix> tuple;
  for (int i = 0; i < n; ++i) {
    RationalMatrix d(n, n, Rational(0));
    for (int j = 0; j < n; ++j) d(j, j) = a(i, j);
    tuple.push_back(d);
  }
  return tuple;
}

}  // namespace

TEST(Permanent, Examples) {
  EXPECT_EQ(permanent_ryser(RationalMatrix{{1, 2}, {3, 4}}), 10);
  EXPECT_DOUBLE_EQ(permanent_ryser(RealMatrix{{1, 2}, {3, 4}}), 10.0);
  EXPECT_EQ(permanent_ryser(fixtures::uniform_matrix(3)), Rational(2, 9));
  EXPECT_EQ(permanent_ryser(fixtures::circulant3()), Rational(1, 4));
}

TEST(Permanent, Errors) {
  EXPECT_THROW(permanent_ryser(RationalMatrix(2, 3, Rational(1))), InputError);
  EXPECT_THROW(permanent_ryser(RationalMatrix(kPermanentCapExact + 1, kPermanentCapExact + 1, Rational(1))),
               ResourceError);
  EXPECT_THROW(permanent_ryser(RealMatrix(kPermanentCapFloat + 1, kPermanentCapFloat + 1, 1.0)), ResourceError);
}

TEST(Permanent, RyserMatchesBruteForce) {
  std::mt19937_64 rng(1);
  for (int n = 1; n <= 7; ++n) {
    for (int trial = 0; trial < 5; ++trial) {
      const RationalMatrix a = fixtures::random_rational_matrix(n, rng);
      const Rational expected = permanent_bruteforce(a);
      EXPECT_EQ(permanent_ryser(a), expected);
      EXPECT_NEAR(permanent_ryser(to_real(a)), expected.get_d(), 1e-10 * expected.get_d());
    }
  }
}

TEST(Polarization, Examples) {
  PolynomialOracle xy{Polynomial(SparsePolynomial(2, {{{1, 1}, Rational(1)}}))};
  EXPECT_EQ(mixed_partial_polarization<Rational>(xy), 1);
  PolynomialOracle j2(Polynomial(
      SparsePolynomial(2, {{{2, 0}, Rational(1, 4)}, {{1, 1}, Rational(1, 2)}, {{0, 2}, Rational(1, 4)}})));
  EXPECT_EQ(mixed_partial_polarization<Rational>(j2), Rational(1, 2));
  EXPECT_DOUBLE_EQ(mixed_partial_polarization<double>(j2), 0.5);
}

TEST(Polarization, EqualsPermanentExactly) {
  std::mt19937_64 rng(2);
  for (int n = 1; n <= 8; ++n) {
    const RationalMatrix a = fixtures::random_rational_matrix(n, rng);
    PolynomialOracle p{Polynomial(ProductFormPolynomial(a))};
    EXPECT_EQ(mixed_partial_polarization<Rational>(p), permanent_ryser(a)) << "n = " << n;
  }
}

// For degree-n forms in n variables, the only all-odd exponent vector is
// (1, ..., 1), so the signed sum picks out exactly that coefficient no
// matter how large the other coefficients are.
TEST(Polarization, OnlyAllOnesExponentSurvives) {
  SparsePolynomial::TermMap terms;
  terms[{3, 1, 0, 0}] = 1000;
  terms[{1, 1, 1, 1}] = Rational(7, 3);
  terms[{2, 2, 0, 0}] = 55;
  terms[{1, 3, 0, 0}] = 9;
  terms[{0, 0, 1, 3}] = 12;
  terms[{4, 0, 0, 0}] = 5;
  PolynomialOracle p{Polynomial(SparsePolynomial(4, terms))};
  EXPECT_EQ(mixed_partial_polarization<Rational>(p), Rational(7, 3));
  // an all-odd exponent in degree 6 with 4 variables exists, e.g. (3,1,1,1),
  // which is why the sum requires degree == n_vars
  EXPECT_THROW(mixed_partial_polarization<Rational>(
                   PolynomialOracle(Polynomial(SparsePolynomial(4, {{{3, 1, 1, 1}, Rational(1)}})))),
               InputError);
}

TEST(Polarization, CapsAreResourceErrors) {
  const Polynomial big = ProductFormPolynomial(fixtures::uniform_matrix(kPolarizationCapExact + 1));
  PolynomialOracle p(big);
  EXPECT_THROW(mixed_partial_polarization<Rational>(p), ResourceError);
}

TEST(Polarization, DeterministicAcrossWorkerCounts) {
  std::mt19937_64 rng(3);
  PolynomialOracle p{Polynomial(ProductFormPolynomial(fixtures::random_doubly_stochastic(12, rng)))};
  set_worker_count(1);
  const double serial = mixed_partial_polarization<double>(p);
  set_worker_count(4);
  const double threaded = mixed_partial_polarization<double>(p);
  set_worker_count(1);
  EXPECT_EQ(serial, threaded);
}

TEST(MixedDiscriminant, Examples) {
  const auto id = RationalMatrix::identity(3);
  EXPECT_EQ(mixed_discriminant<Rational>({id, id, id}), 6);
  EXPECT_THROW(mixed_discriminant<Rational>({id, id}), InputError);
}

TEST(MixedDiscriminant, DiagonalTupleIsPermanent) {
  std::mt19937_64 rng(4);
  for (int n = 1; n <= 8; ++n) {
    const RationalMatrix a = fixtures::random_rational_matrix(n, rng);
    EXPECT_EQ(mixed_discriminant<Rational>(diagonal_tuple(a)), permanent_ryser(a)) << "n = " << n;
  }
}

TEST(MixedDiscriminant, DoublyStochasticTupleAboveVdw) {
  std::mt19937_64 rng(5);
  for (int n = 2; n <= 6; ++n) {
    const auto tuple = fixtures::doubly_stochastic_psd_tuple(n, rng);
    double vdw = 1.0;
    for (int i = 1; i <= n; ++i) vdw *= static_cast<double>(i) / n;
    EXPECT_GE(mixed_discriminant<double>(tuple), vdw - 1e-9) << "n = " << n;
  }
}

TEST(MixedDiscriminant, NonnegativeAndMonotone) {
  std::mt19937_64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 4;
    std::vector<RealMatrix> z, y;
    for (int i = 0; i < n; ++i) {
      const RealMatrix zi = to_real(fixtures::random_psd_matrix(n, rng, 1 + trial % n));
      const RealMatrix extra = to_real(fixtures::random_psd_matrix(n, rng, 1));
      RealMatrix yi = zi;
      for (int r = 0; r < n; ++r) {
        for (int c = 0; c < n; ++c) yi(r, c) += extra(r, c);
      }
      z.push_back(zi);
      y.push_back(yi);
    }
    const double mz = mixed_discriminant<double>(z);
    EXPECT_GE(mz, -1e-12);
    EXPECT_GE(mixed_discriminant<double>(y), mz - 1e-9);
  }
}

TEST(MixedDiscriminant, LinearInEachArgument) {
  std::mt19937_64 rng(7);
  const int n = 4;
  auto tuple = fixtures::random_psd_tuple(n, n, rng);
  const RationalMatrix other = fixtures::random_psd_matrix(n, rng);
  const Rational alpha(2, 3), beta(5, 7);
  RationalMatrix combo(n, n, Rational(0));
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) combo(r, c) = alpha * tuple[0](r, c) + beta * other(r, c);
  }
  const Rational m1 = mixed_discriminant<Rational>(tuple);
  auto with_other = tuple;
  with_other[0] = other;
  const Rational m2 = mixed_discriminant<Rational>(with_other);
  auto with_combo = tuple;
  with_combo[0] = combo;
  EXPECT_EQ(mixed_discriminant<Rational>(with_combo), alpha * m1 + beta * m2);
}

TEST(MixedPartial, AllRepresentationsAgree) {
  std::mt19937_64 rng(8);
  const RationalMatrix a = fixtures::random_rational_matrix(5, rng);
  const Polynomial product = ProductFormPolynomial(a);
  EXPECT_EQ(mixed_partial(product), permanent_ryser(a));
  EXPECT_EQ(mixed_partial(Polynomial(expand(product))), permanent_ryser(a));
  const Polynomial det = DeterminantalPolynomial(diagonal_tuple(a));
  EXPECT_EQ(mixed_partial(det), permanent_ryser(a));
}

TEST(Taylor, Examples) {
  EXPECT_EQ(taylor_mixed_form_coefficient(SparsePolynomial(2, {{{1, 1}, Rational(1)}}), {1, 1}), 1);
  const SparsePolynomial j2(2, {{{2, 0}, Rational(1, 4)}, {{1, 1}, Rational(1, 2)}, {{0, 2}, Rational(1, 4)}});
  EXPECT_EQ(taylor_mixed_form_coefficient(j2, {2, 0}), Rational(1, 4));
  const SparsePolynomial j3 = expand(Polynomial(ProductFormPolynomial(fixtures::uniform_matrix(3))));
  EXPECT_EQ(taylor_mixed_form_coefficient(j3, {1, 1, 1}), Rational(2, 9));
  EXPECT_THROW(taylor_mixed_form_coefficient(j2, {1, 0}), InputError);
}

TEST(Taylor, EveryCoefficientOfRandomExpansion) {
  std::mt19937_64 rng(9);
  const SparsePolynomial q = fixtures::random_sparse_hyperbolic(4, rng);
  for (const auto& [e, c] : q.terms()) EXPECT_EQ(taylor_mixed_form_coefficient(q, e), c);
  // absent monomials give zero
  SparsePolynomial sparse(3, {{{1, 1, 1}, Rational(2)}});
  EXPECT_EQ(taylor_mixed_form_coefficient(sparse, {3, 0, 0}), 0);
}
