#include "polycap/exact_oracles.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <string>

#include "polycap/errors.hpp"
#include "polycap/linalg.hpp"
#include "polycap/parallel.hpp"

namespace polycap {
namespace {

template <class T>
T ryser(const Matrix<T>& a, int cap) {
  if (!a.square()) throw InputError("permanent needs a square matrix");
  const int n = static_cast<int>(a.rows());
  if (n > cap) {
    throw ResourceError("permanent refused: n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
  if (n == 0) return T(1);
  std::vector<T> row_sums(n, T(0));
  T total(0);
  std::uint64_t gray = 0;
  for (std::uint64_t k = 1; k < (std::uint64_t(1) << n); ++k) {
    const int col = std::countr_zero(k);
    gray ^= std::uint64_t(1) << col;
    const bool added = (gray >> col) & 1u;
    for (int i = 0; i < n; ++i) {
      if (added) {
        row_sums[i] += a(i, col);
      } else {
        row_sums[i] -= a(i, col);
      }
    }
    T prod = row_sums[0];
    for (int i = 1; i < n; ++i) prod *= row_sums[i];
    if (std::popcount(gray) % 2 == n % 2) {
      total += prod;
    } else {
      total -= prod;
    }
  }
  return total;
}

}  // namespace

double permanent_ryser(const RealMatrix& a) { return ryser(a, kPermanentCapFloat); }

Rational permanent_ryser(const RationalMatrix& a) { return ryser(a, kPermanentCapExact); }

template <class Scalar>
Scalar mixed_form(const EvaluationOracle& p, const std::vector<std::vector<Scalar>>& vectors) {
  constexpr bool exact = std::is_same_v<Scalar, Rational>;
  const int n = static_cast<int>(vectors.size());
  if (n != p.degree()) {
    throw InputError("mixed form needs " + std::to_string(p.degree()) + " vectors, got " + std::to_string(n));
  }
  const int cap = exact ? kPolarizationCapExact : kPolarizationCapFloat;
  if (n > cap) {
    throw ResourceError("polarization refused: n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap));
  }
  const std::size_t m = p.n_vars();
  for (const auto& v : vectors) {
    if (v.size() != m) throw InputError("mixed form vector has wrong length");
  }
  const std::size_t count = std::size_t(1) << n;
  Scalar sum = tree_sum<Scalar>(count, [&](std::size_t mask) -> Scalar {
    std::vector<Scalar> point(m, Scalar(0));
    for (int i = 0; i < n; ++i) {
      const bool negative = (mask >> i) & 1u;
      for (std::size_t j = 0; j < m; ++j) {
        if (negative) {
          point[j] -= vectors[i][j];
        } else {
          point[j] += vectors[i][j];
        }
      }
    }
    Scalar value = p.evaluate(std::span<const Scalar>(point));
    if (std::popcount(mask) % 2) value = -value;
    return value;
  });
  if constexpr (exact) {
    Rational scale(1);
    scale /= Rational(mpz_class(1) << n);  // exact 2^-n
    return sum * scale;
  } else {
    return std::ldexp(sum, -n);
  }
}

template <class Scalar>
Scalar mixed_partial_polarization(const EvaluationOracle& p) {
  const int n = p.n_vars();
  if (p.degree() != n) throw InputError("mixed partial needs degree == n_vars");
  std::vector<std::vector<Scalar>> basis(n, std::vector<Scalar>(n, Scalar(0)));
  for (int i = 0; i < n; ++i) basis[i][i] = Scalar(1);
  return mixed_form<Scalar>(p, basis);
}

Rational mixed_partial(const Polynomial& p) {
  if (n_vars(p) != degree(p)) throw InputError("mixed partial needs degree == n_vars");
  if (const auto* sparse = std::get_if<SparsePolynomial>(&p)) {
    return sparse->coefficient(Exponent(sparse->n_vars(), 1));
  }
  if (const auto* product = std::get_if<ProductFormPolynomial>(&p)) return permanent_ryser(product->matrix());
  return mixed_partial_polarization<Rational>(PolynomialOracle(p));
}

template <class Scalar>
Scalar mixed_discriminant(const std::vector<Matrix<Scalar>>& matrices) {
  const std::size_t n = matrices.size();
  if (n == 0) throw InputError("mixed discriminant needs at least one matrix");
  for (const auto& a : matrices) {
    if (a.rows() != n || a.cols() != n) {
      throw InputError("mixed discriminant needs " + std::to_string(n) + " matrices of size " +
                       std::to_string(n) + "x" + std::to_string(n));
    }
  }
  if (static_cast<int>(n) > kMixedDiscriminantCap) {
    throw ResourceError("mixed discriminant refused: n = " + std::to_string(n) + " exceeds cap " +
                        std::to_string(kMixedDiscriminantCap));
  }
  // PSD matrices with a singular sum share a kernel vector: the form vanishes
  RationalMatrix sum(n, n, Rational(0));
  for (const auto& a : matrices) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if constexpr (std::is_same_v<Scalar, Rational>) {
          sum(i, j) += a(i, j);
        } else {
          sum(i, j) += to_rational(a(i, j));
        }
      }
    }
  }
  if (linalg::determinant(sum) == 0) return Scalar(0);
  if constexpr (std::is_same_v<Scalar, Rational>) {
    PolynomialOracle oracle(DeterminantalPolynomial(matrices, ScalarMode::exact));
    return mixed_partial_polarization<Rational>(oracle);
  } else {
    PolynomialOracle oracle(DeterminantalPolynomial{matrices});
    return mixed_partial_polarization<double>(oracle);
  }
}

Rational taylor_mixed_form_coefficient(const SparsePolynomial& q, const Exponent& r) {
  const int m = q.n_vars();
  if (static_cast<int>(r.size()) != m) throw InputError("exponent vector has wrong length");
  int total = 0;
  for (int e : r) {
    if (e < 0) throw InputError("negative exponent");
    total += e;
  }
  if (total != q.degree()) throw InputError("exponent vector does not sum to the degree");
  if (m > kTaylorCap) throw ResourceError("taylor coefficient refused: n exceeds cap");
  std::vector<std::vector<Rational>> tuple;
  Rational denominator(1);
  for (int i = 0; i < m; ++i) {
    std::vector<Rational> e(m, Rational(0));
    e[i] = 1;
    for (int c = 0; c < r[i]; ++c) tuple.push_back(e);
    denominator *= factorial(r[i]);
  }
  PolynomialOracle oracle(q);
  Rational value = mixed_form<Rational>(oracle, tuple) / denominator;
  if (value != q.coefficient(r)) {
    throw CheckFailure("polarized Taylor coefficient " + to_string(value) + " != stored coefficient " +
                       to_string(q.coefficient(r)));
  }
  return value;
}

template double mixed_form<double>(const EvaluationOracle&, const std::vector<std::vector<double>>&);
template Rational mixed_form<Rational>(const EvaluationOracle&, const std::vector<std::vector<Rational>>&);
template double mixed_partial_polarization<double>(const EvaluationOracle&);
template Rational mixed_partial_polarization<Rational>(const EvaluationOracle&);
template double mixed_discriminant<double>(const std::vector<RealMatrix>&);
template Rational mixed_discriminant<Rational>(const std::vector<RationalMatrix>&);

}  // namespace polycap
