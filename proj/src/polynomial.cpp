#include "polycap/polynomial.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include "polycap/errors.hpp"
#include "polycap/linalg.hpp"

namespace polycap {
namespace {

template <class T>
T sparse_eval(const std::vector<Exponent>& exps, const std::vector<T>& coefs, int n_vars, int degree,
              std::span<const T> x) {
  // powers[i][e] = x_i^e
  std::vector<std::vector<T>> powers(n_vars, std::vector<T>(degree + 1, T(1)));
  for (int i = 0; i < n_vars; ++i)
    for (int e = 1; e <= degree; ++e) powers[i][e] = powers[i][e - 1] * x[i];
  T sum(0);
  for (std::size_t t = 0; t < exps.size(); ++t) {
    T term = coefs[t];
    for (int i = 0; i < n_vars; ++i) {
      if (exps[t][i]) term *= powers[i][exps[t][i]];
    }
    sum += term;
  }
  return sum;
}

template <class T, class M>
T product_eval(const M& a, std::span<const T> x) {
  T product(1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    T row(0);
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) != 0) row += a(i, j) * x[j];
    }
    product *= row;
  }
  return product;
}

void check_dims(int expected, std::size_t got) {
  if (static_cast<std::size_t>(expected) != got) {
    throw InputError("dimension mismatch: polynomial has " + std::to_string(expected) +
                     " variables, point has " + std::to_string(got));
  }
}

using TermMap = SparsePolynomial::TermMap;

TermMap multiply_linear(const TermMap& poly, const std::vector<Rational>& linear) {
  TermMap out;
  for (const auto& [exp, coef] : poly) {
    for (std::size_t j = 0; j < linear.size(); ++j) {
      if (linear[j] == 0) continue;
      Exponent e = exp;
      ++e[j];
      out[e] += coef * linear[j];
    }
  }
  return out;
}

SparsePolynomial expand_product(const ProductFormPolynomial& p) {
  const int n = p.n_vars();
  TermMap poly{{Exponent(n, 0), Rational(1)}};
  const auto& a = p.matrix();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::vector<Rational> row(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) row[j] = a(i, j);
    poly = multiply_linear(poly, row);
  }
  return SparsePolynomial(n, std::move(poly), p.mode());
}

// det of a matrix of linear forms by dynamic programming over the set of
// columns already used; the sign of each placement is the number of used
// columns to its right.
SparsePolynomial expand_determinantal(const DeterminantalPolynomial& p) {
  const int m = p.n_vars();
  const int d = p.degree();
  const auto& mats = p.matrices();
  std::vector<TermMap> table(std::size_t(1) << d);
  table[0] = TermMap{{Exponent(m, 0), Rational(1)}};
  for (std::uint32_t used = 0; used < (1u << d); ++used) {
    if (table[used].empty()) continue;
    const int row = std::popcount(used);
    if (row == d) continue;
    for (int col = 0; col < d; ++col) {
      if (used & (1u << col)) continue;
      std::vector<Rational> linear(m);
      bool any = false;
      for (int v = 0; v < m; ++v) {
        linear[v] = mats[v](row, col);
        any = any || linear[v] != 0;
      }
      if (!any) continue;
      const int inversions = std::popcount(used >> (col + 1));
      TermMap contribution = multiply_linear(table[used], linear);
      TermMap& target = table[used | (1u << col)];
      for (auto& [e, c] : contribution) {
        if (inversions % 2) {
          target[e] -= c;
        } else {
          target[e] += c;
        }
      }
    }
    if (row > 0) table[used].clear();
  }
  TermMap result = std::move(table[(1u << d) - 1]);
  Rational max_abs = 0;
  for (const auto& [e, c] : result) max_abs = std::max(max_abs, Rational(abs(c)));
  for (auto it = result.begin(); it != result.end();) {
    if (it->second < 0) {
      // Only rounding-level negativity from nearly-PSD float inputs is tolerated.
      if (abs(it->second) > max_abs * Rational(1, 1000000000)) {
        throw InputError("determinantal expansion produced a negative coefficient; matrices are not PSD");
      }
      it = result.erase(it);
    } else {
      ++it;
    }
  }
  return SparsePolynomial(m, std::move(result), p.mode());
}

}  // namespace

// ---------------------------------------------------------------------------
// SparsePolynomial

SparsePolynomial::SparsePolynomial(int n_vars, TermMap terms, ScalarMode mode) : n_vars_(n_vars), mode_(mode) {
  if (n_vars < 1) throw InputError("polynomial needs at least one variable");
  bool first = true;
  for (auto& [exp, coef] : terms) {
    if (static_cast<int>(exp.size()) != n_vars) {
      throw InputError("exponent vector length " + std::to_string(exp.size()) + " != n_vars " +
                       std::to_string(n_vars));
    }
    if (coef == 0) continue;
    if (coef < 0) throw InputError("coefficients must be nonnegative, got " + to_string(coef));
    int total = 0;
    for (int e : exp) {
      if (e < 0) throw InputError("negative exponent");
      total += e;
    }
    if (first) {
      degree_ = total;
      first = false;
    } else if (total != degree_) {
      throw InputError("polynomial is not homogeneous: term degrees " + std::to_string(degree_) + " and " +
                       std::to_string(total));
    }
    terms_.emplace(exp, coef);
  }
  if (terms_.empty()) throw InputError("polynomial is identically zero");
  if (degree_ < 1) throw InputError("polynomial degree must be positive");
  exponents_.reserve(terms_.size());
  real_coefficients_.reserve(terms_.size());
  for (const auto& [exp, coef] : terms_) {
    exponents_.push_back(exp);
    real_coefficients_.push_back(coef.get_d());
  }
}

SparsePolynomial SparsePolynomial::from_terms(int n_vars, const std::vector<std::pair<Exponent, Rational>>& terms,
                                              ScalarMode mode) {
  TermMap map;
  for (const auto& [exp, coef] : terms) {
    if (!map.emplace(exp, coef).second) throw InputError("duplicate exponent vector in term list");
  }
  return SparsePolynomial(n_vars, std::move(map), mode);
}

Rational SparsePolynomial::coefficient(const Exponent& exponent) const {
  auto it = terms_.find(exponent);
  return it == terms_.end() ? Rational(0) : it->second;
}

double SparsePolynomial::evaluate(std::span<const double> x) const {
  check_dims(n_vars_, x.size());
  return sparse_eval<double>(exponents_, real_coefficients_, n_vars_, degree_, x);
}

Complex SparsePolynomial::evaluate(std::span<const Complex> x) const {
  check_dims(n_vars_, x.size());
  std::vector<Complex> coefs(real_coefficients_.begin(), real_coefficients_.end());
  return sparse_eval<Complex>(exponents_, coefs, n_vars_, degree_, x);
}

Rational SparsePolynomial::evaluate(std::span<const Rational> x) const {
  check_dims(n_vars_, x.size());
  std::vector<Rational> coefs;
  coefs.reserve(terms_.size());
  for (const auto& [e, c] : terms_) coefs.push_back(c);
  return sparse_eval<Rational>(exponents_, coefs, n_vars_, degree_, x);
}

// ---------------------------------------------------------------------------
// ProductFormPolynomial

ProductFormPolynomial::ProductFormPolynomial(RationalMatrix matrix, ScalarMode mode)
    : matrix_(std::move(matrix)), mode_(mode) {
  if (!matrix_.square() || matrix_.rows() == 0) throw InputError("product-form matrix must be square and nonempty");
  for (std::size_t i = 0; i < matrix_.rows(); ++i) {
    bool nonzero = false;
    for (std::size_t j = 0; j < matrix_.cols(); ++j) {
      if (matrix_(i, j) < 0) {
        throw InputError("product-form matrix has negative entry at (" + std::to_string(i) + "," +
                         std::to_string(j) + ")");
      }
      nonzero = nonzero || matrix_(i, j) != 0;
    }
    if (!nonzero) throw InputError("product-form matrix has all-zero row " + std::to_string(i));
  }
  real_matrix_ = to_real(matrix_);
}

ProductFormPolynomial::ProductFormPolynomial(const RealMatrix& matrix)
    : ProductFormPolynomial(to_exact(matrix), ScalarMode::floating) {}

double ProductFormPolynomial::evaluate(std::span<const double> x) const {
  check_dims(n_vars(), x.size());
  return product_eval<double>(real_matrix_, x);
}

Complex ProductFormPolynomial::evaluate(std::span<const Complex> x) const {
  check_dims(n_vars(), x.size());
  return product_eval<Complex>(real_matrix_, x);
}

Rational ProductFormPolynomial::evaluate(std::span<const Rational> x) const {
  check_dims(n_vars(), x.size());
  return product_eval<Rational>(matrix_, x);
}

// ---------------------------------------------------------------------------
// DeterminantalPolynomial

DeterminantalPolynomial::DeterminantalPolynomial(std::vector<RationalMatrix> matrices, ScalarMode mode)
    : matrices_(std::move(matrices)), mode_(mode) {
  if (matrices_.empty()) throw InputError("determinantal polynomial needs at least one matrix");
  const std::size_t d = matrices_.front().rows();
  if (d == 0) throw InputError("determinantal matrices must be nonempty");
  RationalMatrix sum(d, d);
  for (std::size_t k = 0; k < matrices_.size(); ++k) {
    const auto& a = matrices_[k];
    if (a.rows() != d || a.cols() != d) {
      throw InputError("determinantal matrix " + std::to_string(k) + " is not " + std::to_string(d) + "x" +
                       std::to_string(d));
    }
    RealMatrix real = to_real(a);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        if (std::abs(real(i, j) - real(j, i)) > kSymmetryTolerance) {
          throw InputError("determinantal matrix " + std::to_string(k) + " is not symmetric");
        }
        sum(i, j) += a(i, j);
      }
    }
    if (linalg::min_eigenvalue_symmetric(linalg::to_eigen(real)) < -kPsdTolerance) {
      throw InputError("determinantal matrix " + std::to_string(k) + " is not positive semidefinite");
    }
    real_matrices_.push_back(std::move(real));
  }
  if (linalg::determinant(sum) == 0) {
    throw InputError("determinantal polynomial is identically zero (matrices share a common kernel)");
  }
}

DeterminantalPolynomial::DeterminantalPolynomial(const std::vector<RealMatrix>& matrices)
    : DeterminantalPolynomial(
          [&] {
            std::vector<RationalMatrix> exact;
            exact.reserve(matrices.size());
            for (const auto& m : matrices) exact.push_back(to_exact(m));
            return exact;
          }(),
          ScalarMode::floating) {}

double DeterminantalPolynomial::evaluate(std::span<const double> x) const {
  check_dims(n_vars(), x.size());
  const std::size_t d = matrices_.front().rows();
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
  for (std::size_t k = 0; k < real_matrices_.size(); ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) += x[k] * real_matrices_[k](i, j);
  return linalg::determinant(m);
}

Complex DeterminantalPolynomial::evaluate(std::span<const Complex> x) const {
  check_dims(n_vars(), x.size());
  const std::size_t d = matrices_.front().rows();
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
  for (std::size_t k = 0; k < real_matrices_.size(); ++k)
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) += x[k] * real_matrices_[k](i, j);
  return linalg::determinant(m);
}

Rational DeterminantalPolynomial::evaluate(std::span<const Rational> x) const {
  check_dims(n_vars(), x.size());
  const std::size_t d = matrices_.front().rows();
  RationalMatrix m(d, d);
  for (std::size_t k = 0; k < matrices_.size(); ++k) {
    if (x[k] == 0) continue;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) m(i, j) += x[k] * matrices_[k](i, j);
  }
  return linalg::determinant(std::move(m));
}

// ---------------------------------------------------------------------------
// Variant helpers

int n_vars(const Polynomial& p) {
  return std::visit([](const auto& q) { return q.n_vars(); }, p);
}

int degree(const Polynomial& p) {
  return std::visit([](const auto& q) { return q.degree(); }, p);
}

ScalarMode mode(const Polynomial& p) {
  return std::visit([](const auto& q) { return q.mode(); }, p);
}

double evaluate(const Polynomial& p, std::span<const double> x) {
  return std::visit([&](const auto& q) { return q.evaluate(x); }, p);
}

Complex evaluate(const Polynomial& p, std::span<const Complex> x) {
  return std::visit([&](const auto& q) { return q.evaluate(x); }, p);
}

Rational evaluate(const Polynomial& p, std::span<const Rational> x) {
  return std::visit([&](const auto& q) { return q.evaluate(x); }, p);
}

SparsePolynomial expand(const Polynomial& p, int cap) {
  if (const auto* sparse = std::get_if<SparsePolynomial>(&p)) return *sparse;
  const int size = std::max(n_vars(p), degree(p));
  if (size > cap) {
    throw ResourceError("expansion refused: dimension " + std::to_string(size) + " exceeds cap " +
                        std::to_string(cap));
  }
  if (const auto* product = std::get_if<ProductFormPolynomial>(&p)) return expand_product(*product);
  return expand_determinantal(std::get<DeterminantalPolynomial>(p));
}

SparsePolynomial derivative_reduce(const SparsePolynomial& q) {
  if (q.n_vars() < 2) throw InputError("derivative_reduce needs at least two variables");
  if (q.degree() != q.n_vars()) throw InputError("derivative_reduce needs degree == n_vars");
  SparsePolynomial::TermMap reduced;
  for (const auto& [exp, coef] : q.terms()) {
    if (exp[0] != 1) continue;
    reduced.emplace(Exponent(exp.begin() + 1, exp.end()), coef);
  }
  if (reduced.empty()) throw InputError("derivative in the first variable vanishes identically");
  return SparsePolynomial(q.n_vars() - 1, std::move(reduced), q.mode());
}

int variable_degree(const Polynomial& p, int i) {
  if (i < 0 || i >= n_vars(p)) throw InputError("variable index " + std::to_string(i) + " out of range");
  if (const auto* sparse = std::get_if<SparsePolynomial>(&p)) {
    int best = 0;
    for (const auto& exp : sparse->exponents()) best = std::max(best, exp[i]);
    return best;
  }
  if (const auto* product = std::get_if<ProductFormPolynomial>(&p)) {
    int count = 0;
    const auto& a = product->matrix();
    for (std::size_t r = 0; r < a.rows(); ++r) count += a(r, i) > 0;
    return count;
  }
  const auto& det = std::get<DeterminantalPolynomial>(p);
  if (det.mode() == ScalarMode::exact) return linalg::rank(det.matrices()[i]);
  return linalg::symmetric_rank(linalg::to_eigen(det.real_matrices()[i]));
}

}  // namespace polycap
