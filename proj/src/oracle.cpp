#include "polycap/oracle.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "polycap/errors.hpp"
#include "polycap/linalg.hpp"

namespace polycap {
namespace {

LogDerivatives product_log_derivatives(const ProductFormPolynomial& p, std::span<const double> y, bool hessian) {
  const auto& a = p.real_matrix();
  const int n = p.n_vars();
  const double shift = *std::max_element(y.begin(), y.end());
  Eigen::VectorXd x(n);
  for (int j = 0; j < n; ++j) x[j] = std::exp(y[j] - shift);

  LogDerivatives out;
  out.value = 0.0;
  out.gradient = Eigen::VectorXd::Zero(n);
  if (hessian) out.hessian = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd w(n);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < n; ++j) {
      w[j] = a(i, j) * x[j];
      s += w[j];
    }
    out.value += std::log(s) + shift;
    w /= s;
    out.gradient += w;
    if (hessian) {
      out.hessian.diagonal() += w;
      out.hessian.noalias() -= w * w.transpose();
    }
  }
  return out;
}

LogDerivatives sparse_log_derivatives(const SparsePolynomial& p, std::span<const double> y, bool hessian) {
  const int n = p.n_vars();
  const auto& exps = p.exponents();
  const auto& coefs = p.real_coefficients();
  std::vector<double> logw(exps.size());
  double top = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 0; t < exps.size(); ++t) {
    double v = std::log(coefs[t]);
    for (int i = 0; i < n; ++i) v += exps[t][i] * y[i];
    logw[t] = v;
    top = std::max(top, v);
  }
  double total = 0.0;
  for (double& v : logw) {
    v = std::exp(v - top);
    total += v;
  }
  LogDerivatives out;
  out.value = top + std::log(total);
  out.gradient = Eigen::VectorXd::Zero(n);
  if (hessian) out.hessian = Eigen::MatrixXd::Zero(n, n);
  Eigen::VectorXd alpha(n);
  for (std::size_t t = 0; t < exps.size(); ++t) {
    const double pi = logw[t] / total;
    for (int i = 0; i < n; ++i) alpha[i] = exps[t][i];
    out.gradient += pi * alpha;
    if (hessian) out.hessian.noalias() += pi * alpha * alpha.transpose();
  }
  if (hessian) out.hessian.noalias() -= out.gradient * out.gradient.transpose();
  return out;
}

std::optional<LogDerivatives> determinantal_log_derivatives(const DeterminantalPolynomial& p,
                                                            std::span<const double> y, bool hessian) {
  const int m = p.n_vars();
  const int d = p.degree();
  const double shift = *std::max_element(y.begin(), y.end());
  std::vector<Eigen::MatrixXd> mats;
  mats.reserve(m);
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(d, d);
  Eigen::VectorXd x(m);
  for (int k = 0; k < m; ++k) {
    mats.push_back(linalg::to_eigen(p.real_matrices()[k]));
    x[k] = std::exp(y[k] - shift);
    sum += x[k] * mats.back();
  }
  Eigen::LLT<Eigen::MatrixXd> llt(sum);
  if (llt.info() != Eigen::Success) return std::nullopt;
  LogDerivatives out;
  const Eigen::MatrixXd l = llt.matrixL();
  out.value = 2.0 * l.diagonal().array().log().sum() + d * shift;
  std::vector<Eigen::MatrixXd> k_mats(m);
  out.gradient.resize(m);
  for (int k = 0; k < m; ++k) {
    k_mats[k] = llt.solve(mats[k]);
    out.gradient[k] = x[k] * k_mats[k].trace();
  }
  if (hessian) {
    out.hessian.resize(m, m);
    for (int i = 0; i < m; ++i) {
      for (int j = i; j < m; ++j) {
        const double cross = x[i] * x[j] * (k_mats[i].cwiseProduct(k_mats[j].transpose())).sum();
        out.hessian(i, j) = (i == j ? out.gradient[i] : 0.0) - cross;
        out.hessian(j, i) = out.hessian(i, j);
      }
    }
  }
  return out;
}

}  // namespace

void EvaluationOracle::check_size(std::size_t size) const {
  if (size != static_cast<std::size_t>(n_vars())) {
    throw InputError("dimension mismatch: oracle has " + std::to_string(n_vars()) + " variables, point has " +
                     std::to_string(size));
  }
}

double EvaluationOracle::evaluate(std::span<const double> x) const {
  check_size(x.size());
  count_call();
  return evaluate_real(x);
}

Complex EvaluationOracle::evaluate(std::span<const Complex> x) const {
  check_size(x.size());
  count_call();
  return evaluate_complex(x);
}

Rational EvaluationOracle::evaluate(std::span<const Rational> x) const {
  check_size(x.size());
  if (!supports_exact()) throw InputError("oracle does not support exact evaluation");
  count_call();
  return evaluate_exact(x);
}

std::optional<LogDerivatives> EvaluationOracle::log_derivatives(std::span<const double>, bool) const {
  return std::nullopt;
}

Rational EvaluationOracle::evaluate_exact(std::span<const Rational>) const {
  throw InputError("oracle does not support exact evaluation");
}

std::optional<LogDerivatives> PolynomialOracle::log_derivatives(std::span<const double> y, bool with_hessian) const {
  if (y.size() != static_cast<std::size_t>(n_vars())) throw InputError("dimension mismatch in log_derivatives");
  count_call();
  if (const auto* product = std::get_if<ProductFormPolynomial>(&polynomial_)) {
    return product_log_derivatives(*product, y, with_hessian);
  }
  if (const auto* sparse = std::get_if<SparsePolynomial>(&polynomial_)) {
    return sparse_log_derivatives(*sparse, y, with_hessian);
  }
  return determinantal_log_derivatives(std::get<DeterminantalPolynomial>(polynomial_), y, with_hessian);
}

Rational FunctionOracle::evaluate_exact(std::span<const Rational> x) const {
  if (!exact_) throw InputError("oracle does not support exact evaluation");
  return exact_(x);
}

}  // namespace polycap
