#include "polycap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numbers>
#include <random>

#include "polycap/errors.hpp"

namespace polycap {
namespace {

constexpr double kComplexStep = 1e-20;
constexpr double kHessianStep = 1e-4;
constexpr double kMaxStep = 5.0;

double log_value(const EvaluationOracle& p, std::span<const double> y) {
  std::vector<double> x(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) x[i] = std::exp(y[i]);
  const double v = p.evaluate(std::span<const double>(x));
  return v > 0.0 ? std::log(v) : -std::numeric_limits<double>::infinity();
}

// Complex-step gradient: d/dy_j log p(exp(y)) = Im log p(x with x_j -> x_j e^{ih}) / h.
Eigen::VectorXd complex_step_gradient(const EvaluationOracle& p, std::span<const double> y) {
  const std::size_t n = y.size();
  std::vector<Complex> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = Complex(std::exp(y[i]), 0.0);
  const Complex rotation(std::cos(kComplexStep), std::sin(kComplexStep));
  Eigen::VectorXd g(n);
  for (std::size_t j = 0; j < n; ++j) {
    const Complex saved = z[j];
    z[j] = saved * rotation;
    const Complex v = p.evaluate(std::span<const Complex>(z));
    g[j] = std::arg(v) / kComplexStep;
    z[j] = saved;
  }
  return g;
}

LogDerivatives oracle_derivatives(const EvaluationOracle& p, std::span<const double> y, bool with_hessian) {
  LogDerivatives out;
  out.value = log_value(p, y);
  out.gradient = complex_step_gradient(p, y);
  if (with_hessian) {
    const std::size_t n = y.size();
    out.hessian.resize(n, n);
    std::vector<double> shifted(y.begin(), y.end());
    for (std::size_t k = 0; k < n; ++k) {
      shifted[k] = y[k] + kHessianStep;
      Eigen::VectorXd plus = complex_step_gradient(p, shifted);
      shifted[k] = y[k] - kHessianStep;
      Eigen::VectorXd minus = complex_step_gradient(p, shifted);
      shifted[k] = y[k];
      out.hessian.col(k) = (plus - minus) / (2.0 * kHessianStep);
    }
    out.hessian = 0.5 * (out.hessian + out.hessian.transpose()).eval();
  }
  return out;
}

Eigen::VectorXd project(const Eigen::VectorXd& v) { return v.array() - v.mean(); }

}  // namespace

std::string to_string(CapacityStatus status) {
  switch (status) {
    case CapacityStatus::converged:
      return "converged";
    case CapacityStatus::iteration_cap:
      return "iteration-cap";
    case CapacityStatus::degenerate_zero:
      return "degenerate-zero";
  }
  return "unknown";
}

LogDerivatives log_objective(const EvaluationOracle& p, std::span<const double> y, bool with_hessian,
                             DerivativeSource source) {
  if (source != DerivativeSource::oracle) {
    if (auto analytic = p.log_derivatives(y, with_hessian)) return *std::move(analytic);
    if (source == DerivativeSource::analytic) {
      throw InputError("oracle provides no analytic log-derivatives at this point");
    }
  }
  return oracle_derivatives(p, y, with_hessian);
}

CapacityResult capacity_minimize(const EvaluationOracle& p, const CapacityOptions& options) {
  const int n = p.n_vars();
  if (!(options.tol > 0.0)) throw InputError("capacity tolerance must be positive");
  std::vector<double> ones(n, 1.0);
  if (!(p.evaluate(std::span<const double>(ones)) > 0.0)) {
    throw InputError("capacity needs p(1,...,1) > 0");
  }

  CapacityResult result;
  if (n == 1) {
    result.minimizer = {1.0};
    result.value = p.evaluate(std::span<const double>(result.minimizer));
    result.status = CapacityStatus::converged;
    return result;
  }

  const bool newton = options.method == CapacityMethod::newton;
  auto evaluate_at = [&](const Eigen::VectorXd& y, bool hessian) {
    return log_objective(p, std::span<const double>(y.data(), y.size()), hessian, options.derivatives);
  };

  Eigen::VectorXd y = Eigen::VectorXd::Zero(n);
  LogDerivatives current = evaluate_at(y, newton);
  const double f0 = current.value;
  std::deque<double> recent_norms;

  int it = 0;
  for (; it < options.max_iter; ++it) {
    Eigen::VectorXd g = project(current.gradient);
    const double gnorm = g.norm();
    result.gradient_norm = gnorm;
    if (gnorm <= options.tol) {
      result.status = CapacityStatus::converged;
      break;
    }
    recent_norms.push_back(gnorm);
    if (recent_norms.size() > 6) recent_norms.pop_front();
    if (f0 - current.value > options.degenerate_drop && recent_norms.size() == 6 &&
        gnorm >= 0.5 * recent_norms.front()) {
      result.status = CapacityStatus::degenerate_zero;
      break;
    }

    Eigen::VectorXd direction = -g;
    bool used_newton = false;
    if (newton) {
      // Restricted to sum(y) = 0 the Hessian is PHP; adding 11^T/n makes
      // it invertible without changing the step inside the hyperplane.
      Eigen::MatrixXd h = current.hessian;
      Eigen::VectorXd row_mean = h.rowwise().mean();
      Eigen::VectorXd col_mean = h.colwise().mean().transpose();
      const double all_mean = h.mean();
      Eigen::MatrixXd ph = h;
      ph.colwise() -= row_mean;
      ph.rowwise() -= col_mean.transpose();
      ph.array() += all_mean;
      ph.array() += 1.0 / n;
      Eigen::LDLT<Eigen::MatrixXd> ldlt(ph);
      const auto d = ldlt.vectorD();
      const double dmax = d.cwiseAbs().maxCoeff();
      if (ldlt.info() == Eigen::Success && d.minCoeff() > 1e-13 * std::max(1.0, dmax)) {
        Eigen::VectorXd step = project(ldlt.solve(-g));
        if (step.dot(g) < 0.0) {
          direction = step;
          used_newton = true;
        }
      }
    }

    auto line_search = [&](Eigen::VectorXd dir, Eigen::VectorXd& y_new, LogDerivatives& next) {
      const double longest = dir.cwiseAbs().maxCoeff();
      if (longest > kMaxStep) dir *= kMaxStep / longest;
      const double slope = dir.dot(current.gradient);
      double t = 1.0;
      for (int k = 0; k < 60; ++k, t *= 0.5) {
        y_new = project(y + t * dir);
        const double f = log_value(p, std::span<const double>(y_new.data(), y_new.size()));
        if (std::isfinite(f) && f <= current.value + 1e-4 * t * slope) {
          next = evaluate_at(y_new, newton);
          return true;
        }
      }
      // Near the optimum the predicted decrease falls below rounding in f;
      // accept the full step when it still shrinks the gradient.
      if (std::abs(slope) < 1e-12 * (1.0 + std::abs(current.value))) {
        y_new = project(y + dir);
        next = evaluate_at(y_new, newton);
        if (std::isfinite(next.value) && project(next.gradient).norm() < project(current.gradient).norm()) {
          return true;
        }
      }
      return false;
    };

    Eigen::VectorXd y_new;
    LogDerivatives next;
    bool moved = line_search(direction, y_new, next);
    if (!moved && used_newton) moved = line_search(-g, y_new, next);
    if (!moved) break;
    y = y_new;
    current = std::move(next);
  }
  result.iterations = it;

  if (result.status == CapacityStatus::degenerate_zero) {
    result.value = 0.0;
    result.minimizer.assign(y.data(), y.data() + n);
    for (double& v : result.minimizer) v = std::exp(v);
    return result;
  }
  result.gradient_norm = project(current.gradient).norm();
  if (result.gradient_norm <= options.tol) result.status = CapacityStatus::converged;
  result.minimizer.resize(n);
  for (int i = 0; i < n; ++i) result.minimizer[i] = std::exp(y[i]);
  result.value = p.evaluate(std::span<const double>(result.minimizer));
  return result;
}

ScalingResult sinkhorn_scale(const RealMatrix& a, double tol, int max_iter) {
  if (!a.square() || a.rows() == 0) throw InputError("sinkhorn needs a nonempty square matrix");
  const std::size_t n = a.rows();
  for (double v : a.data()) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw InputError("sinkhorn needs finite nonnegative entries");
  }
  std::vector<double> u(n, 1.0), v(n, 1.0);  // B = diag(u) A diag(v)
  std::vector<double> rows(n), cols(n);
  auto deviation = [&]() {
    std::fill(rows.begin(), rows.end(), 0.0);
    std::fill(cols.begin(), cols.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        const double b = u[i] * a(i, j) * v[j];
        rows[i] += b;
        cols[j] += b;
      }
    double dev = 0.0;
    for (std::size_t i = 0; i < n; ++i) dev = std::max({dev, std::abs(rows[i] - 1.0), std::abs(cols[i] - 1.0)});
    return dev;
  };

  ScalingResult result;
  double dev = deviation();
  int it = 0;
  while (dev > tol && it < max_iter) {
    for (std::size_t i = 0; i < n; ++i) {
      if (rows[i] == 0.0) throw InputError("sinkhorn: zero row " + std::to_string(i));
      u[i] /= rows[i];
    }
    std::fill(cols.begin(), cols.end(), 0.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) cols[j] += u[i] * a(i, j) * v[j];
    for (std::size_t j = 0; j < n; ++j) {
      if (cols[j] == 0.0) throw InputError("sinkhorn: zero column " + std::to_string(j));
      v[j] /= cols[j];
    }
    ++it;
    dev = deviation();
  }
  result.iterations = it;
  result.max_deviation = dev;
  result.status = dev <= tol ? ScalingStatus::converged : ScalingStatus::iteration_cap;
  result.scaled_matrix = RealMatrix(n, n);
  double log_capacity = 0.0;
  result.row_scalers.resize(n);
  result.col_scalers.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    result.row_scalers[i] = 1.0 / u[i];
    result.col_scalers[i] = 1.0 / v[i];
    log_capacity -= std::log(u[i]) + std::log(v[i]);
    for (std::size_t j = 0; j < n; ++j) result.scaled_matrix(i, j) = u[i] * a(i, j) * v[j];
  }
  result.capacity = std::exp(log_capacity);
  return result;
}

double complex_capacity_sample(const EvaluationOracle& p, const ComplexSampleOptions& options) {
  const int n = p.n_vars();
  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> log_radius(0.0, 0.5);
  std::uniform_real_distribution<double> phase(-0.49 * std::numbers::pi, 0.49 * std::numbers::pi);

  // A point is parametrized by log Re(z_i) and the phase of z_i; |p(z)| is
  // normalized by prod Re(z_i) using homogeneity.
  auto normalized = [&](const std::vector<double>& logs, const std::vector<double>& phases) {
    std::vector<Complex> z(n);
    double log_re = 0.0;
    for (int i = 0; i < n; ++i) {
      const double re = std::exp(logs[i]);
      z[i] = Complex(re, options.real_only ? 0.0 : re * std::tan(phases[i]));
      log_re += logs[i];
    }
    return std::abs(p.evaluate(std::span<const Complex>(z))) * std::exp(-log_re);
  };

  const int global = options.refine ? std::max(1, options.samples / 2) : std::max(1, options.samples);
  std::vector<double> best_logs(n, 0.0), best_phases(n, 0.0);
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> logs(n), phases(n);
  for (int s = 0; s < global; ++s) {
    for (int i = 0; i < n; ++i) {
      logs[i] = log_radius(rng);
      phases[i] = options.real_only ? 0.0 : phase(rng);
    }
    const double v = normalized(logs, phases);
    if (v < best) {
      best = v;
      best_logs = logs;
      best_phases = phases;
    }
  }
  if (options.refine) {
    std::normal_distribution<double> unit(0.0, 1.0);
    double radius = 0.3;
    const double limit = 0.49 * std::numbers::pi;
    for (int s = global; s < options.samples; ++s) {
      for (int i = 0; i < n; ++i) {
        logs[i] = best_logs[i] + radius * unit(rng);
        phases[i] = options.real_only ? 0.0 : std::clamp(best_phases[i] + radius * unit(rng), -limit, limit);
      }
      const double v = normalized(logs, phases);
      if (v < best) {
        best = v;
        best_logs = logs;
        best_phases = phases;
      } else {
        radius = std::max(1e-6, radius * 0.98);
      }
    }
  }
  return best;
}

}  // namespace polycap
