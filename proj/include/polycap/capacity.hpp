#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "polycap/matrix.hpp"
#include "polycap/oracle.hpp"

namespace polycap {

enum class CapacityStatus { converged, iteration_cap, degenerate_zero };

/// Where derivatives of f(y) = log p(exp(y)) come from. `oracle` uses only
/// evaluations (complex-step gradient, differenced Hessian); `analytic`
/// requires closed forms; `automatic` prefers closed forms when available.
enum class DerivativeSource { automatic, analytic, oracle };

enum class CapacityMethod { newton, gradient };

std::string to_string(CapacityStatus status);

struct CapacityOptions {
  double tol = 1e-10;  // on the 2-norm of the projected gradient
  int max_iter = 500;
  CapacityMethod method = CapacityMethod::newton;
  DerivativeSource derivatives = DerivativeSource::automatic;
  double degenerate_drop = 50.0;  // log-units of decrease that signal Cap = 0
};

struct CapacityResult {
  double value = 0.0;
  std::vector<double> minimizer;  // positive, product 1
  int iterations = 0;
  double gradient_norm = 0.0;
  CapacityStatus status = CapacityStatus::iteration_cap;
};

/// Cap(p) = inf { p(x) : x > 0, prod x_i = 1 }, computed as the minimum of
/// the convex function log p(exp(y)) over sum(y) = 0 by projected Newton
/// with backtracking, starting at y = 0.
///
/// Throws InputError when p(1,...,1) <= 0.
CapacityResult capacity_minimize(const EvaluationOracle& p, const CapacityOptions& options = {});

/// f, gradient and Hessian of y -> log p(exp(y)) from the chosen source.
LogDerivatives log_objective(const EvaluationOracle& p, std::span<const double> y, bool with_hessian,
                             DerivativeSource source = DerivativeSource::automatic);

enum class ScalingStatus { converged, iteration_cap };

struct ScalingResult {
  std::vector<double> row_scalers;  // diagonal of D1
  std::vector<double> col_scalers;  // diagonal of D2
  RealMatrix scaled_matrix;         // B with A = D1 B D2
  double capacity = 0.0;            // det(D1 D2)
  int iterations = 0;
  double max_deviation = 0.0;       // max |row or column sum of B - 1|
  ScalingStatus status = ScalingStatus::iteration_cap;
};

inline constexpr int kSinkhornMaxIter = 10000;

/// Alternating row/column normalization. Non-convergence (e.g. A without
/// total support) is reported through status, never thrown.
ScalingResult sinkhorn_scale(const RealMatrix& a, double tol = 1e-10, int max_iter = kSinkhornMaxIter);

struct ComplexSampleOptions {
  int samples = 4000;
  std::uint64_t seed = 0;
  bool real_only = false;  // sample only real positive points
  bool refine = true;      // spend half the budget on local random search
};

/// Sampled upper estimate of inf |p(z)| over Re z_i > 0, prod Re z_i = 1.
/// A diagnostic, not a certified bound.
double complex_capacity_sample(const EvaluationOracle& p, const ComplexSampleOptions& options = {});

}  // namespace polycap
