#pragma once

#include <cstdint>
#include <vector>

#include "polycap/capacity.hpp"
#include "polycap/oracle.hpp"

namespace polycap {

/// Oracle for p_k(x_{k+1}, ..., x_n) = d^k/dx_1..dx_k p(0, ..., 0, x_{k+1}, ..., x_n)
/// built from evaluations of p alone.
///
/// With f(eps) = 2^-k sum_{b in {+-1}^k} p(eps b, tail) prod b_i, the ratio
/// f(eps) / eps^k is a polynomial in eps^2 of degree <= floor((n-k)/2) whose
/// constant term is p_k(tail). It is sampled at eps = 2^-1, ..., 2^-m with
/// m = ceil((n-k)/2) + 1 and extrapolated to eps = 0 with Lagrange weights in
/// u = eps^2, exactly in rational arithmetic.
///
/// The base oracle must outlive this object.
class PkOracle final : public EvaluationOracle {
 public:
  /// Throws InputError unless 1 <= k <= base.n_vars() - 1 and k <= base.degree().
  PkOracle(const EvaluationOracle& base, int k);

  int n_vars() const override { return base_.n_vars() - k_; }
  int degree() const override { return base_.degree() - k_; }
  bool supports_exact() const override { return base_.supports_exact(); }

  int k() const { return k_; }
  int sample_count() const { return static_cast<int>(weights_.size()); }
  /// Base-oracle evaluations per call: 2^k * sample_count().
  std::uint64_t base_calls_per_evaluation() const;
  /// Sum of |Lagrange weights|; bounds the amplification of rounding error.
  double extrapolation_condition() const { return condition_; }

 protected:
  double evaluate_real(std::span<const double> x) const override;
  Complex evaluate_complex(std::span<const Complex> x) const override;
  Rational evaluate_exact(std::span<const Rational> x) const override;

 private:
  template <class Scalar>
  Scalar extrapolate(std::span<const Scalar> tail) const;

  const EvaluationOracle& base_;
  int k_;
  std::vector<Rational> eps_;
  std::vector<Rational> weights_;
  std::vector<double> eps_real_;
  std::vector<double> weights_real_;
  double condition_ = 0.0;
};

struct ApproxResult {
  double estimate = 0.0;          // F(p) = computed capacity (0 when degenerate)
  double guarantee_factor = 1.0;  // (n-k)^(n-k) / (n-k)!
  std::uint64_t oracle_calls = 0; // evaluations of the base oracle
  int k_used = 0;
  CapacityResult capacity_result;
};

/// (m^m) / m!, the factor by which capacity may exceed the mixed partial of
/// a degree-m P-hyperbolic polynomial in m variables.
double approx_guarantee_factor(int m);

/// Capacity of p computed from evaluations only. Requires degree == n_vars.
/// Guarantee: d^n p <= estimate <= (n^n / n!) d^n p.
ApproxResult capacity_estimate(const EvaluationOracle& p, CapacityOptions options = {});

inline constexpr double kPkDefaultTol = 1e-8;

/// Capacity of p_k; guarantee factor (n-k)^(n-k) / (n-k)!. k = 0 delegates to
/// capacity_estimate. The gradient tolerance is raised to at least
/// kPkDefaultTol because p_k values carry extrapolation error.
ApproxResult improved_estimate(const EvaluationOracle& p, int k, CapacityOptions options = {});

}  // namespace polycap
