#pragma once

#include <Eigen/Dense>

#include <atomic>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "polycap/polynomial.hpp"

namespace polycap {

/// Value, gradient and (optionally) Hessian of y -> log p(exp(y)).
struct LogDerivatives {
  double value = 0.0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
};

/// Evaluate-at-a-point access to a homogeneous polynomial.
///
/// Evaluation is pure and thread-safe; the only mutable state is an atomic
/// call counter that every public evaluate() increments once.
class EvaluationOracle {
 public:
  EvaluationOracle() = default;
  EvaluationOracle(const EvaluationOracle&) = delete;
  EvaluationOracle& operator=(const EvaluationOracle&) = delete;
  virtual ~EvaluationOracle() = default;

  virtual int n_vars() const = 0;
  virtual int degree() const = 0;
  virtual bool supports_exact() const { return false; }

  double evaluate(std::span<const double> x) const;
  Complex evaluate(std::span<const Complex> x) const;
  /// Throws InputError when the oracle has no exact evaluation.
  Rational evaluate(std::span<const Rational> x) const;

  double evaluate(const std::vector<double>& x) const { return evaluate(std::span<const double>(x)); }
  Complex evaluate(const std::vector<Complex>& x) const { return evaluate(std::span<const Complex>(x)); }
  Rational evaluate(const std::vector<Rational>& x) const { return evaluate(std::span<const Rational>(x)); }

  /// Closed-form derivatives of the log objective when the representation
  /// admits them; counts as one call. Default: none.
  virtual std::optional<LogDerivatives> log_derivatives(std::span<const double> y, bool with_hessian) const;

  std::uint64_t call_count() const { return calls_.load(std::memory_order_relaxed); }
  void reset_call_count() const { calls_.store(0, std::memory_order_relaxed); }

 protected:
  virtual double evaluate_real(std::span<const double> x) const = 0;
  virtual Complex evaluate_complex(std::span<const Complex> x) const = 0;
  virtual Rational evaluate_exact(std::span<const Rational> x) const;

  void count_call() const { calls_.fetch_add(1, std::memory_order_relaxed); }

 private:
  void check_size(std::size_t size) const;

  mutable std::atomic<std::uint64_t> calls_{0};
};

/// Oracle over an explicit Polynomial value.
class PolynomialOracle final : public EvaluationOracle {
 public:
  explicit PolynomialOracle(Polynomial polynomial) : polynomial_(std::move(polynomial)) {}

  const Polynomial& polynomial() const { return polynomial_; }

  int n_vars() const override { return polycap::n_vars(polynomial_); }
  int degree() const override { return polycap::degree(polynomial_); }
  bool supports_exact() const override { return true; }

  std::optional<LogDerivatives> log_derivatives(std::span<const double> y, bool with_hessian) const override;

 protected:
  double evaluate_real(std::span<const double> x) const override { return polycap::evaluate(polynomial_, x); }
  Complex evaluate_complex(std::span<const Complex> x) const override { return polycap::evaluate(polynomial_, x); }
  Rational evaluate_exact(std::span<const Rational> x) const override { return polycap::evaluate(polynomial_, x); }

 private:
  Polynomial polynomial_;
};

/// Oracle over arbitrary callables; used for polynomials outside the three
/// nonnegative representations (e.g. x0^2 - x1^2 - x2^2).
class FunctionOracle final : public EvaluationOracle {
 public:
  using RealFn = std::function<double(std::span<const double>)>;
  using ComplexFn = std::function<Complex(std::span<const Complex>)>;
  using ExactFn = std::function<Rational(std::span<const Rational>)>;

  FunctionOracle(int n_vars, int degree, RealFn real, ComplexFn complex, ExactFn exact = {})
      : n_vars_(n_vars), degree_(degree), real_(std::move(real)), complex_(std::move(complex)),
        exact_(std::move(exact)) {}

  /// Instantiates one generic callable (taking a span of any scalar) for
  /// all three scalar types. The callable must return a concrete scalar:
  /// GMP expression templates hold references to temporaries and dangle.
  template <class F>
  static FunctionOracle from_generic(int n_vars, int degree, F f) {
    return FunctionOracle(
        n_vars, degree, [f](std::span<const double> x) -> double { return f(x); },
        [f](std::span<const Complex> x) -> Complex { return f(x); },
        [f](std::span<const Rational> x) -> Rational { return Rational(f(x)); });
  }

  FunctionOracle(FunctionOracle&& other) noexcept
      : n_vars_(other.n_vars_), degree_(other.degree_), real_(std::move(other.real_)),
        complex_(std::move(other.complex_)), exact_(std::move(other.exact_)) {}

  int n_vars() const override { return n_vars_; }
  int degree() const override { return degree_; }
  bool supports_exact() const override { return static_cast<bool>(exact_); }

 protected:
  double evaluate_real(std::span<const double> x) const override { return real_(x); }
  Complex evaluate_complex(std::span<const Complex> x) const override { return complex_(x); }
  Rational evaluate_exact(std::span<const Rational> x) const override;

 private:
  int n_vars_;
  int degree_;
  RealFn real_;
  ComplexFn complex_;
  ExactFn exact_;
};

}  // namespace polycap
