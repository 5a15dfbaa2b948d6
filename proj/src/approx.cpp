#include "polycap/approx.hpp"

#include <algorithm>
#include <cmath>

#include "polycap/errors.hpp"
#include "polycap/parallel.hpp"

namespace polycap {

PkOracle::PkOracle(const EvaluationOracle& base, int k) : base_(base), k_(k) {
  const int n = base.n_vars();
  if (k < 1 || k > n - 1) {
    throw InputError("p_k needs 1 <= k <= n - 1 (k = " + std::to_string(k) + ", n = " + std::to_string(n) + ")");
  }
  if (k > base.degree()) throw InputError("p_k needs k <= degree");
  if (k > 30) throw ResourceError("p_k: 2^k polarization terms exceed the cap");
  const int m = (n - k + 1) / 2 + 1;
  std::vector<Rational> u(m);
  for (int j = 0; j < m; ++j) {
    Rational eps(1);
    eps /= Rational(mpz_class(1) << static_cast<unsigned>(j + 1));
    eps_.push_back(eps);
    u[j] = eps * eps;
  }
  for (int j = 0; j < m; ++j) {
    Rational w(1);
    for (int l = 0; l < m; ++l) {
      if (l != j) w *= u[l] / (u[l] - u[j]);
    }
    weights_.push_back(w);
    weights_real_.push_back(w.get_d());
    eps_real_.push_back(eps_[j].get_d());
    condition_ += std::abs(w.get_d());
  }
}

std::uint64_t PkOracle::base_calls_per_evaluation() const {
  return (std::uint64_t{1} << k_) * weights_.size();
}

template <class Scalar>
Scalar PkOracle::extrapolate(std::span<const Scalar> tail) const {
  const int n = base_.n_vars();
  const std::size_t terms = std::size_t{1} << k_;
  Scalar total(0);
  for (std::size_t j = 0; j < weights_.size(); ++j) {
    Scalar eps;
    Scalar weight;
    if constexpr (std::is_same_v<Scalar, Rational>) {
      eps = eps_[j];
      weight = weights_[j];
    } else {
      eps = Scalar(eps_real_[j]);
      weight = Scalar(weights_real_[j]);
    }
    const Scalar sum = tree_sum<Scalar>(terms, [&](std::size_t mask) {
      std::vector<Scalar> x(n);
      int negatives = 0;
      for (int i = 0; i < k_; ++i) {
        const bool negative = (mask >> i) & 1U;
        negatives += negative;
        x[i] = negative ? Scalar(-eps) : eps;
      }
      std::copy(tail.begin(), tail.end(), x.begin() + k_);
      const Scalar value = base_.evaluate(std::span<const Scalar>(x));
      return (negatives % 2 == 0) ? value : Scalar(-value);
    });
    // f(eps) / eps^k with f = 2^-k * sum
    Scalar scale = Scalar(1);
    for (int i = 0; i < k_; ++i) scale *= Scalar(2) * eps;
    total += weight * (sum / scale);
  }
  return total;
}

double PkOracle::evaluate_real(std::span<const double> x) const { return extrapolate(x); }
Complex PkOracle::evaluate_complex(std::span<const Complex> x) const { return extrapolate(x); }
Rational PkOracle::evaluate_exact(std::span<const Rational> x) const { return extrapolate(x); }

double approx_guarantee_factor(int m) {
  if (m < 0) throw InputError("guarantee factor needs m >= 0");
  // m^m / m! = prod_{i=1}^{m} m / i
  double factor = 1.0;
  for (int i = 1; i <= m; ++i) factor *= static_cast<double>(m) / i;
  return factor;
}

namespace {

ApproxResult run_estimate(const EvaluationOracle& target, const EvaluationOracle& base, int k,
                          CapacityOptions options) {
  options.derivatives = DerivativeSource::oracle;
  const std::uint64_t before = base.call_count();
  ApproxResult result;
  result.k_used = k;
  result.guarantee_factor = approx_guarantee_factor(target.n_vars());
  result.capacity_result = capacity_minimize(target, options);
  result.estimate =
      result.capacity_result.status == CapacityStatus::degenerate_zero ? 0.0 : result.capacity_result.value;
  result.oracle_calls = base.call_count() - before;
  return result;
}

}  // namespace

ApproxResult capacity_estimate(const EvaluationOracle& p, CapacityOptions options) {
  if (p.degree() != p.n_vars()) throw InputError("estimate needs degree == number of variables");
  return run_estimate(p, p, 0, options);
}

ApproxResult improved_estimate(const EvaluationOracle& p, int k, CapacityOptions options) {
  if (k == 0) return capacity_estimate(p, options);
  if (p.degree() != p.n_vars()) throw InputError("estimate needs degree == number of variables");
  if (k < 0 || k >= p.n_vars()) throw InputError("k must satisfy 0 <= k < n");
  const PkOracle pk(p, k);
  options.tol = std::max(options.tol, kPkDefaultTol);
  return run_estimate(pk, p, k, options);
}

}  // namespace polycap
