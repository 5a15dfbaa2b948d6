#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "polycap/oracle.hpp"

namespace polycap {

/// Zeros of t -> p(point - t * direction), with multiplicity.
struct RootProfile {
  std::vector<double> direction;
  std::vector<double> point;
  std::vector<Complex> roots;
  double max_imag = 0.0;
  double scale = 0.0;  // max |root|
  bool all_real = false;
  bool exact_path = false;  // coefficients interpolated exactly and made squarefree
};

inline constexpr double kRealRootTolerance = 1e-6;

/// Exact oracles: rational interpolation at t = 0..d, squarefree
/// factorization, companion eigenvalues per factor. Other oracles:
/// Chebyshev-node fit plus companion eigenvalues. Requires p(direction) != 0.
RootProfile root_profile(const EvaluationOracle& p, const std::vector<double>& point,
                         const std::vector<double>& direction);

/// Result of a sampling diagnostic. These are not proofs.
struct DiagnosticReport {
  std::string check;
  bool passed = false;
  int trials = 0;
  double worst_margin = 0.0;
  std::vector<double> witness;
  std::optional<RootProfile> worst_profile;
};

/// Roots along `direction` at `trials` random points; passes iff every
/// max |Im root| <= 1e-6 * max |root|. Throws InputError if p(direction) <= 0.
DiagnosticReport real_rootedness_check(const EvaluationOracle& p, const std::vector<double>& direction, int trials,
                                       std::uint64_t seed);

/// Samples z = x + iy with x > 0; passes iff |p(z)| > 0 everywhere and
/// |p(x + iy)| >= p(x) (1 - 1e-9). worst_margin is min |p(z)|/p(x) - 1.
DiagnosticReport half_plane_sample_check(const EvaluationOracle& p, int samples, std::uint64_t seed);

/// Raised when a pencil t -> p(t Z + Y) has a non-real root.
class NotHyperbolicError : public std::runtime_error {
 public:
  NotHyperbolicError(const std::string& what, Complex root) : std::runtime_error(what), root_(root) {}
  Complex root() const { return root_; }

 private:
  Complex root_;
};

struct Factorization {
  std::vector<double> a;
  std::vector<double> b;
  std::vector<double> lambda;  // roots of x -> p(Z - x (Z + Y)), in [0, 1]
};

/// Writes p(t Z + Y) = prod_i (a_i t + b_i) with a_i, b_i >= 0, using
/// a_i = c lambda_i, b_i = c (1 - lambda_i), c = p(Z + Y)^(1/n).
/// Throws InputError unless Z, Y >= 0 and Z + Y > 0; NotHyperbolicError on
/// a complex root or a root outside [0, 1].
Factorization factorization_check(const EvaluationOracle& p, const std::vector<double>& z,
                                  const std::vector<double>& y);

struct RootRank {
  int rank = 0;
  bool ambiguous = false;  // some |root| within [1e-9, 1e-7] * scale
};

/// Number of nonzero roots of t -> p(e_i - t e), e = (1, ..., 1).
RootRank rank_via_roots(const EvaluationOracle& p, int i);

}  // namespace polycap
