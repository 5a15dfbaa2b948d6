#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "polycap/capacity.hpp"
#include "polycap/matrix.hpp"
#include "polycap/polynomial.hpp"

namespace polycap {

// ----- scalar bound factors -------------------------------------------------

/// n!/n^n
double vdw_factor(int n);
Rational vdw_factor_exact(int n);

/// ((g-1)/g)^(g-1), with the g = 1 case equal to 1.
double rank_factor(int g);
Rational rank_factor_exact(int g);

/// ((k-1)/k)^((k-1)(n-k)) * k!/k^k
double uniform_rank_factor(int n, int k);
Rational uniform_rank_factor_exact(int n, int k);

/// (n!/n^n) * cap
double vdw_lower_bound(double cap, int n);
Rational vdw_lower_bound(const Rational& cap, int n);

/// ((k-1)/k)^((k-1)(n-k)) * (k!/k^k) * cap, valid when every variable has rank <= k.
double uniform_rank_bound(double cap, int n, int k);

// ----- sandwich checks --------------------------------------------------------

/// True iff the exact mixed partial of `poly` is <= cap * (1 + 1e-9).
bool capacity_upper_bound_check(const Polynomial& poly, double cap);

struct EntropicCheck {
  double lhs = 0.0;  // S_{n-1} - n S_n
  double rhs = 0.0;  // exp(sum c_i log c_i)
};

/// For 0 <= c_i <= 1 with sum c_i = n - 1: S_{n-1} - n S_n >= exp(sum c_i log c_i).
/// Throws InputError on infeasible c and CheckFailure if the inequality fails.
EntropicCheck entropic_inequality_check(const std::vector<double>& c);

/// Permanent of [a|b|...|b] with b_i = (1 - a_i)/(n - 1), via the closed
/// form ((n-1)!/(n-1)^(n-1)) sum_i a_i prod_{j != i} (1 - a_j). Requires a
/// probability vector with n >= 2; throws CheckFailure if below n!/n^n.
double mini_vdw_permanent(const std::vector<double>& a);

/// The matrix [a|b|...|b] used by mini_vdw_permanent.
RealMatrix mini_vdw_matrix(const std::vector<double>& a);

struct UnivariateCheck {
  double d1 = 0.0;     // linear coefficient of R(t) = prod (a_i t + b_i)
  double c = 0.0;      // inf_{t > 0} R(t) / t
  double bound = 0.0;  // c * ((n-1)/n)^(n-1)
};

/// Throws CheckFailure if d1 < bound - 1e-10.
UnivariateCheck univariate_d1_bound_check(const std::vector<double>& a, const std::vector<double>& b);

// ----- rank machinery ---------------------------------------------------------

/// Root-defined rank of e_i, computed as the degree in x_i.
int rank_of_basis_vector(const Polynomial& poly, int i);

struct Ordering {
  enum class Kind { as_given, greedy, explicit_permutation };
  Kind kind = Kind::as_given;
  std::vector<int> permutation;

  static Ordering as_given() { return {}; }
  static Ordering greedy() { return {Kind::greedy, {}}; }
  static Ordering explicit_order(std::vector<int> perm) { return {Kind::explicit_permutation, std::move(perm)}; }
};

std::string to_string(Ordering::Kind kind);

struct BoundReport {
  int n = 0;
  double capacity = 0.0;
  double lower_bound_vdw = 0.0;
  double lower_bound_rank = 0.0;
  std::optional<double> lower_bound_uniform_rank;
  std::optional<double> exact_value;
  std::optional<Rational> exact_value_rational;
  std::vector<int> ranks;           // R_i in original variable order
  std::vector<int> g;               // G_i along ordering_used
  std::vector<int> ordering_used;   // position -> original variable
  std::string ordering_kind;
  std::map<std::string, std::string> provenance;

  /// exact value within 1e-9 relative of the van der Waerden bound
  bool vdw_equality() const;
  /// exact value within 1e-9 relative of the rank bound
  bool rank_equality() const;
};

/// Rank-ladder bound prod_i ((G_i-1)/G_i)^(G_i-1) * cap with
/// G_i = min(R_{pi(i)}, n + 1 - i) along the chosen variable order pi.
/// Throws InputError if some variable does not occur in the polynomial.
BoundReport rank_ladder_bound(const Polynomial& poly, const Ordering& ordering, double cap);

struct BoundOptions {
  Ordering ordering;
  CapacityOptions capacity;
  bool compute_exact = true;  // exact mixed partial when within the caps
};

/// Capacity, ranks, every lower bound and (when affordable) the exact
/// mixed partial, in one report. Throws CheckFailure if the sandwich
/// vdw <= rank <= exact <= capacity is violated beyond 1e-9.
BoundReport bound_report(const Polynomial& poly, const BoundOptions& options = {});

/// Small-rank permanent bound for a doubly stochastic matrix whose first
/// n - k columns (rows with `rows = true`) have at most k positive entries.
/// Matrices within 1e-4 of doubly stochastic are first cleaned by Sinkhorn;
/// after that the tolerance is 1e-8. Throws InputError naming the offending
/// line if the sparsity condition fails, CheckFailure if Ryser (n <= 14)
/// contradicts the bound.
double schrijver_like_permanent_bound(const RealMatrix& a, int k, bool rows = false);

// ----- contraction through the derivative ------------------------------------

struct ContractionCheck {
  double cap_q = 0.0;
  double cap_r = 0.0;
  double ratio = 0.0;   // cap_r / cap_q
  double factor = 0.0;  // guaranteed lower bound on ratio
  bool skipped = false; // capacity of q degenerate
};

/// r = derivative_reduce(q); checks Cap(r) >= ((n-1)/n)^(n-1) Cap(q) - 1e-7,
/// or with `use_rank` the sharper ((k-1)/k)^(k-1) where k is the degree of
/// q in x_1. Throws CheckFailure on violation.
ContractionCheck derivative_contraction_check(const SparsePolynomial& q, bool use_rank = false,
                                              const CapacityOptions& options = {});

/// Degree of r = derivative_reduce(q) in each x_i (i >= 2) is at most
/// min(degree of q in x_i, n - 1).
bool rank_monotonicity_check(const SparsePolynomial& q);

}  // namespace polycap
