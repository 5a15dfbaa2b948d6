#include "polycap/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "polycap/errors.hpp"
#include "polycap/exact_oracles.hpp"
#include "polycap/oracle.hpp"

namespace polycap {
namespace {

constexpr double kSandwichSlack = 1e-9;

bool close_relative(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max({1e-300, std::abs(a), std::abs(b)});
}

double double_stochastic_deviation(const RealMatrix& a) {
  const std::size_t n = a.rows();
  double dev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0, col = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      row += a(i, j);
      col += a(j, i);
    }
    dev = std::max({dev, std::abs(row - 1.0), std::abs(col - 1.0)});
  }
  return dev;
}

bool exact_affordable(const Polynomial& poly) {
  const int n = n_vars(poly);
  if (n != degree(poly)) return false;
  if (std::holds_alternative<SparsePolynomial>(poly)) return true;
  if (std::holds_alternative<ProductFormPolynomial>(poly)) return n <= kPermanentCapExact;
  return n <= kMixedDiscriminantCap;
}

}  // namespace

double vdw_factor(int n) { return vdw_factor_exact(n).get_d(); }

Rational vdw_factor_exact(int n) {
  if (n < 1) throw InputError("n must be positive");
  return factorial(n) / pow(Rational(n), n);
}

double rank_factor(int g) { return rank_factor_exact(g).get_d(); }

Rational rank_factor_exact(int g) {
  if (g < 1) throw InputError("rank factor needs g >= 1");
  return pow(Rational(g - 1, g), g - 1);
}

double uniform_rank_factor(int n, int k) { return uniform_rank_factor_exact(n, k).get_d(); }

Rational uniform_rank_factor_exact(int n, int k) {
  if (k < 1 || k > n) throw InputError("uniform rank bound needs 1 <= k <= n");
  return pow(Rational(k - 1, k), (k - 1) * (n - k)) * vdw_factor_exact(k);
}

double vdw_lower_bound(double cap, int n) {
  if (cap < 0.0) throw InputError("capacity must be nonnegative");
  return vdw_factor(n) * cap;
}

Rational vdw_lower_bound(const Rational& cap, int n) {
  if (cap < 0) throw InputError("capacity must be nonnegative");
  return vdw_factor_exact(n) * cap;
}

double uniform_rank_bound(double cap, int n, int k) { return uniform_rank_factor(n, k) * cap; }

bool capacity_upper_bound_check(const Polynomial& poly, double cap) {
  const double exact = to_double(mixed_partial(poly));
  return exact <= cap + 1e-9 * std::abs(cap);
}

EntropicCheck entropic_inequality_check(const std::vector<double>& c) {
  const std::size_t n = c.size();
  if (n < 1) throw InputError("entropic inequality needs n >= 1");
  double sum = 0.0;
  for (double v : c) {
    if (!(v >= -1e-10 && v <= 1.0 + 1e-10)) throw InputError("entropic inequality needs 0 <= c_i <= 1");
    sum += v;
  }
  if (std::abs(sum - static_cast<double>(n - 1)) > 1e-10 * std::max<double>(1.0, n)) {
    throw InputError("entropic inequality needs sum c_i = n - 1");
  }
  // prefix/suffix products keep S_{n-1} exact-ish when some c_i vanish
  std::vector<double> prefix(n + 1, 1.0), suffix(n + 1, 1.0);
  for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] * c[i];
  for (std::size_t i = n; i-- > 0;) suffix[i] = suffix[i + 1] * c[i];
  double s_n1 = 0.0;
  for (std::size_t i = 0; i < n; ++i) s_n1 += prefix[i] * suffix[i + 1];
  EntropicCheck out;
  out.lhs = s_n1 - static_cast<double>(n) * prefix[n];
  double entropy = 0.0;
  for (double v : c) {
    if (v > 0.0) entropy += v * std::log(v);
  }
  out.rhs = std::exp(entropy);
  if (out.lhs < out.rhs - 1e-12) {
    throw CheckFailure("entropic inequality violated: lhs " + to_decimal_string(out.lhs) + " < rhs " +
                       to_decimal_string(out.rhs));
  }
  return out;
}

double mini_vdw_permanent(const std::vector<double>& a) {
  const int n = static_cast<int>(a.size());
  if (n < 2) throw InputError("mini van der Waerden needs n >= 2");
  double sum = 0.0;
  for (double v : a) {
    if (!(v >= 0.0)) throw InputError("probability vector needs a_i >= 0");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-10) throw InputError("probability vector must sum to 1");
  std::vector<double> prefix(n + 1, 1.0), suffix(n + 1, 1.0);
  for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] * (1.0 - a[i]);
  for (int i = n; i-- > 0;) suffix[i] = suffix[i + 1] * (1.0 - a[i]);
  double total = 0.0;
  for (int i = 0; i < n; ++i) total += a[i] * prefix[i] * suffix[i + 1];
  const double lead = Rational(factorial(n - 1) / pow(Rational(n - 1), n - 1)).get_d();
  const double per = lead * total;
  const double bound = vdw_factor(n);
  if (per < bound - 1e-12) {
    throw CheckFailure("mini van der Waerden violated: " + to_decimal_string(per) + " < " +
                       to_decimal_string(bound));
  }
  return per;
}

RealMatrix mini_vdw_matrix(const std::vector<double>& a) {
  const std::size_t n = a.size();
  if (n < 2) throw InputError("mini van der Waerden needs n >= 2");
  RealMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, 0) = a[i];
    for (std::size_t j = 1; j < n; ++j) m(i, j) = (1.0 - a[i]) / static_cast<double>(n - 1);
  }
  return m;
}

UnivariateCheck univariate_d1_bound_check(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty()) throw InputError("univariate check needs equal-length nonempty a, b");
  const std::size_t n = a.size();
  std::vector<double> d{1.0};  // coefficients of R in increasing degree
  for (std::size_t i = 0; i < n; ++i) {
    if (!(a[i] >= 0.0 && b[i] >= 0.0) || a[i] + b[i] <= 0.0) {
      throw InputError("univariate check needs a_i, b_i >= 0 with a_i + b_i > 0");
    }
    std::vector<double> next(d.size() + 1, 0.0);
    for (std::size_t k = 0; k < d.size(); ++k) {
      next[k] += b[i] * d[k];
      next[k + 1] += a[i] * d[k];
    }
    d = std::move(next);
  }
  int top = 0;
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k] > 0.0) top = static_cast<int>(k);
  }

  UnivariateCheck out;
  out.d1 = d[1];
  if (d[0] == 0.0 || top <= 1) {
    // R(t)/t is monotone on (0, inf); the infimum is the limit d1.
    out.c = d[1];
  } else {
    // h(s) = R(e^s)/e^s is convex in s; bisect on h'(s).
    auto slope = [&](double s) {
      double v = 0.0;
      for (std::size_t k = 0; k < d.size(); ++k) v += (static_cast<double>(k) - 1.0) * d[k] * std::exp((k - 1.0) * s);
      return v;
    };
    double lo = -1.0, hi = 1.0;
    while (slope(lo) > 0.0) lo *= 2.0;
    while (slope(hi) < 0.0) hi *= 2.0;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, std::abs(lo)); ++it) {
      const double mid = 0.5 * (lo + hi);
      if (slope(mid) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    const double s = 0.5 * (lo + hi);
    double h = 0.0;
    for (std::size_t k = 0; k < d.size(); ++k) h += d[k] * std::exp((k - 1.0) * s);
    out.c = h;
  }
  out.bound = out.c * rank_factor(static_cast<int>(n));
  if (out.d1 < out.bound - 1e-10 * std::max(1.0, out.c)) {
    throw CheckFailure("univariate d1 bound violated: d1 " + to_decimal_string(out.d1) + " < " +
                       to_decimal_string(out.bound));
  }
  return out;
}

int rank_of_basis_vector(const Polynomial& poly, int i) { return variable_degree(poly, i); }

std::string to_string(Ordering::Kind kind) {
  switch (kind) {
    case Ordering::Kind::as_given:
      return "as-given";
    case Ordering::Kind::greedy:
      return "greedy";
    case Ordering::Kind::explicit_permutation:
      return "explicit";
  }
  return "unknown";
}

bool BoundReport::vdw_equality() const {
  return exact_value && close_relative(*exact_value, lower_bound_vdw, 1e-9);
}

bool BoundReport::rank_equality() const {
  return exact_value && close_relative(*exact_value, lower_bound_rank, 1e-9);
}

BoundReport rank_ladder_bound(const Polynomial& poly, const Ordering& ordering, double cap) {
  const int n = n_vars(poly);
  if (degree(poly) != n) throw InputError("rank bounds need degree == n_vars");
  BoundReport report;
  report.n = n;
  report.capacity = cap;
  report.ranks.resize(n);
  for (int i = 0; i < n; ++i) {
    report.ranks[i] = rank_of_basis_vector(poly, i);
    if (report.ranks[i] == 0) {
      throw InputError("variable " + std::to_string(i) + " does not occur in the polynomial");
    }
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  switch (ordering.kind) {
    case Ordering::Kind::as_given:
      break;
    case Ordering::Kind::greedy:
      std::stable_sort(order.begin(), order.end(),
                       [&](int a, int b) { return report.ranks[a] < report.ranks[b]; });
      break;
    case Ordering::Kind::explicit_permutation: {
      order = ordering.permutation;
      std::vector<int> sorted = order;
      std::sort(sorted.begin(), sorted.end());
      std::vector<int> identity(n);
      std::iota(identity.begin(), identity.end(), 0);
      if (sorted != identity) throw InputError("ordering is not a permutation of the variables");
      break;
    }
  }
  report.ordering_used = order;
  report.ordering_kind = to_string(ordering.kind);

  double factor = 1.0;
  report.g.resize(n);
  int max_rank = 0;
  for (int pos = 0; pos < n; ++pos) {
    const int g = std::min(report.ranks[order[pos]], n - pos);
    report.g[pos] = g;
    factor *= rank_factor(g);
    max_rank = std::max(max_rank, report.ranks[order[pos]]);
  }
  report.lower_bound_vdw = vdw_lower_bound(cap, n);
  report.lower_bound_rank = factor * cap;
  report.lower_bound_uniform_rank = uniform_rank_bound(cap, n, max_rank);
  report.provenance = {
      {"capacity", "infimum of p over the positive orthant with unit product (convex optimization)"},
      {"lower_bound_vdw", "van der Waerden-type bound: n!/n^n * Cap"},
      {"lower_bound_rank", "rank ladder bound: prod ((G_i-1)/G_i)^(G_i-1) * Cap, G_i = min(R_i, n+1-i)"},
      {"lower_bound_uniform_rank", "uniform rank bound: ((k-1)/k)^((k-1)(n-k)) * k!/k^k * Cap, k = max rank"},
  };
  return report;
}

BoundReport bound_report(const Polynomial& poly, const BoundOptions& options) {
  PolynomialOracle oracle(poly);
  const CapacityResult cap = capacity_minimize(oracle, options.capacity);
  BoundReport report = rank_ladder_bound(poly, options.ordering, cap.value);
  if (options.compute_exact && exact_affordable(poly)) {
    Rational exact = mixed_partial(poly);
    report.exact_value = exact.get_d();
    report.exact_value_rational = exact;
    report.provenance["exact_value"] = "coefficient of x_1...x_n (Ryser permanent, polarization, or lookup)";
  }
  const double slack = kSandwichSlack * std::max(1.0, std::abs(report.capacity));
  if (report.lower_bound_rank < report.lower_bound_vdw - 1e-12 * std::max(1.0, report.capacity)) {
    throw CheckFailure("rank bound fell below the van der Waerden bound");
  }
  if (report.exact_value) {
    if (*report.exact_value < report.lower_bound_rank - slack) {
      throw CheckFailure("exact mixed partial " + to_decimal_string(*report.exact_value) +
                         " is below the rank bound " + to_decimal_string(report.lower_bound_rank));
    }
    if (*report.exact_value > report.capacity + slack) {
      throw CheckFailure("exact mixed partial " + to_decimal_string(*report.exact_value) + " exceeds capacity " +
                         to_decimal_string(report.capacity));
    }
  }
  return report;
}

double schrijver_like_permanent_bound(const RealMatrix& a_in, int k, bool rows) {
  if (!a_in.square() || a_in.rows() == 0) throw InputError("permanent bound needs a square matrix");
  const int n = static_cast<int>(a_in.rows());
  if (k < 1 || k > n) throw InputError("permanent bound needs 1 <= k <= n");
  for (double v : a_in.data()) {
    if (!(v >= 0.0)) throw InputError("doubly stochastic matrix needs nonnegative entries");
  }
  RealMatrix a = a_in;
  double dev = double_stochastic_deviation(a);
  if (dev > 1e-4) throw InputError("matrix is not doubly stochastic (deviation " + to_decimal_string(dev) + ")");
  if (dev > 1e-8) {
    a = sinkhorn_scale(a, 1e-12).scaled_matrix;
    dev = double_stochastic_deviation(a);
    if (dev > 1e-8) throw InputError("matrix could not be cleaned to doubly stochastic");
  }
  for (int line = 0; line < n - k; ++line) {
    int support = 0;
    for (int other = 0; other < n; ++other) support += (rows ? a(line, other) : a(other, line)) > 0.0;
    if (support > k) {
      throw InputError(std::string(rows ? "row " : "column ") + std::to_string(line) + " has " +
                       std::to_string(support) + " positive entries, more than k = " + std::to_string(k));
    }
  }
  const double bound = uniform_rank_factor(n, k);
  if (n <= kPermanentCapExact) {
    const double per = permanent_ryser(a);
    if (per < bound - 1e-9) {
      throw CheckFailure("permanent " + to_decimal_string(per) + " below small-rank bound " +
                         to_decimal_string(bound));
    }
  }
  return bound;
}

ContractionCheck derivative_contraction_check(const SparsePolynomial& q, bool use_rank,
                                              const CapacityOptions& options) {
  const int n = q.n_vars();
  ContractionCheck out;
  const CapacityResult cap_q = capacity_minimize(PolynomialOracle(q), options);
  if (cap_q.status == CapacityStatus::degenerate_zero) {
    out.skipped = true;
    return out;
  }
  out.cap_q = cap_q.value;
  SparsePolynomial r = derivative_reduce(q);
  out.cap_r = capacity_minimize(PolynomialOracle(r), options).value;
  out.ratio = out.cap_r / out.cap_q;
  out.factor = use_rank ? rank_factor(variable_degree(Polynomial(q), 0)) : rank_factor(n);
  if (out.cap_r < out.factor * out.cap_q - 1e-7 * std::max(1.0, out.cap_q)) {
    throw CheckFailure("derivative contraction violated: Cap(r) " + to_decimal_string(out.cap_r) + " < " +
                       to_decimal_string(out.factor) + " * Cap(q) " + to_decimal_string(out.cap_q));
  }
  return out;
}

bool rank_monotonicity_check(const SparsePolynomial& q) {
  const int n = q.n_vars();
  const SparsePolynomial r = derivative_reduce(q);
  const Polynomial qp(q), rp(r);
  for (int i = 1; i < n; ++i) {
    if (variable_degree(rp, i - 1) > std::min(variable_degree(qp, i), n - 1)) return false;
  }
  return true;
}

}  // namespace polycap
