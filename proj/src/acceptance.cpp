#include "polycap/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <sstream>

#include "polycap/approx.hpp"
#include "polycap/bounds.hpp"
#include "polycap/capacity.hpp"
#include "polycap/errors.hpp"
#include "polycap/exact_oracles.hpp"
#include "polycap/fixtures.hpp"
#include "polycap/hyperbolicity.hpp"

namespace polycap {
namespace {

using fixtures::Rng;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void require(bool condition) { passed = passed && condition; }
};

std::string sci(double v) {
  std::ostringstream os;
  os.precision(3);
  os << std::scientific << v;
  return os.str();
}

std::vector<RationalMatrix> diagonal_tuple(const RationalMatrix& a) {
  const std::size_t n = a.rows();
  std::vector<RationalMatrix> tuple;
  for (std::size_t i = 0; i < n; ++i) {
    RationalMatrix d(n, n, Rational(0));
    for (std::size_t j = 0; j < n; ++j) d(j, j) = a(i, j);
    tuple.push_back(std::move(d));
  }
  return tuple;
}

std::vector<Rational> random_rational_point(int n, Rng& rng) {
  std::uniform_int_distribution<int> num(-12, 12), den(1, 7);
  std::vector<Rational> x(n);
  for (auto& v : x) {
    v = Rational(num(rng), den(rng));
    v.canonicalize();
  }
  return x;
}

void vdw_chain(Outcome& out, Rng& rng) {
  double worst = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 3 + trial % 8;
    const RealMatrix a = fixtures::random_doubly_stochastic(n, rng);
    const double slack = permanent_ryser(a) - vdw_factor(n);
    worst = std::min(worst, slack);
    out.require(slack >= -1e-10);
  }
  bool exact = true;
  for (int n = 3; n <= 10; ++n) exact = exact && permanent_ryser(fixtures::uniform_matrix(n)) == vdw_factor_exact(n);
  out.require(exact);
  out.detail << "200 matrices, min per - n!/n^n = " << sci(worst) << "; per(J_n) exact for n=3..10: "
             << (exact ? "yes" : "no");
}

void capacity_sandwich(Outcome& out, Rng& rng) {
  double worst_low = std::numeric_limits<double>::infinity(), worst_high = worst_low;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 9;
    RationalMatrix a;
    Rational per;
    do {
      a = fixtures::random_rational_matrix(n, rng);
      per = permanent_ryser(a);
    } while (per == 0);
    PolynomialOracle p{Polynomial(ProductFormPolynomial(a))};
    const double cap = capacity_minimize(p).value;
    const double exact = per.get_d();
    const double low = (cap - exact) / exact;
    const double high = (vdw_factor(n) * cap > 0) ? (exact - vdw_factor(n) * cap) / (vdw_factor(n) * cap) : -1.0;
    worst_low = std::min(worst_low, low);
    worst_high = std::min(worst_high, high);
    out.require(low >= -1e-7 && high >= -1e-7);
  }
  out.detail << "100 product forms, min relative slack: lower " << sci(worst_low) << ", upper " << sci(worst_high);
}

void oracle_equivalence(Outcome& out, Rng& rng) {
  int agree = 0, agree_md = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 1 + trial % 8;
    const RationalMatrix a = fixtures::random_rational_matrix(n, rng);
    const Rational per = permanent_ryser(a);
    PolynomialOracle p{Polynomial(ProductFormPolynomial(a))};
    agree += mixed_partial_polarization<Rational>(p) == per;
    agree_md += mixed_discriminant<Rational>(diagonal_tuple(a)) == per;
  }
  out.require(agree == 50 && agree_md == 50);
  out.detail << "polarization = Ryser on " << agree << "/50, diagonal mixed discriminant = Ryser on " << agree_md
             << "/50";
}

void contraction(Outcome& out, Rng& rng) {
  double worst = std::numeric_limits<double>::infinity();
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const SparsePolynomial q = fixtures::random_sparse_hyperbolic(2 + trial % 7, rng);
    const ContractionCheck c = derivative_contraction_check(q);
    if (c.skipped) continue;
    ++checked;
    const double slack = c.cap_r - c.factor * c.cap_q;
    worst = std::min(worst, slack);
    out.require(slack >= -1e-7);
  }
  out.require(checked == 100);
  const SparsePolynomial j2 = expand(Polynomial(ProductFormPolynomial(fixtures::uniform_matrix(2))));
  const ContractionCheck c = derivative_contraction_check(j2);
  const double gap = std::abs(c.cap_r - c.factor * c.cap_q);
  out.require(gap <= 1e-9);
  out.detail << checked << " fixtures, min slack " << sci(worst) << "; J_2 equality gap " << sci(gap);
}

void small_rank(Outcome& out, Rng& rng) {
  const Rational circ = permanent_ryser(fixtures::circulant3());
  const Rational bound = uniform_rank_factor_exact(3, 2);
  out.require(circ == bound && std::abs(circ.get_d() - bound.get_d()) <= 1e-12);
  double worst = std::numeric_limits<double>::infinity();
  int count = 0;
  for (int k = 2; k <= 3; ++k) {
    for (int n = k + 1; n <= 12; ++n) {
      for (int rep = 0; rep < 3; ++rep) {
        const RealMatrix a = fixtures::regular_bipartite_doubly_stochastic(n, k, rng);
        const double b = schrijver_like_permanent_bound(a, k);
        const double slack = permanent_ryser(a) - b;
        worst = std::min(worst, slack);
        out.require(slack >= -1e-9);
        ++count;
      }
    }
  }
  out.detail << "circulant per = " << to_string(circ) << " = bound " << to_string(bound) << "; " << count
             << " regular bipartite matrices, min slack " << sci(worst);
}

void ladder_consistency(Outcome& out, Rng&) {
  double worst = 0.0;
  for (int n = 1; n <= 30; ++n) {
    double product = 1.0;
    for (int i = 1; i <= n; ++i) product *= rank_factor(std::min(n, n + 1 - i));
    const double via_report =
        rank_ladder_bound(Polynomial(ProductFormPolynomial(fixtures::uniform_matrix(n))), Ordering::as_given(), 1.0)
            .lower_bound_rank;
    const double target = vdw_factor(n);
    worst = std::max({worst, std::abs(product - target) / target, std::abs(via_report - target) / target});
  }
  out.require(worst <= 1e-12);
  out.detail << "n = 1..30, max relative deviation " << sci(worst);
}

void sinkhorn_vs_optimizer(Outcome& out, Rng& rng) {
  double worst = 0.0, worst_dev = 0.0;
  int max_iter = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 9;
    const RealMatrix a = fixtures::random_positive_matrix(n, rng);
    const ScalingResult s = sinkhorn_scale(a, 1e-10, kSinkhornMaxIter);
    PolynomialOracle p{Polynomial(ProductFormPolynomial(a))};
    const double cap = capacity_minimize(p).value;
    worst = std::max(worst, std::abs(s.capacity - cap) / cap);
    worst_dev = std::max(worst_dev, s.max_deviation);
    max_iter = std::max(max_iter, s.iterations);
    out.require(s.status == ScalingStatus::converged && s.max_deviation <= 1e-10);
  }
  out.require(worst <= 1e-6);
  out.detail << "100 matrices, max relative gap " << sci(worst) << ", max deviation " << sci(worst_dev)
             << ", max iterations " << max_iter;
}

void entropic(Outcome& out, Rng& rng) {
  std::exponential_distribution<double> e(1.0);
  double worst = std::numeric_limits<double>::infinity();
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 2 + trial % 19;
    // c = 1 - d, d on the probability simplex; every tenth draw has a sparse d
    std::vector<double> d(n, 0.0);
    const int support = (trial % 10 == 0) ? 1 + static_cast<int>(rng() % n) : n;
    double s = 0.0;
    for (int i = 0; i < support; ++i) s += (d[i] = e(rng));
    std::shuffle(d.begin(), d.end(), rng);
    std::vector<double> c(n);
    for (int i = 0; i < n; ++i) c[i] = 1.0 - d[i] / s;
    const EntropicCheck r = entropic_inequality_check(c);
    worst = std::min(worst, r.lhs - r.rhs);
    out.require(r.lhs - r.rhs >= -1e-12);
  }
  double gap = 0.0;
  for (int n = 2; n <= 20; ++n) {
    const EntropicCheck r = entropic_inequality_check(std::vector<double>(n, (n - 1.0) / n));
    gap = std::max(gap, std::abs(r.lhs - r.rhs));
  }
  out.require(gap <= 1e-10);
  out.detail << "10000 vectors, min slack " << sci(worst) << "; equality gap " << sci(gap);
}

void pk_correctness(Outcome& out, Rng& rng) {
  int points = 0, matches = 0;
  for (int n : {3, 4, 6, 8, 10}) {
    const Polynomial base = ProductFormPolynomial(fixtures::random_rational_matrix(n, rng, 4, 3));
    PolynomialOracle p(base);
    SparsePolynomial reduced = expand(base);
    for (int k = 1; k <= std::min(3, n - 1); ++k) {
      reduced = derivative_reduce(reduced);
      PkOracle pk(p, k);
      for (int rep = 0; rep < 3; ++rep) {
        const auto x = random_rational_point(n - k, rng);
        ++points;
        matches += pk.evaluate(x) == reduced.evaluate(std::span<const Rational>(x));
      }
    }
  }
  out.require(matches == points);

  std::vector<Polynomial> fixtures_list;
  for (int n = 3; n <= 6; ++n) fixtures_list.emplace_back(ProductFormPolynomial(fixtures::uniform_matrix(n)));
  for (int n = 4; n <= 8; ++n) fixtures_list.emplace_back(ProductFormPolynomial(fixtures::random_positive_matrix(n, rng)));
  fixtures_list.emplace_back(fixtures::q_family({Rational(1), Rational(3), Rational(1, 2), Rational(2)}));
  fixtures_list.emplace_back(ProductFormPolynomial(fixtures::circulant3()));
  int contained = 0, cases = 0;
  std::uint64_t calls = 0;
  double worst = std::numeric_limits<double>::infinity();
  for (const auto& poly : fixtures_list) {
    PolynomialOracle p(poly);
    const double exact = mixed_partial(poly).get_d();
    for (int k = 0; k <= std::min(3, p.n_vars() - 1); ++k) {
      const ApproxResult r = improved_estimate(p, k);
      ++cases;
      calls += r.oracle_calls;
      const double lower = r.estimate - exact * (1 - 1e-7);
      const double upper = r.guarantee_factor * exact * (1 + 1e-7) - r.estimate;
      worst = std::min({worst, lower / exact, upper / exact});
      contained += lower >= 0.0 && upper >= 0.0;
    }
  }
  out.require(contained == cases);
  out.detail << "p_k exact on " << matches << "/" << points << " points; guarantee contains ratio on " << contained
             << "/" << cases << " runs (" << calls << " base oracle calls)";
}

void hyperbolicity(Outcome& out, Rng& rng) {
  std::vector<Polynomial> good;
  for (int n = 2; n <= 6; ++n) good.emplace_back(ProductFormPolynomial(fixtures::uniform_matrix(n)));
  good.emplace_back(ProductFormPolynomial(fixtures::random_rational_matrix(5, rng)));
  good.emplace_back(ProductFormPolynomial(fixtures::random_doubly_stochastic(6, rng)));
  good.emplace_back(DeterminantalPolynomial(fixtures::random_psd_tuple(3, 3, rng)));
  good.emplace_back(DeterminantalPolynomial(fixtures::doubly_stochastic_psd_tuple(4, rng)));
  int passed = 0;
  std::uint64_t calls = 0;
  for (const auto& poly : good) {
    PolynomialOracle p(poly);
    const auto roots = real_rootedness_check(p, std::vector<double>(p.n_vars(), 1.0), 20, rng());
    const auto plane = half_plane_sample_check(p, 2000, rng());
    passed += roots.passed && plane.passed;
    calls += p.call_count();
  }
  out.require(passed == static_cast<int>(good.size()));

  FunctionOracle squares = FunctionOracle::from_generic(2, 2, [](auto x) {
    using T = typename decltype(x)::value_type;
    return T(x[0] * x[0] + x[1] * x[1]);
  });
  const bool squares_fail = !real_rootedness_check(squares, {1, 1}, 20, rng()).passed;
  PolynomialOracle cubic{Polynomial(SparsePolynomial(
      3, {{{3, 0, 0}, Rational(1, 3)}, {{0, 3, 0}, Rational(1, 3)}, {{0, 0, 3}, Rational(1, 3)}}))};
  const auto cubic_plane = half_plane_sample_check(cubic, 2000, rng());
  out.require(squares_fail && !cubic_plane.passed);
  out.detail << passed << "/" << good.size() << " hyperbolic fixtures pass both checks (" << calls
             << " oracle calls); x1^2+x2^2 fails real-rootedness: " << (squares_fail ? "yes" : "no")
             << "; cubic fails half-plane (margin " << sci(cubic_plane.worst_margin) << ")";
}

struct Criterion {
  int id;
  const char* name;
  double limit;
  void (*run)(Outcome&, Rng&);
};

const Criterion kCriteria[] = {
    {1, "van der Waerden chain", 120.0, vdw_chain},
    {2, "capacity sandwich", 300.0, capacity_sandwich},
    {3, "oracle equivalence", 0.0, oracle_equivalence},
    {4, "derivative contraction", 0.0, contraction},
    {5, "small-rank permanent bound", 0.0, small_rank},
    {6, "rank ladder equals n!/n^n", 0.0, ladder_consistency},
    {7, "Sinkhorn vs convex optimizer", 0.0, sinkhorn_vs_optimizer},
    {8, "entropic inequality", 0.0, entropic},
    {9, "p_k correctness", 0.0, pk_correctness},
    {10, "hyperbolicity diagnostics", 0.0, hyperbolicity},
};

}  // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed, std::ostream* progress) {
  std::vector<CriterionResult> results;
  for (const auto& c : kCriteria) {
    Rng rng(seed + static_cast<std::uint64_t>(c.id));
    Outcome outcome;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(outcome, rng);
    } catch (const std::exception& e) {
      outcome.passed = false;
      outcome.detail << " exception: " << e.what();
    }
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.limit_seconds = c.limit;
    r.detail = outcome.detail.str();
    r.passed = outcome.passed && (c.limit == 0.0 || r.seconds < c.limit);
    if (c.limit > 0.0 && r.seconds >= c.limit) r.detail += "; runtime limit exceeded";
    if (progress) *progress << format_criterion(r) << std::endl;
    results.push_back(std::move(r));
  }
  return results;
}

std::string format_criterion(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << ": " << r.detail << " (";
  os.precision(2);
  os << std::fixed << r.seconds << " s";
  if (r.limit_seconds > 0.0) os << ", limit " << r.limit_seconds << " s";
  os << ")";
  return os.str();
}

}  // namespace polycap
