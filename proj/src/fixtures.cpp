#include "polycap/fixtures.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <numeric>

#include "polycap/capacity.hpp"
#include "polycap/errors.hpp"
#include "polycap/linalg.hpp"

namespace polycap::fixtures {
namespace {

std::vector<std::vector<int>> disjoint_permutations(int n, int k, Rng& rng) {
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  for (int attempt = 0; attempt < 2000; ++attempt) {
    std::vector<std::vector<int>> perms;
    std::vector<std::vector<char>> used(n, std::vector<char>(n, 0));
    bool ok = true;
    for (int j = 0; j < k && ok; ++j) {
      std::vector<int> p = base;
      std::shuffle(p.begin(), p.end(), rng);
      for (int i = 0; i < n; ++i) {
        if (used[i][p[i]]) {
          ok = false;
          break;
        }
      }
      if (!ok) break;
      for (int i = 0; i < n; ++i) used[i][p[i]] = 1;
      perms.push_back(std::move(p));
    }
    if (ok) return perms;
  }
  // Latin-square fallback: sigma(tau(i) + j mod n).
  std::vector<int> sigma = base, tau = base;
  std::shuffle(sigma.begin(), sigma.end(), rng);
  std::shuffle(tau.begin(), tau.end(), rng);
  std::vector<std::vector<int>> perms(k, std::vector<int>(n));
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i < n; ++i) perms[j][i] = sigma[(tau[i] + j) % n];
  }
  return perms;
}

}  // namespace

RealMatrix random_positive_matrix(int n, Rng& rng, double lo) {
  std::uniform_real_distribution<double> dist(lo, 1.0);
  RealMatrix a(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a(i, j) = dist(rng);
  }
  return a;
}

RealMatrix random_doubly_stochastic(int n, Rng& rng) {
  return sinkhorn_scale(random_positive_matrix(n, rng), 1e-14).scaled_matrix;
}

RationalMatrix regular_bipartite_doubly_stochastic_exact(int n, int k, Rng& rng) {
  if (k < 1 || k > n) throw InputError("regular bipartite fixture needs 1 <= k <= n");
  RationalMatrix a(n, n, Rational(0));
  for (const auto& p : disjoint_permutations(n, k, rng)) {
    for (int i = 0; i < n; ++i) a(i, p[i]) = Rational(1, k);
  }
  return a;
}

RealMatrix regular_bipartite_doubly_stochastic(int n, int k, Rng& rng) {
  return to_real(regular_bipartite_doubly_stochastic_exact(n, k, rng));
}

RationalMatrix random_rational_matrix(int n, Rng& rng, int max_numerator, int max_denominator) {
  std::uniform_int_distribution<int> num(0, max_numerator);
  std::uniform_int_distribution<int> den(1, max_denominator);
  RationalMatrix a(n, n, Rational(0));
  for (int i = 0; i < n; ++i) {
    bool nonzero = false;
    for (int j = 0; j < n; ++j) {
      const int x = num(rng);
      a(i, j) = Rational(x, den(rng));
      a(i, j).canonicalize();
      nonzero = nonzero || x != 0;
    }
    if (!nonzero) a(i, std::uniform_int_distribution<int>(0, n - 1)(rng)) = 1;
  }
  for (int j = 0; j < n; ++j) {
    bool nonzero = false;
    for (int i = 0; i < n; ++i) nonzero = nonzero || a(i, j) != 0;
    if (!nonzero) a(std::uniform_int_distribution<int>(0, n - 1)(rng), j) = 1;
  }
  return a;
}

RationalMatrix random_psd_matrix(int n, Rng& rng, int rank) {
  if (rank < 0) rank = n;
  std::uniform_int_distribution<int> entry(-3, 3);
  RationalMatrix b(n, rank, Rational(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < rank; ++j) b(i, j) = entry(rng);
  }
  RationalMatrix out(n, n, Rational(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      for (int l = 0; l < rank; ++l) out(i, j) += b(i, l) * b(j, l);
    }
  }
  return out;
}

std::vector<RationalMatrix> random_psd_tuple(int count, int n, Rng& rng) {
  for (;;) {
    std::vector<RationalMatrix> tuple;
    RationalMatrix sum(n, n, Rational(0));
    for (int c = 0; c < count; ++c) {
      tuple.push_back(random_psd_matrix(n, rng));
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) sum(i, j) += tuple.back()(i, j);
      }
    }
    if (linalg::determinant(sum) != 0) return tuple;
  }
}

std::vector<RealMatrix> doubly_stochastic_psd_tuple(int n, Rng& rng) {
  std::vector<Eigen::MatrixXd> a;
  for (const auto& m : random_psd_tuple(n, n, rng)) a.push_back(linalg::to_eigen(to_real(m)));
  for (int iter = 0; iter < 10000; ++iter) {
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
    for (const auto& m : a) sum += m;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sum);
    const Eigen::MatrixXd inv_sqrt = solver.operatorInverseSqrt();
    double deviation = 0.0;
    for (auto& m : a) {
      m = inv_sqrt * m * inv_sqrt;
      m = 0.5 * (m + m.transpose());
      const double trace = m.trace();
      deviation = std::max(deviation, std::abs(trace - 1.0));
      m /= trace;
    }
    if (deviation < 1e-15) break;
  }
  // Final pass makes the sum exactly I up to rounding while traces stay ~1.
  Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(n, n);
  for (const auto& m : a) sum += m;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sum);
  const Eigen::MatrixXd inv_sqrt = solver.operatorInverseSqrt();
  std::vector<RealMatrix> out;
  for (auto& m : a) {
    m = inv_sqrt * m * inv_sqrt;
    m = 0.5 * (m + m.transpose());
    out.push_back(linalg::from_eigen(m));
  }
  return out;
}

RationalMatrix circulant3() {
  const Rational h(1, 2);
  return RationalMatrix{{h, h, 0}, {0, h, h}, {h, 0, h}};
}

RationalMatrix uniform_matrix(int n) { return RationalMatrix(n, n, Rational(1, n)); }

ProductFormPolynomial q_family(const std::vector<Rational>& a) {
  const int n = static_cast<int>(a.size());
  RationalMatrix m(n, n, Rational(0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) m(i, j) = a[j] / n;
  }
  return ProductFormPolynomial(std::move(m));
}

SparsePolynomial random_sparse_hyperbolic(int n, Rng& rng) {
  return expand(Polynomial(ProductFormPolynomial(random_rational_matrix(n, rng, 4, 3))));
}

}  // namespace polycap::fixtures
