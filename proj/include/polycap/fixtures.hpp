#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "polycap/matrix.hpp"
#include "polycap/polynomial.hpp"

// Deterministic random instances shared by the tests, the acceptance suite
// and the CLI.
namespace polycap::fixtures {

using Rng = std::mt19937_64;

/// Entries uniform in [lo, 1].
RealMatrix random_positive_matrix(int n, Rng& rng, double lo = 0.05);

/// Sinkhorn scaling of a random positive matrix.
RealMatrix random_doubly_stochastic(int n, Rng& rng);

/// (1/k) times the biadjacency matrix of a random k-regular bipartite graph
/// (union of k pairwise disjoint random permutations; rejection sampling
/// with a Latin-square fallback).
RealMatrix regular_bipartite_doubly_stochastic(int n, int k, Rng& rng);
RationalMatrix regular_bipartite_doubly_stochastic_exact(int n, int k, Rng& rng);

/// Entries a/b with 0 <= a <= max_numerator, 1 <= b <= max_denominator;
/// no zero rows or columns.
RationalMatrix random_rational_matrix(int n, Rng& rng, int max_numerator = 9, int max_denominator = 6);

/// B B^T with small integer B.
RationalMatrix random_psd_matrix(int n, Rng& rng, int rank = -1);
std::vector<RationalMatrix> random_psd_tuple(int count, int n, Rng& rng);

/// PSD tuple with unit traces summing to the identity, by alternating
/// normalizations of sum_i A_i and of the traces.
std::vector<RealMatrix> doubly_stochastic_psd_tuple(int n, Rng& rng);

/// The circulant [[1/2,1/2,0],[0,1/2,1/2],[1/2,0,1/2]].
RationalMatrix circulant3();

/// J_n, every entry 1/n.
RationalMatrix uniform_matrix(int n);

/// q_a(x) = (sum a_i x_i / n)^n as a product form; Cap = prod a_i and the
/// mixed partial is n!/n^n prod a_i.
ProductFormPolynomial q_family(const std::vector<Rational>& a);

/// Sparse expansion of a random rational product form.
SparsePolynomial random_sparse_hyperbolic(int n, Rng& rng);

}  // namespace polycap::fixtures
