#pragma once

// Brute-force reference implementations. None of these call into the
// library's numerical or combinatorial routines; DenseMatrix, NodeSet and
// Partition are used only as containers.

#include "subspace_round/linalg.hpp"
#include "subspace_round/partitions.hpp"

#include <cstddef>
#include <cstdint>
#include <random>
#include <vector>

namespace subspace_round::verify {

using Rng = std::mt19937_64;

struct EigenSystem {
    std::vector<double> values; // descending
    DenseMatrix vectors;        // column j pairs with values[j]
};

/// Cyclic Jacobi on a symmetric matrix, swept until off-diagonal mass is
/// below 1e-30 of the Frobenius norm.
EigenSystem jacobi_eigen(const DenseMatrix& sym);

/// Singular values, descending, min(rows, cols) of them (one-sided Jacobi).
std::vector<double> singular_values(const DenseMatrix& m);
double oracle_spectral_norm(const DenseMatrix& m);

/// Closed-form eigenvalues of [[a, b], [b, c]], descending.
std::pair<double, double> eigen_2x2(double a, double b, double c);

DenseMatrix naive_multiply(const DenseMatrix& a, const DenseMatrix& b);
DenseMatrix naive_transpose(const DenseMatrix& a);

/// Orthogonal projector onto the column space of m, from the eigenvectors
/// of m mᵀ with eigenvalue above rel_tol · λ_max.
DenseMatrix column_projector(const DenseMatrix& m, double rel_tol = 1e-10);

/// n x k normalized indicator columns built directly from the sets.
DenseMatrix indicator_basis(const std::vector<NodeSet>& sets, std::size_t n);

/// 1 − |A∩B|²/(|A||B|) from raw membership counts.
double set_delta(const NodeSet& a, const NodeSet& b);
double vector_delta(const std::vector<double>& p, const std::vector<double>& q);

struct BruteMatch {
    double value = 0.0;
    std::vector<std::size_t> bijection; // lexicographically smallest optimum
};
/// Enumerates every permutation.
BruteMatch brute_delta_partitions(const std::vector<NodeSet>& a, const std::vector<NodeSet>& b);

/// All threshold sets {u : s q_u ≥ s q_v} for every v and s = ±1, deduplicated.
std::vector<NodeSet> threshold_sets(const std::vector<double>& q);
double threshold_score(const std::vector<double>& q, const NodeSet& s);

/// max over (c, j) of the acceptance condition, evaluated directly from the
/// definition: prefix of the j nodes with the smallest ‖z_u − z_c‖/‖z_u‖.
/// Returns the minimal δ′ over all centers and the center attaining it (ties
/// to the smallest).
struct FindClusterOracle {
    double delta = 0.0;
    std::size_t center = 0;
};
FindClusterOracle brute_find_cluster(const DenseMatrix& z);

/// Exhaustive search over assignments of each node to one of its sets (or
/// none) for disjoint U_S ⊆ S with |U_S| ≥ block[S].
bool brute_unravel_feasible(const std::vector<NodeSet>& family, std::size_t n,
                            const std::vector<std::size_t>& block);

/// ‖Y − YΓ^proj‖₂² via the Gram eigenvalue of the explicit difference.
double oracle_residual(const DenseMatrix& y, const std::vector<NodeSet>& sets);

// Generators

/// k x n with orthonormal rows (Gaussian rows, classical Gram-Schmidt twice).
DenseMatrix random_orthonormal_rows(std::size_t k, std::size_t n, Rng& rng);
DenseMatrix random_symmetric(std::size_t n, Rng& rng);
DenseMatrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng);
/// Q diag(values) Qᵀ for a random orthogonal Q.
DenseMatrix with_spectrum(const std::vector<double>& values, Rng& rng);
/// k non-empty disjoint sets; when `full` every node is covered.
std::vector<NodeSet> random_partition(std::size_t n, std::size_t k, bool full, Rng& rng);
std::size_t uniform_index(std::size_t bound, Rng& rng);
double uniform_real(double lo, double hi, Rng& rng);

} // namespace subspace_round::verify
