#pragma once

#include "subspace_round/linalg.hpp"
#include "subspace_round/partitions.hpp"

#include <cstddef>
#include <vector>

namespace subspace_round {

inline constexpr double kOrthonormalityTolerance = 1e-8;

/// k x n matrix with orthonormal rows.
class Embedding {
public:
    /// Throws NotOrthonormal when ‖YYᵀ − I‖₂ exceeds `tol`, NonFinite on NaN/Inf.
    explicit Embedding(DenseMatrix y, double tol = kOrthonormalityTolerance);

    /// Orthonormal basis of the row space of `m`, re-expressed as an Embedding.
    static Embedding orthonormalized(const DenseMatrix& m);

    std::size_t k() const noexcept { return y_.rows(); }
    std::size_t n() const noexcept { return y_.cols(); }
    const DenseMatrix& matrix() const noexcept { return y_; }

private:
    DenseMatrix y_;
};

struct FindClusterResult {
    NodeSet cluster;        // rounded output
    NodeSet prefix;         // the accepted prefix before rounding
    std::size_t center = 0; // accepted candidate center
    double delta = 0.0;     // minimal critical value δ′
};

/// Critical value of candidate center c: min over prefixes j of
/// max(1 − mass_j, dist_j) along the ratio order of c. Exposed for oracles.
double find_cluster_critical_value(const DenseMatrix& z, std::size_t c);

/// Core-set search on a matrix whose singular values are 0 or 1.
/// Throws NoClusterFound when no prefix is acceptable at any δ′ ≤ 1.
FindClusterResult find_cluster_detailed(const DenseMatrix& z);
inline NodeSet find_cluster(const DenseMatrix& z) { return find_cluster_detailed(z).cluster; }

/// Rounds Yᵀp for p the top left singular vector of the columns of Y in S.
/// Throws EmptySet or ZeroMatrix.
NodeSet boost(const DenseMatrix& y, const NodeSet& s);
inline NodeSet boost(const Embedding& y, const NodeSet& s) { return boost(y.matrix(), s); }

struct SpectralClusteringResult {
    Partition partition;
    std::vector<NodeSet> cores;   // S_1..S_k
    std::vector<NodeSet> boosted; // Ŝ_1..Ŝ_k
    std::vector<double> find_deltas;
    double unravel_delta = 0.0;
};

/// Errors from inner stages are rethrown with the iteration and stage
/// prepended to the message.
SpectralClusteringResult spectral_clustering_detailed(const Embedding& y);
inline Partition spectral_clustering(const Embedding& y) { return spectral_clustering_detailed(y).partition; }

/// ‖Y − (YΓ)Γᵀ‖₂²; uncovered columns count in full.
double residual(const DenseMatrix& y, const Partition& gamma);
inline double residual(const Embedding& y, const Partition& gamma) { return residual(y.matrix(), gamma); }

/// Assigns every uncovered node to the cluster with the nearest center in
/// the columns of Y. Centers are those of the input partition.
Partition cover_uncovered(const DenseMatrix& y, const Partition& gamma);

} // namespace subspace_round
