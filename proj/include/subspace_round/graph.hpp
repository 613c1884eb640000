#pragma once

#include "subspace_round/linalg.hpp"
#include "subspace_round/partitions.hpp"
#include "subspace_round/report.hpp"
#include "subspace_round/spectral_clustering.hpp"

#include <optional>
#include <string>
#include <vector>

namespace subspace_round {

struct Edge {
    Node u = 0;
    Node v = 0;
    double w = 0.0;
};

/// Undirected graph with positive edge weights, no loops and no repeated pairs.
class WeightedGraph {
public:
    /// Throws NodeOutOfRange or InvalidGraph.
    WeightedGraph(std::size_t n, std::vector<Edge> edges);
    /// Like the constructor but sums the weights of repeated pairs.
    static WeightedGraph merged(std::size_t n, const std::vector<Edge>& edges);

    std::size_t n() const noexcept { return n_; }
    const std::vector<Edge>& edges() const noexcept { return edges_; }
    double total_weight() const;
    std::vector<double> degrees() const;

private:
    std::size_t n_;
    std::vector<Edge> edges_;
};

/// Combinatorial Laplacian D − A.
DenseMatrix laplacian(const WeightedGraph& g);

/// Total weight of edges with exactly one endpoint in T.
double cut_weight(const WeightedGraph& g, const NodeSet& t);

/// C(T, T̄) / |T|. Throws EmptyOrFullSet.
double expansion(const WeightedGraph& g, const NodeSet& t);

/// max_T C(T, T̄)/|T| over the sets of a full partition. Throws IncompleteCover.
double max_expansion(const WeightedGraph& g, const Partition& gamma);
/// max_S C(S, S̄)/min(|S|, |S̄|) over the sets of a full partition; a set
/// equal to V contributes 0. Throws IncompleteCover.
double phi_objective_symmetric(const WeightedGraph& g, const Partition& gamma);

struct SpectralBracket {
    double lower = 0.0;
    double upper = 0.0;
};

/// (s/2, s) for s = ‖ΓᵀLΓ‖₂. Throws IncompleteCover.
SpectralBracket expansion_spectral_bound(const WeightedGraph& g, const Partition& gamma);

struct GraphClustering {
    Partition partition;
    ClusteringReport report;
    Embedding embedding;
};

/// Clusters the rows formed by the k smallest Laplacian eigenvectors, then
/// assigns uncovered nodes to the nearest center.
GraphClustering cluster_graph(const WeightedGraph& g, std::size_t k, std::uint64_t seed = 0);

/// k + 1-th smallest Laplacian eigenvalue given orthonormal rows Y spanning
/// the k smallest eigenvectors. Value-only estimate.
double next_laplacian_eigenvalue(const DenseMatrix& lap, const DenseMatrix& y);

/// Runs spectral clustering on the top-k eigenvectors of a symmetric X.
Partition approximate_matrix(const DenseMatrix& x, std::size_t k);

struct ReportedPartition {
    Partition partition;
    ClusteringReport report;
};

/// spectral_clustering on Y without the uncovered-node post-pass.
ReportedPartition cluster_embedding(const Embedding& y, std::uint64_t seed = 0);

/// approximate_matrix with a report; the residual is measured on the top-k
/// eigenvector rows and ‖X − Γ^proj‖₂ goes to the parameters.
ReportedPartition cluster_matrix(const DenseMatrix& x, std::size_t k, std::uint64_t seed = 0);

/// Γ^proj (n x n); uncovered nodes give zero rows.
DenseMatrix partition_projector(const Partition& gamma);

struct CliqueApproximation {
    Partition partition;
    double scale = 1.0;          // λ_max(L) used to normalize, 1 when L = 0
    double residual = 0.0;       // ‖L/scale − Γ^⊥‖₂
};

CliqueApproximation approximate_graph_by_cliques(const WeightedGraph& g, std::size_t k);

struct ConditionCheck {
    std::string name;
    bool passed = false;
    double value = 0.0; // the measured quantity
    double bound = 0.0; // the quantity it is compared against
};

struct ReductionReport {
    std::vector<ConditionCheck> checks;
    double lambda_k1_bound = 0.0;            // 1 − √ε
    std::vector<double> per_cluster_phi;     // 1_Tᵀ(I − X)1_T / |T| for T in the truth
    bool all_passed() const;
    const ConditionCheck& check(const std::string& name) const;
};

inline constexpr double kReductionTolerance = 1e-8;

/// Checks (i) X ⪯ Y^proj + √ε Y^⊥, (ii) YXYᵀ ⪰ (1 − ε)I, doubly stochastic,
/// diagonally dominant Laplacian I − X, PSD and trace k.
ReductionReport verify_reduction_feasibility(const DenseMatrix& x, const DenseMatrix& y, double eps,
                                             const std::optional<Partition>& truth = std::nullopt);

} // namespace subspace_round
