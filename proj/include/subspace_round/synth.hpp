#pragma once

#include "subspace_round/graph.hpp"
#include "subspace_round/partitions.hpp"
#include "subspace_round/spectral_clustering.hpp"

#include <cstdint>
#include <vector>

namespace subspace_round {

struct PlantedEmbedding {
    Embedding embedding;
    Partition truth;
    double eps_actual = 0.0; // residual(Y, truth), measured
    double noise_scale = 0.0;
};

/// Clusters of the given sizes on nodes 0..Σsizes−1 (in order); the rest of
/// {0..n−1} stays uncovered. Y is the row-orthonormalized sum of basis_matrixᵀ
/// and ν·N for seeded Gaussian N, with ν bisected until the measured residual
/// lies in [ε/2, 2ε]. Throws SizesExceedN.
PlantedEmbedding planted_embedding(std::size_t n, const std::vector<std::size_t>& sizes, double eps_target,
                                   std::uint64_t seed);

enum class IntraCluster { NormalizedClique, RandomRegular };

struct IntraSpec {
    IntraCluster kind = IntraCluster::NormalizedClique;
    std::size_t degree = 3; // for RandomRegular
};

struct PlantedGraph {
    WeightedGraph graph;
    Partition truth;
};

/// Clusters are normalized cliques (weight 1/|T| per pair) or random
/// d-regular graphs (weight 1/d per edge). `cross_edges` uniformly random
/// inter-cluster pairs share the total weight `cross_weight`; repeated pairs
/// are merged. Zero means one cross edge per node.
PlantedGraph planted_graph(const std::vector<std::size_t>& sizes, const IntraSpec& intra, double cross_weight,
                           std::uint64_t seed, std::size_t cross_edges = 0);

} // namespace subspace_round
