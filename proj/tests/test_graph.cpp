#include "subspace_round/errors.hpp"
#include "subspace_round/graph.hpp"
#include "subspace_round/synth.hpp"
#include "subspace_round/verify/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace subspace_round;
namespace oracle = subspace_round::verify;

namespace {

WeightedGraph triangles(std::size_t count) {
    std::vector<Edge> edges;
    for (std::size_t t = 0; t < count; ++t) {
        const Node b = 3 * t;
        edges.push_back({b, b + 1, 1.0});
        edges.push_back({b + 1, b + 2, 1.0});
        edges.push_back({b, b + 2, 1.0});
    }
    return WeightedGraph(3 * count, edges);
}

Partition triangle_partition(std::size_t count) {
    std::vector<NodeSet> sets;
    for (std::size_t t = 0; t < count; ++t) sets.push_back(NodeSet::range(3 * t, 3 * t + 3));
    return Partition(3 * count, sets);
}

} // namespace

TEST(WeightedGraph, Validation) {
    EXPECT_THROW(WeightedGraph(2, {{0, 2, 1.0}}), NodeOutOfRange);
    EXPECT_THROW(WeightedGraph(2, {{0, 0, 1.0}}), InvalidGraph);
    EXPECT_THROW(WeightedGraph(2, {{0, 1, -1.0}}), InvalidGraph);
    EXPECT_THROW(WeightedGraph(2, {{0, 1, 1.0}, {1, 0, 1.0}}), InvalidGraph);
    const WeightedGraph m = WeightedGraph::merged(2, {{0, 1, 1.0}, {1, 0, 2.0}});
    ASSERT_EQ(m.edges().size(), 1u);
    EXPECT_EQ(m.edges()[0].w, 3.0);
}

TEST(Laplacian, QuadraticFormIsCut) {
    const WeightedGraph g(4, {{0, 1, 1.0}, {1, 2, 2.0}, {2, 3, 0.5}, {0, 3, 1.5}});
    const DenseMatrix l = laplacian(g);
    const NodeSet t{0, 1};
    const Vector ind = t.indicator(4);
    EXPECT_NEAR(dot(ind, multiply(l, ind)), cut_weight(g, t), 1e-15);
    EXPECT_NEAR(cut_weight(g, t), 3.5, 1e-15);
}

TEST(Expansion, Examples) {
    EXPECT_EQ(expansion(triangles(2), NodeSet{0, 1, 2}), 0.0);
    const WeightedGraph edge(2, {{0, 1, 1.0}});
    EXPECT_EQ(expansion(edge, NodeSet{0}), 1.0);
    const WeightedGraph cycle(4, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 0, 1.0}});
    EXPECT_EQ(expansion(cycle, NodeSet{0, 1}), 1.0);
    EXPECT_THROW(expansion(cycle, NodeSet{}), EmptyOrFullSet);
    EXPECT_THROW(expansion(cycle, NodeSet::range(0, 4)), EmptyOrFullSet);
}

TEST(MaxExpansion, BothFormsAgree) {
    EXPECT_EQ(max_expansion(triangles(3), triangle_partition(3)), 0.0);
    EXPECT_EQ(phi_objective_symmetric(triangles(3), triangle_partition(3)), 0.0);
    const WeightedGraph path(3, {{0, 1, 1.0}, {1, 2, 1.0}});
    const Partition p(3, {NodeSet{0}, NodeSet{1, 2}});
    EXPECT_EQ(max_expansion(path, p), 1.0);
    EXPECT_EQ(phi_objective_symmetric(path, p), 1.0);
    EXPECT_THROW(max_expansion(path, Partition(3, {NodeSet{0}})), IncompleteCover);
    EXPECT_THROW(phi_objective_symmetric(path, Partition(3, {NodeSet{0}})), IncompleteCover);
}

TEST(SpectralBracket, Examples) {
    const SpectralBracket cliques = expansion_spectral_bound(triangles(2), triangle_partition(2));
    EXPECT_NEAR(cliques.lower, 0.0, 1e-12);
    EXPECT_NEAR(cliques.upper, 0.0, 1e-12);
    const WeightedGraph edge(2, {{0, 1, 1.0}});
    const Partition singles(2, {NodeSet{0}, NodeSet{1}});
    const SpectralBracket b = expansion_spectral_bound(edge, singles);
    EXPECT_NEAR(b.upper, 2.0, 1e-10);
    EXPECT_NEAR(b.lower, 1.0, 1e-10);
    EXPECT_EQ(max_expansion(edge, singles), 1.0);
    EXPECT_THROW(expansion_spectral_bound(edge, Partition(2, {NodeSet{0}})), IncompleteCover);
}

TEST(ClusterGraph, DisjointTriangles) {
    const GraphClustering gc = cluster_graph(triangles(3), 3);
    EXPECT_EQ(delta_partitions(gc.partition, triangle_partition(3)).value, 0.0);
    ASSERT_TRUE(gc.report.per_cluster_expansion.has_value());
    for (double e : *gc.report.per_cluster_expansion) EXPECT_EQ(e, 0.0);
    EXPECT_EQ(gc.report.k, 3u);
    EXPECT_EQ(gc.report.n, 9u);
}

TEST(ClusterGraph, PlantedCliquesAtRatioNearOneThousandth) {
    const std::vector<std::size_t> sizes{40, 20, 10, 2};
    const PlantedGraph pg = planted_graph(sizes, {IntraCluster::NormalizedClique, 0}, 0.0225, 1);
    const GraphClustering gc = cluster_graph(pg.graph, 4, 1);
    ASSERT_TRUE(gc.report.lambda_k1.has_value());
    const double ratio = max_expansion(pg.graph, pg.truth) / *gc.report.lambda_k1;
    EXPECT_GT(ratio, 5e-4);
    EXPECT_LT(ratio, 2e-3);
    EXPECT_LE(delta_partitions(gc.partition, pg.truth).value, 0.3);
    EXPECT_TRUE(std::find(gc.partition.sets().begin(), gc.partition.sets().end(), NodeSet{70, 71}) !=
                gc.partition.sets().end());
}

TEST(ClusterGraph, KEqualsNGivesSingletons) {
    for (std::size_t n = 1; n <= 4; ++n) {
        std::vector<Edge> edges;
        for (Node u = 0; u + 1 < n; ++u) edges.push_back({u, u + 1, 1.0});
        const GraphClustering gc = cluster_graph(WeightedGraph(n, edges), n);
        EXPECT_EQ(gc.partition.k(), n);
        for (const NodeSet& s : gc.partition.sets()) EXPECT_EQ(s.size(), 1u);
    }
}

TEST(ClusterGraph, KOutOfRange) {
    EXPECT_THROW(cluster_graph(triangles(1), 0), DimensionMismatch);
    EXPECT_THROW(cluster_graph(triangles(1), 4), DimensionMismatch);
}

TEST(ApproximateMatrix, ExactProjector) {
    const Partition truth(6, {NodeSet{0, 1, 2}, NodeSet{3, 4}, NodeSet{5}});
    const Partition found = approximate_matrix(partition_projector(truth), 3);
    EXPECT_EQ(delta_partitions(found, truth).value, 0.0);
    EXPECT_NEAR(spectral_norm(partition_projector(truth) - partition_projector(found)), 0.0, 1e-12);
}

TEST(ApproximateMatrix, PerturbedProjectorWithinTenEpsQuarter) {
    oracle::Rng rng(53);
    const auto sets = oracle::random_partition(30, 4, true, rng);
    const Partition truth(30, sets);
    DenseMatrix noise = oracle::random_symmetric(30, rng);
    noise *= 1e-4 / oracle::oracle_spectral_norm(noise);
    const DenseMatrix x = partition_projector(truth) + noise;
    const Partition found = approximate_matrix(x, 4);
    const DenseMatrix g = oracle::indicator_basis(found.sets(), 30);
    EXPECT_LE(oracle::oracle_spectral_norm(x - oracle::naive_multiply(g, oracle::naive_transpose(g))),
              10.0 * std::pow(1e-4, 0.25));
}

TEST(ApproximateMatrix, IdentityGivesSingletons) {
    const Partition p = approximate_matrix(DenseMatrix::identity(5), 5);
    EXPECT_EQ(p.k(), 5u);
    for (const NodeSet& s : p.sets()) EXPECT_EQ(s.size(), 1u);
}

TEST(ClusterMatrix, ReportsApproximationError) {
    const Partition truth(6, {NodeSet{0, 1, 2}, NodeSet{3, 4}, NodeSet{5}});
    const ReportedPartition r = cluster_matrix(partition_projector(truth), 3, 4);
    EXPECT_EQ(r.report.k, 3u);
    EXPECT_EQ(r.report.seed, 4u);
    EXPECT_NEAR(r.report.residual, 0.0, 1e-12);
    EXPECT_EQ(r.report.algorithm_parameters.at("mode"), "matrix");
    EXPECT_NEAR(std::stod(r.report.algorithm_parameters.at("approximation_error")), 0.0, 1e-12);
}

TEST(CliqueApproximation, DisjointNormalizedCliques) {
    const PlantedGraph pg = planted_graph({5, 4, 3}, {IntraCluster::NormalizedClique, 0}, 0.0, 2);
    const CliqueApproximation ca = approximate_graph_by_cliques(pg.graph, 3);
    EXPECT_EQ(delta_partitions(ca.partition, pg.truth).value, 0.0);
    EXPECT_NEAR(ca.residual, 0.0, 1e-9);
}

TEST(CliqueApproximation, EmptyGraphGivesSingletons) {
    const CliqueApproximation ca = approximate_graph_by_cliques(WeightedGraph(4, {}), 4);
    EXPECT_EQ(ca.partition.k(), 4u);
    for (const NodeSet& s : ca.partition.sets()) EXPECT_EQ(s.size(), 1u);
}

TEST(ReductionFeasibility, PartitionProjectorPasses) {
    const Partition truth(6, {NodeSet{0, 1, 2}, NodeSet{3, 4}, NodeSet{5}});
    const DenseMatrix y = basis_matrix(truth).transpose();
    const ReductionReport r = verify_reduction_feasibility(partition_projector(truth), y, 0.0, truth);
    EXPECT_TRUE(r.all_passed());
    EXPECT_EQ(r.per_cluster_phi.size(), 3u);
    for (double phi : r.per_cluster_phi) EXPECT_NEAR(phi, 0.0, 1e-12);
}

TEST(ReductionFeasibility, OffBlockBumpFailsDoublyStochastic) {
    const Partition truth(6, {NodeSet{0, 1, 2}, NodeSet{3, 4}, NodeSet{5}});
    const DenseMatrix y = basis_matrix(truth).transpose();
    DenseMatrix x = partition_projector(truth);
    x(0, 5) += 0.5;
    x(5, 0) += 0.5;
    const ReductionReport r = verify_reduction_feasibility(x, y, 0.0, truth);
    EXPECT_FALSE(r.check("doubly_stochastic").passed);
    EXPECT_FALSE(r.all_passed());
}

TEST(ReductionFeasibility, UniformSingleCluster) {
    const std::size_t n = 5;
    const DenseMatrix x(n, n, 1.0 / static_cast<double>(n));
    const DenseMatrix y(1, n, 1.0 / std::sqrt(static_cast<double>(n)));
    const ReductionReport r = verify_reduction_feasibility(x, y, 0.0);
    EXPECT_TRUE(r.all_passed());
    EXPECT_NEAR(r.lambda_k1_bound, 1.0, 1e-15);
}

TEST(LambdaK, SingleEdgeReachesTwiceTheExpansion) {
    // λ_2 of a single edge equals 2·φ_2, so only the factor-2 bound holds.
    const WeightedGraph edge(2, {{0, 1, 1.0}});
    const Partition singles(2, {NodeSet{0}, NodeSet{1}});
    const double lambda2 = bottom_k_eigenpairs(laplacian(edge), 2).values[1];
    EXPECT_NEAR(lambda2, 2.0, 1e-10);
    EXPECT_GT(lambda2, max_expansion(edge, singles));
    EXPECT_LE(lambda2, 2.0 * max_expansion(edge, singles) + 1e-10);
}
