#include "subspace_round/errors.hpp"
#include "subspace_round/spectral_clustering.hpp"
#include "subspace_round/synth.hpp"
#include "subspace_round/verify/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace subspace_round;
namespace oracle = subspace_round::verify;

namespace {

DenseMatrix exact_rows(const std::vector<NodeSet>& sets, std::size_t n) {
    return oracle::naive_transpose(oracle::indicator_basis(sets, n));
}

/// Rotates coordinates (a, b) of every row by `angle`.
DenseMatrix rotate_columns(DenseMatrix z, std::size_t a, std::size_t b, double angle) {
    const double c = std::cos(angle), s = std::sin(angle);
    for (std::size_t i = 0; i < z.rows(); ++i) {
        const double x = z(i, a), y = z(i, b);
        z(i, a) = c * x - s * y;
        z(i, b) = s * x + c * y;
    }
    return z;
}

} // namespace

TEST(Embedding, RejectsNonOrthonormalRows) {
    EXPECT_THROW(Embedding(DenseMatrix::from_rows({{1, 1}})), NotOrthonormal);
    EXPECT_NO_THROW(Embedding(DenseMatrix::identity(3)));
    const Embedding e = Embedding::orthonormalized(DenseMatrix::from_rows({{3, 4, 0}, {1, 0, 0}}));
    EXPECT_EQ(e.k(), 2u);
}

TEST(FindCluster, ExactBlocks) {
    const std::vector<NodeSet> sets{NodeSet{0, 1}, NodeSet{2}};
    const FindClusterResult r = find_cluster_detailed(exact_rows(sets, 3));
    EXPECT_TRUE(r.cluster == sets[0] || r.cluster == sets[1]) << r.cluster.to_string();
    EXPECT_EQ(r.delta, 0.0);
}

TEST(FindCluster, SingleClusterReturnsAll) {
    const std::size_t n = 6;
    const DenseMatrix z(1, n, 1.0 / std::sqrt(static_cast<double>(n)));
    EXPECT_EQ(find_cluster(z), NodeSet::range(0, n));
}

TEST(FindCluster, SmallRotationMatchesOracle) {
    oracle::Rng rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const std::size_t n = 8 + oracle::uniform_index(10, rng);
        const std::size_t k = 2 + oracle::uniform_index(3, rng);
        const auto sets = oracle::random_partition(n, k, true, rng);
        const std::size_t a = oracle::uniform_index(n, rng);
        const std::size_t b = (a + 1 + oracle::uniform_index(n - 1, rng)) % n;
        const DenseMatrix z = rotate_columns(exact_rows(sets, n), a, b, 1e-3);
        const FindClusterResult got = find_cluster_detailed(z);
        const oracle::FindClusterOracle want = oracle::brute_find_cluster(z);
        EXPECT_NEAR(got.delta, want.delta, 1e-12);
        EXPECT_EQ(got.center, want.center);
        EXPECT_TRUE(std::find(sets.begin(), sets.end(), got.cluster) != sets.end()) << got.cluster.to_string();
    }
}

TEST(FindCluster, ZeroInputThrows) {
    EXPECT_THROW(find_cluster(DenseMatrix(2, 4)), NoClusterFound);
}

TEST(Boost, ExactBlockRecoversT) {
    const std::vector<NodeSet> sets{NodeSet::range(0, 10), NodeSet::range(10, 16)};
    const DenseMatrix y = exact_rows(sets, 16);
    EXPECT_EQ(boost(y, sets[0]), sets[0]);
    EXPECT_EQ(boost(y, NodeSet::range(0, 9)), sets[0]);
}

TEST(Boost, PerturbedBlocksWithinBound) {
    const double eps = 1e-4;
    const PlantedEmbedding pe = planted_embedding(60, {20, 20, 20}, eps, 3);
    const NodeSet& t = pe.truth[0];
    std::vector<Node> s(t.begin(), t.begin() + 15);
    for (Node u = 20; u < 25; ++u) s.push_back(u);
    const NodeSet out = boost(pe.embedding, NodeSet(s));
    EXPECT_LE(oracle::set_delta(out, t), 50.0 * std::sqrt(pe.eps_actual));
}

TEST(Boost, Errors) {
    const DenseMatrix y = exact_rows({NodeSet{0, 1}}, 3);
    EXPECT_THROW(boost(y, NodeSet{}), EmptySet);
    EXPECT_THROW(boost(y, NodeSet{2}), ZeroMatrix);
}

TEST(SpectralClustering, ExactPlantsRecovered) {
    oracle::Rng rng(43);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 2 + oracle::uniform_index(49, rng);
        const std::size_t k = 1 + oracle::uniform_index(std::min<std::size_t>(n, 5), rng);
        const auto sets = oracle::random_partition(n, k, trial % 2 == 0, rng);
        const Partition found = spectral_clustering(Embedding(exact_rows(sets, n)));
        EXPECT_EQ(delta_partitions(found, Partition(n, sets)).value, 0.0);
    }
}

TEST(SpectralClustering, SingleRowGivesWholeSet) {
    const std::size_t n = 9;
    const Partition p = spectral_clustering(Embedding(DenseMatrix(1, n, 1.0 / 3.0)));
    ASSERT_EQ(p.k(), 1u);
    EXPECT_EQ(p[0], NodeSet::range(0, n));
}

TEST(SpectralClustering, PlantedSizesWithinConstant) {
    for (double eps : {1e-6, 1e-4}) {
        const PlantedEmbedding pe = planted_embedding(200, {100, 50, 10, 3, 1}, eps, 9);
        const Partition found = spectral_clustering(pe.embedding);
        EXPECT_LE(delta_partitions(found, pe.truth).value, 200.0 * std::sqrt(pe.eps_actual));
        for (const NodeSet& t : pe.truth.sets()) {
            if (t.size() > 3) continue;
            EXPECT_TRUE(std::find(found.sets().begin(), found.sets().end(), t) != found.sets().end())
                << "eps=" << eps << " cluster " << t.to_string();
        }
    }
}

TEST(Residual, ExactPlantIsZero) {
    const std::vector<NodeSet> sets{NodeSet{0, 1, 2}, NodeSet{3, 4}};
    EXPECT_NEAR(residual(exact_rows(sets, 5), Partition(5, sets)), 0.0, 1e-15);
}

TEST(Residual, WholeSetOnTwoNodes) {
    const DenseMatrix y = DenseMatrix::identity(2);
    const double got = residual(y, Partition(2, {NodeSet{0, 1}}));
    EXPECT_NEAR(got, oracle::oracle_residual(y, {NodeSet{0, 1}}), 1e-12);
    EXPECT_NEAR(got, 1.0, 1e-12);
}

TEST(Residual, RandomMatchesGramOracle) {
    oracle::Rng rng(47);
    for (int trial = 0; trial < 30; ++trial) {
        const std::size_t n = 3 + oracle::uniform_index(20, rng);
        const std::size_t k = 1 + oracle::uniform_index(std::min<std::size_t>(n, 4), rng);
        const DenseMatrix y = oracle::random_orthonormal_rows(k, n, rng);
        const auto sets = oracle::random_partition(n, k, trial % 2 == 0, rng);
        EXPECT_NEAR(residual(y, Partition(n, sets)), oracle::oracle_residual(y, sets), 1e-9);
    }
}

TEST(CoverUncovered, AssignsEveryNode) {
    const std::vector<NodeSet> sets{NodeSet{0, 1, 2}, NodeSet{3, 4}};
    const DenseMatrix y = exact_rows({NodeSet{0, 1, 2, 5}, NodeSet{3, 4}}, 6);
    const Partition covered = cover_uncovered(y, Partition(6, sets));
    EXPECT_TRUE(covered.covers_all());
    EXPECT_EQ(covered[0], (NodeSet{0, 1, 2, 5}));
}
