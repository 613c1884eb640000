#include "subspace_round/errors.hpp"
#include "subspace_round/partitions.hpp"
#include "subspace_round/verify/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace subspace_round;
namespace oracle = subspace_round::verify;

TEST(NodeSet, SortsAndDeduplicates) {
    const NodeSet s{3, 1, 3, 2};
    EXPECT_EQ(s.size(), 3u);
    EXPECT_EQ(s.to_string(), "{1,2,3}");
    EXPECT_TRUE(s.contains(2));
    EXPECT_FALSE(s.contains(0));
    EXPECT_EQ(intersection_size(s, NodeSet{2, 3, 4}), 2u);
    EXPECT_EQ(set_difference(s, NodeSet{2}), (NodeSet{1, 3}));
}

TEST(Partition, RejectsOverlapEmptyAndOutOfRange) {
    EXPECT_THROW(Partition(3, {NodeSet{0, 1}, NodeSet{1, 2}}), OverlapDetected);
    EXPECT_THROW(Partition(3, {NodeSet{0}, NodeSet{}}), EmptySet);
    EXPECT_THROW(Partition(2, {NodeSet{0, 2}}), NodeOutOfRange);
}

TEST(Partition, LabelsRoundTrip) {
    const Partition p(5, {NodeSet{0, 3}, NodeSet{1}});
    const auto labels = p.labels();
    EXPECT_EQ(labels[2], Partition::kUnassigned);
    EXPECT_EQ(Partition::from_labels(labels, 2), p);
    EXPECT_EQ(p.covered_count(), 3u);
    EXPECT_FALSE(p.covers_all());
}

TEST(BasisMatrix, Singletons) {
    const DenseMatrix b = basis_matrix(Partition(2, {NodeSet{0}, NodeSet{1}}));
    EXPECT_EQ((b - DenseMatrix::identity(2)).max_abs(), 0.0);
}

TEST(BasisMatrix, PairOnThreeNodes) {
    const DenseMatrix b = basis_matrix(Partition(3, {NodeSet{0, 1}}));
    ASSERT_EQ(b.rows(), 3u);
    ASSERT_EQ(b.cols(), 1u);
    EXPECT_NEAR(b(0, 0), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(b(1, 0), 1.0 / std::sqrt(2.0), 1e-15);
    EXPECT_EQ(b(2, 0), 0.0);
}

TEST(BasisMatrix, RandomIsOrthonormal) {
    oracle::Rng rng(2);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t n = 1 + oracle::uniform_index(40, rng);
        const std::size_t k = 1 + oracle::uniform_index(std::min<std::size_t>(n, 6), rng);
        const auto sets = oracle::random_partition(n, k, trial % 2 == 0, rng);
        const DenseMatrix b = basis_matrix(Partition(n, sets));
        const DenseMatrix gram = oracle::naive_multiply(oracle::naive_transpose(b), b);
        EXPECT_LE(oracle::oracle_spectral_norm(gram - DenseMatrix::identity(k)), 1e-12);
        EXPECT_LE((b - oracle::indicator_basis(sets, n)).max_abs(), 1e-15);
    }
}

TEST(DeltaVectors, Examples) {
    const std::vector<double> p{1, 2, 3}, e1{1, 0}, e2{0, 1}, a{1, 1, 0}, b{0, 1, 1}, z{0, 0, 0};
    EXPECT_NEAR(delta_vectors(p, p), 0.0, 1e-15);
    EXPECT_NEAR(delta_vectors(e1, e2), 1.0, 1e-15);
    EXPECT_NEAR(delta_vectors(a, b), 0.75, 1e-15);
    EXPECT_NEAR(delta_vectors(a, b), oracle::vector_delta(a, b), 1e-15);
    EXPECT_THROW(delta_vectors(p, z), ZeroVector);
}

TEST(DeltaSets, Examples) {
    const NodeSet a{1, 2}, b{2, 3}, c{4, 5};
    EXPECT_EQ(delta_sets(a, a), 0.0);
    EXPECT_EQ(delta_sets(a, c), 1.0);
    EXPECT_NEAR(delta_sets(a, b), 0.75, 1e-15);
    EXPECT_NEAR(delta_sets(a, b), oracle::set_delta(a, b), 1e-15);
    EXPECT_THROW(delta_sets(a, NodeSet{}), EmptySet);
}

TEST(Jaccard, Examples) {
    const NodeSet a{1, 2}, b{2, 3}, c{4};
    EXPECT_EQ(jaccard_symmetric_difference(a, a), 0.0);
    EXPECT_EQ(jaccard_symmetric_difference(a, c), 1.0);
    EXPECT_NEAR(jaccard_symmetric_difference(a, b), 2.0 / 3.0, 1e-15);
    EXPECT_THROW(jaccard_symmetric_difference(NodeSet{}, NodeSet{}), EmptyUnion);
}

TEST(DeltaPartitions, IdentityAndRelabeling) {
    const Partition p(2, {NodeSet{0}, NodeSet{1}});
    const PartitionMatch same = delta_partitions(p, p);
    EXPECT_EQ(same.value, 0.0);
    EXPECT_EQ(same.bijection, (std::vector<std::size_t>{0, 1}));
    const Partition swapped(2, {NodeSet{1}, NodeSet{0}});
    const PartitionMatch sw = delta_partitions(p, swapped);
    EXPECT_EQ(sw.value, 0.0);
    EXPECT_EQ(sw.bijection, (std::vector<std::size_t>{1, 0}));
}

TEST(DeltaPartitions, MatchesExhaustiveBijections) {
    oracle::Rng rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        const auto a = oracle::random_partition(9, 3, trial % 2 == 0, rng);
        const auto b = oracle::random_partition(9, 3, trial % 3 == 0, rng);
        const PartitionMatch got = delta_partitions(std::span(a), std::span(b));
        const oracle::BruteMatch want = oracle::brute_delta_partitions(a, b);
        EXPECT_NEAR(got.value, want.value, 1e-15);
        EXPECT_EQ(got.bijection, want.bijection);
    }
}

TEST(DeltaPartitions, SizeMismatch) {
    const Partition a(3, {NodeSet{0}, NodeSet{1, 2}});
    const Partition b(3, {NodeSet{0, 1, 2}});
    EXPECT_THROW(delta_partitions(a, b), SizeMismatch);
}

TEST(GreedyMatch, Identity) {
    const Partition p(6, {NodeSet{0, 1, 2}, NodeSet{3, 4}, NodeSet{5}});
    EXPECT_EQ(greedy_match(p, p), (std::vector<std::size_t>{0, 1, 2}));
}

TEST(GreedyMatch, OneNodeMovedAgreesWithBottleneck) {
    const Partition a(20, {NodeSet::range(0, 10), NodeSet::range(10, 18), NodeSet{18, 19}});
    std::vector<Node> first(a[0].begin(), a[0].end());
    first.pop_back();
    std::vector<Node> second(a[1].begin(), a[1].end());
    second.push_back(9);
    const Partition b(20, {NodeSet{18, 19}, NodeSet(second), NodeSet(first)});
    EXPECT_EQ(greedy_match(a, b), delta_partitions(a, b).bijection);
}

TEST(GreedyMatch, AdversarialPairIsNotBijective) {
    const Partition a(4, {NodeSet{0, 1}, NodeSet{2, 3}});
    const Partition b(4, {NodeSet{0, 2}, NodeSet{1, 3}});
    EXPECT_GE(delta_partitions(a, b).value, 0.5);
    EXPECT_THROW(greedy_match(a, b), NotBijective);
}
