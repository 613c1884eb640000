#include "subspace_round/errors.hpp"
#include "subspace_round/matching.hpp"
#include "subspace_round/unravel.hpp"
#include "subspace_round/verify/oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace subspace_round;
namespace oracle = subspace_round::verify;

namespace {

bool contains(const std::vector<double>& v, double x) {
    return std::any_of(v.begin(), v.end(), [&](double y) { return std::abs(x - y) < 1e-15; });
}

} // namespace

TEST(CandidateDeltas, Examples) {
    EXPECT_EQ(candidate_deltas(OverlappingFamily(2, {NodeSet{0, 1}})), (std::vector<double>{0.0, 0.5}));
    EXPECT_EQ(candidate_deltas(OverlappingFamily(1, {NodeSet{0}})), (std::vector<double>{0.0}));
    const OverlappingFamily f(14, {NodeSet::range(0, 4), NodeSet::range(3, 7), NodeSet::range(6, 11), NodeSet{13}});
    const auto grid = candidate_deltas(f);
    EXPECT_TRUE(contains(grid, 0.25));
    EXPECT_TRUE(std::is_sorted(grid.begin(), grid.end()));
}

TEST(Unravel, FigureExample) {
    // a..k are 0..10.
    const OverlappingFamily f(11, {NodeSet{0, 1, 2, 4}, NodeSet{3, 4, 5, 6}, NodeSet{6, 7, 8, 9, 10}, NodeSet{10}});
    const UnravelResult r = unravel(f);
    EXPECT_DOUBLE_EQ(r.delta, 0.25);
    ASSERT_EQ(r.partition.k(), 4u);
    const std::vector<std::size_t> sizes{3, 3, 4, 1};
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(r.partition[i].size(), sizes[i]);
        EXPECT_EQ(set_difference(r.partition[i], f[i]).size(), 0u);
    }
    EXPECT_EQ(r.partition[0], (NodeSet{0, 1, 2}));
    EXPECT_EQ(r.partition[1], (NodeSet{3, 4, 5}));
    EXPECT_EQ(r.partition[2], (NodeSet{6, 7, 8, 9}));
    EXPECT_EQ(r.partition[3], NodeSet{10});
}

TEST(Unravel, DisjointInputIsUnchanged) {
    const OverlappingFamily f(7, {NodeSet{0, 1}, NodeSet{2, 3, 4}, NodeSet{6}});
    const UnravelResult r = unravel(f);
    EXPECT_EQ(r.delta, 0.0);
    for (std::size_t i = 0; i < f.k(); ++i) EXPECT_EQ(r.partition[i], f[i]);
}

TEST(Unravel, TwoOverlappingPairs) {
    const OverlappingFamily f(4, {NodeSet{1, 2}, NodeSet{2, 3}});
    EXPECT_FALSE(unravel_at(f, 0.0).has_value());
    EXPECT_FALSE(oracle::brute_unravel_feasible(f.sets(), 4, {2, 2}));
    EXPECT_TRUE(oracle::brute_unravel_feasible(f.sets(), 4, {1, 1}));
    const UnravelResult r = unravel(f);
    EXPECT_DOUBLE_EQ(r.delta, 0.5);
    for (std::size_t i = 0; i < 2; ++i) {
        EXPECT_EQ(r.partition[i].size(), 1u);
        EXPECT_EQ(set_difference(r.partition[i], f[i]).size(), 0u);
    }
    EXPECT_NE(r.partition[0], r.partition[1]);
}

TEST(Unravel, IdenticalSingletonsAreInfeasible) {
    const OverlappingFamily f(3, {NodeSet{0}, NodeSet{0}});
    EXPECT_THROW(unravel(f), Infeasible);
}

TEST(Unravel, FeasibilityMatchesOracle) {
    oracle::Rng rng(13);
    for (int trial = 0; trial < 200; ++trial) {
        const std::size_t n = 2 + oracle::uniform_index(7, rng);
        const std::size_t k = 1 + oracle::uniform_index(3, rng);
        std::vector<NodeSet> sets;
        for (std::size_t i = 0; i < k; ++i) {
            std::vector<Node> m;
            for (Node u = 0; u < n; ++u)
                if (oracle::uniform_index(2, rng)) m.push_back(u);
            if (m.empty()) m.push_back(oracle::uniform_index(n, rng));
            sets.emplace_back(std::move(m));
        }
        const OverlappingFamily f(n, sets);
        for (double d : candidate_deltas(f)) {
            std::vector<std::size_t> block;
            for (const auto& s : sets)
                block.push_back(static_cast<std::size_t>(std::ceil((1.0 - d) * static_cast<double>(s.size()) - 1e-9)));
            EXPECT_EQ(unravel_at(f, d).has_value(), oracle::brute_unravel_feasible(sets, n, block));
        }
    }
}

TEST(Unravel, DeltaFractionBlockSize) {
    EXPECT_EQ((DeltaFraction{1, 4}).block_size(4), 3u);
    EXPECT_EQ((DeltaFraction{1, 4}).block_size(5), 4u);
    EXPECT_EQ((DeltaFraction{0, 1}).block_size(7), 7u);
}

TEST(MaximumMatching, Capacities) {
    CapacitatedBipartiteGraph g;
    g.left_count = 4;
    g.capacity = {2, 1};
    g.adjacent = {{0}, {0, 1}, {0}, {1}};
    const CapacitatedMatching m = maximum_matching(g);
    EXPECT_EQ(m.size, 3u);
    EXPECT_TRUE(m.saturates_right(g));
    EXPECT_EQ(m.load, (std::vector<std::size_t>{2, 1}));
}
