#include "subspace_round/errors.hpp"
#include "subspace_round/rounding.hpp"
#include "subspace_round/verify/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace subspace_round;
namespace oracle = subspace_round::verify;

TEST(RoundVector, SingleSpike) {
    const std::vector<double> q{0, 1, 0, 0};
    EXPECT_EQ(round_vector(q), NodeSet{1});
}

TEST(RoundVector, NegativeBranch) {
    const double s = 1.0 / std::sqrt(2.0);
    const std::vector<double> q{-s, -s, 0};
    const RoundResult r = round_vector_detailed(q);
    EXPECT_EQ(r.set, (NodeSet{0, 1}));
    EXPECT_EQ(r.sign, -1);
}

TEST(RoundVector, EnumeratedThresholds) {
    const std::vector<double> q{3, 2, 1};
    const RoundResult r = round_vector_detailed(q);
    EXPECT_EQ(r.set, (NodeSet{0, 1}));
    EXPECT_NEAR(oracle::threshold_score(q, NodeSet{0}), 3.0, 1e-15);
    EXPECT_NEAR(oracle::threshold_score(q, NodeSet{0, 1}), 5.0 / std::sqrt(2.0), 1e-15);
    EXPECT_NEAR(oracle::threshold_score(q, NodeSet{0, 1, 2}), 6.0 / std::sqrt(3.0), 1e-15);
    EXPECT_NEAR(r.score, 5.0 / std::sqrt(2.0), 1e-12);
}

TEST(RoundVector, TiesGoToLexicographicallySmaller) {
    const std::vector<double> up{1, -1}, down{-1, 1};
    EXPECT_EQ(round_vector(up), NodeSet{0});
    EXPECT_EQ(round_vector(down), NodeSet{0});
    EXPECT_EQ(round_vector_detailed(down).sign, -1);
}

TEST(RoundVector, TiesPreferSmallerSet) {
    // {0,1} and {0,1,2,3} both score 2 here.
    const std::vector<double> q{std::sqrt(2.0), std::sqrt(2.0), 2.0 - std::sqrt(2.0), 2.0 - std::sqrt(2.0)};
    const RoundResult r = round_vector_detailed(q);
    EXPECT_LE(r.set.size(), 2u);
}

TEST(RoundVector, ZeroVectorThrows) {
    const std::vector<double> q{0, 0};
    EXPECT_THROW(round_vector(q), ZeroVector);
}

TEST(RoundVector, GuaranteeAgainstEveryTarget) {
    oracle::Rng rng(5);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 1 + oracle::uniform_index(8, rng);
        std::vector<double> q(n);
        for (double& x : q) x = normal(rng);
        const NodeSet r = round_vector(q);
        for (unsigned mask = 1; mask < (1U << n); ++mask) {
            std::vector<Node> m;
            std::vector<double> ind(n, 0.0);
            for (unsigned u = 0; u < n; ++u)
                if (mask >> u & 1U) {
                    m.push_back(u);
                    ind[u] = 1.0;
                }
            EXPECT_LE(oracle::set_delta(r, NodeSet(m)), 4.0 * oracle::vector_delta(q, ind) + 1e-12);
        }
    }
}
