#include "subspace_round/errors.hpp"
#include "subspace_round/linalg.hpp"
#include "subspace_round/verify/oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace subspace_round;
namespace oracle = subspace_round::verify;

namespace {

DenseMatrix rows(std::vector<std::vector<double>> r) { return DenseMatrix::from_rows(r); }

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) { return (a - b).max_abs(); }

} // namespace

TEST(DenseMatrix, FromRowsRejectsRaggedAndNonFinite) {
    EXPECT_THROW(rows({{1, 2}, {3}}), DimensionMismatch);
    EXPECT_THROW(rows({{1, NAN}}), NonFinite);
    EXPECT_THROW(rows({{INFINITY}}), NonFinite);
}

TEST(DenseMatrix, ProductMatchesNaive) {
    oracle::Rng rng(3);
    const DenseMatrix a = oracle::random_gaussian(4, 7, rng);
    const DenseMatrix b = oracle::random_gaussian(7, 3, rng);
    EXPECT_LE(max_abs_diff(a * b, oracle::naive_multiply(a, b)), 1e-12);
    EXPECT_LE(max_abs_diff(multiply_by_transpose(a, a), oracle::naive_multiply(a, oracle::naive_transpose(a))), 1e-12);
}

TEST(TopSingularTriple, DiagonalMatrix) {
    const SingularTriple t = top_singular_triple(rows({{2, 0}, {0, 1}}));
    EXPECT_NEAR(t.value, 2.0, 1e-10);
    EXPECT_NEAR(std::abs(t.right[0]), 1.0, 1e-8);
    EXPECT_NEAR(t.right[1], 0.0, 1e-4);
}

TEST(TopSingularTriple, IdentityAcceptsAnyUnitVector) {
    const DenseMatrix m = DenseMatrix::identity(3);
    const SingularTriple t = top_singular_triple(m);
    EXPECT_NEAR(t.value, 1.0, 1e-12);
    EXPECT_NEAR(norm2(multiply(m, t.right)), 1.0, 1e-12);
}

TEST(TopSingularTriple, AllOnesMatchesClosedForm) {
    const DenseMatrix m = rows({{1, 1}, {1, 1}});
    const DenseMatrix gram = oracle::naive_multiply(oracle::naive_transpose(m), m);
    const auto [top, bottom] = oracle::eigen_2x2(gram(0, 0), gram(0, 1), gram(1, 1));
    (void)bottom;
    const SingularTriple t = top_singular_triple(m);
    EXPECT_NEAR(t.value, std::sqrt(top), 1e-10);
    EXPECT_NEAR(std::abs(t.right[0]), 1.0 / std::sqrt(2.0), 1e-10);
    EXPECT_NEAR(std::abs(t.right[1]), 1.0 / std::sqrt(2.0), 1e-10);
    EXPECT_NEAR(t.right[0] * t.right[1], 0.5, 1e-10);
}

TEST(TopSingularTriple, ZeroMatrixThrows) {
    EXPECT_THROW(top_singular_triple(DenseMatrix(3, 2)), ZeroMatrix);
}

TEST(TopKEigenpairs, Diagonal) {
    const std::vector<double> d{3, 2, 1};
    const SpectralDecomposition s = top_k_eigenpairs(DenseMatrix::diagonal(d), 2);
    ASSERT_EQ(s.values.size(), 2u);
    EXPECT_NEAR(s.values[0], 3.0, 1e-9);
    EXPECT_NEAR(s.values[1], 2.0, 1e-9);
    EXPECT_NEAR(std::abs(s.vectors[0][0]), 1.0, 1e-8);
    EXPECT_NEAR(std::abs(s.vectors[1][1]), 1.0, 1e-8);
}

TEST(TopKEigenpairs, ZeroMatrix) {
    const SpectralDecomposition s = top_k_eigenpairs(DenseMatrix(4, 4), 1);
    EXPECT_NEAR(s.values[0], 0.0, 1e-12);
    EXPECT_NEAR(norm2(s.vectors[0]), 1.0, 1e-12);
}

TEST(TopKEigenpairs, MatchesJacobiOracle) {
    oracle::Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const DenseMatrix m = oracle::random_symmetric(8, rng);
        const oracle::EigenSystem want = oracle::jacobi_eigen(m);
        const SpectralDecomposition got = top_k_eigenpairs(m, 3);
        for (std::size_t i = 0; i < 3; ++i) {
            EXPECT_NEAR(got.values[i], want.values[i], 1e-6);
            const Vector mv = multiply(m, got.vectors[i]);
            double r = 0.0;
            for (std::size_t j = 0; j < 8; ++j) r += std::pow(mv[j] - got.values[i] * got.vectors[i][j], 2);
            EXPECT_LE(std::sqrt(r), 1e-6);
        }
    }
}

TEST(TopKEigenpairs, ClusterWiderThanBlock) {
    // One isolated value above a tight cluster of 40.
    std::vector<double> spectrum{2.0};
    for (int i = 0; i < 40; ++i) spectrum.push_back(1.0 + 1e-7 * i);
    for (int i = 0; i < 9; ++i) spectrum.push_back(-0.5);
    oracle::Rng rng(5);
    const DenseMatrix m = oracle::with_spectrum(spectrum, rng);
    const SpectralDecomposition got = top_k_eigenpairs(m, 3);
    const oracle::EigenSystem want = oracle::jacobi_eigen(m);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_NEAR(got.values[i], want.values[i], 1e-8);
}

TEST(TopKEigenpairs, Errors) {
    EXPECT_THROW(top_k_eigenpairs(rows({{1, 2}, {0, 1}}), 1), NotSymmetric);
    EXPECT_THROW(top_k_eigenpairs(DenseMatrix::identity(3), 4), DimensionMismatch);
    EXPECT_THROW(top_k_eigenpairs(DenseMatrix::identity(3), 0), DimensionMismatch);
}

TEST(BottomKEigenpairs, AscendingOrder) {
    const std::vector<double> d{5, -1, 2, 0.5};
    const SpectralDecomposition s = bottom_k_eigenpairs(DenseMatrix::diagonal(d), 2);
    EXPECT_NEAR(s.values[0], -1.0, 1e-9);
    EXPECT_NEAR(s.values[1], 0.5, 1e-9);
}

TEST(SpectralNorm, Examples) {
    EXPECT_NEAR(spectral_norm(DenseMatrix::identity(4)), 1.0, 1e-12);
    EXPECT_EQ(spectral_norm(DenseMatrix(2, 2)), 0.0);
    const DenseMatrix m = rows({{1, 2}, {3, 4}});
    const DenseMatrix gram = oracle::naive_multiply(oracle::naive_transpose(m), m);
    const double want = std::sqrt(oracle::eigen_2x2(gram(0, 0), gram(0, 1), gram(1, 1)).first);
    EXPECT_NEAR(want, 5.4649857, 1e-7);
    EXPECT_NEAR(spectral_norm(m), want, 1e-10);
}

TEST(SpectralNorm, MatchesSingularValueOracle) {
    oracle::Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const DenseMatrix m = oracle::random_gaussian(3 + trial % 5, 2 + trial % 7, rng);
        EXPECT_NEAR(spectral_norm(m), oracle::oracle_spectral_norm(m), 1e-8 * oracle::oracle_spectral_norm(m));
    }
}

TEST(OrthonormalRowBasis, AxisRows) {
    const DenseMatrix b = orthonormal_row_basis(rows({{2, 0, 0}, {0, 0, 3}}));
    ASSERT_EQ(b.rows(), 2u);
    const DenseMatrix proj = oracle::naive_multiply(oracle::naive_transpose(b), b);
    EXPECT_NEAR(proj(0, 0), 1.0, 1e-12);
    EXPECT_NEAR(proj(1, 1), 0.0, 1e-12);
    EXPECT_NEAR(proj(2, 2), 1.0, 1e-12);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_NEAR(std::abs(b(i, 0)) + std::abs(b(i, 2)), 1.0, 1e-12);
}

TEST(OrthonormalRowBasis, RankDeficient) {
    const DenseMatrix b = orthonormal_row_basis(rows({{1, 0}, {2, 0}}));
    ASSERT_EQ(b.rows(), 1u);
    EXPECT_NEAR(std::abs(b(0, 0)), 1.0, 1e-12);
    EXPECT_NEAR(b(0, 1), 0.0, 1e-12);
    EXPECT_EQ(numerical_rank(rows({{1, 0}, {2, 0}})), 1u);
}

TEST(OrthonormalRowBasis, RandomRowSpaceMatchesProjectorOracle) {
    oracle::Rng rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        const DenseMatrix m = oracle::random_gaussian(3, 6, rng);
        const DenseMatrix b = orthonormal_row_basis(m);
        ASSERT_EQ(b.rows(), 3u);
        EXPECT_LE(max_abs_diff(oracle::naive_multiply(b, oracle::naive_transpose(b)), DenseMatrix::identity(3)), 1e-9);
        const DenseMatrix want = oracle::column_projector(oracle::naive_transpose(m));
        EXPECT_LE(oracle::oracle_spectral_norm(oracle::naive_multiply(oracle::naive_transpose(b), b) - want), 1e-8);
    }
}

TEST(OrthonormalRowBasis, ZeroMatrixThrows) {
    EXPECT_THROW(orthonormal_row_basis(DenseMatrix(2, 3)), ZeroMatrix);
}

TEST(Projector, ColumnVector) {
    const std::vector<double> e1{1, 0, 0};
    const DenseMatrix m = DenseMatrix::column(e1);
    const std::vector<double> on{1, 0, 0}, off{0, 1, 1};
    EXPECT_LE(max_abs_diff(projector_onto(m), DenseMatrix::diagonal(on)), 1e-12);
    EXPECT_LE(max_abs_diff(projector_complement(m), DenseMatrix::diagonal(off)), 1e-12);
}

TEST(Projector, OrthonormalColumnsGiveAAt) {
    oracle::Rng rng(29);
    const DenseMatrix a = oracle::naive_transpose(oracle::random_orthonormal_rows(2, 5, rng));
    EXPECT_LE(max_abs_diff(projector_onto(a), oracle::naive_multiply(a, oracle::naive_transpose(a))), 1e-9);
}

TEST(Projector, RandomIsIdempotent) {
    oracle::Rng rng(31);
    const DenseMatrix m = oracle::random_gaussian(5, 2, rng);
    const DenseMatrix p = projector_onto(m);
    EXPECT_LE(max_abs_diff(oracle::naive_multiply(p, p), p), 1e-9);
    EXPECT_LE(max_abs_diff(p, oracle::column_projector(m)), 1e-8);
}

TEST(Projector, ZeroMatrix) {
    EXPECT_THROW(projector_onto(DenseMatrix(3, 1)), ZeroMatrix);
    EXPECT_LE(max_abs_diff(projector_complement(DenseMatrix(3, 1)), DenseMatrix::identity(3)), 0.0);
}

TEST(Unit, ZeroVectorThrows) {
    const std::vector<double> z{0, 0};
    EXPECT_THROW(unit(z), ZeroVector);
}
