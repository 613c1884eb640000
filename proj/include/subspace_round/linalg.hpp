#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace subspace_round {

using Vector = std::vector<double>;

inline constexpr double kDefaultTolerance = 1e-10;
inline constexpr double kDefaultRankTolerance = 1e-9;
inline constexpr std::size_t kMaxPowerIterations = 100000;

/// Row-major dense real matrix. Always at least 1x1.
class DenseMatrix {
public:
    DenseMatrix(std::size_t rows, std::size_t cols, double fill = 0.0);

    static DenseMatrix identity(std::size_t n);
    /// Throws DimensionMismatch on ragged input and NonFinite on NaN/Inf.
    static DenseMatrix from_rows(const std::vector<std::vector<double>>& rows);
    static DenseMatrix column(std::span<const double> values);
    static DenseMatrix diagonal(std::span<const double> values);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    double& operator()(std::size_t i, std::size_t j) noexcept { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const noexcept { return data_[i * cols_ + j]; }

    std::span<double> row(std::size_t i) noexcept { return {data_.data() + i * cols_, cols_}; }
    std::span<const double> row(std::size_t i) const noexcept { return {data_.data() + i * cols_, cols_}; }
    Vector column_vector(std::size_t j) const;
    std::span<const double> data() const noexcept { return data_; }

    DenseMatrix transpose() const;
    /// Columns listed in `cols`, in that order.
    DenseMatrix select_columns(std::span<const std::size_t> cols) const;
    std::vector<std::vector<double>> to_rows() const;

    double frobenius_norm() const;
    double max_abs() const;
    bool all_finite() const;

    DenseMatrix& operator+=(const DenseMatrix& other);
    DenseMatrix& operator-=(const DenseMatrix& other);
    DenseMatrix& operator*=(double scale);

private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<double> data_;
};

DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs);
DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs);
DenseMatrix operator*(double scale, DenseMatrix m);
DenseMatrix operator*(const DenseMatrix& lhs, const DenseMatrix& rhs);

/// m * x
Vector multiply(const DenseMatrix& m, std::span<const double> x);
/// mᵀ * x
Vector multiply_transpose(const DenseMatrix& m, std::span<const double> x);
/// lhs * rhsᵀ without materializing the transpose.
DenseMatrix multiply_by_transpose(const DenseMatrix& lhs, const DenseMatrix& rhs);

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
/// Throws ZeroVector for a zero input.
Vector unit(std::span<const double> a);

/// Flip the sign of `v` so its first non-negligible coordinate is positive.
void canonicalize_sign(std::span<double> v);

bool is_symmetric(const DenseMatrix& m, double tol = 1e-9);

struct SingularTriple {
    double value = 0.0;
    Vector left;
    Vector right;
};

/// Eigenpairs sorted by descending eigenvalue; vectors orthonormal.
struct SpectralDecomposition {
    std::vector<double> values;
    std::vector<Vector> vectors;
};

/// Largest singular value of `m` with unit singular vectors, by power
/// iteration on mᵀm. `init` seeds the right vector; by default the all-ones
/// direction, or a fixed-seed random vector when all-ones lies in the kernel.
/// Throws ZeroMatrix when ‖m‖_F = 0.
SingularTriple top_singular_triple(const DenseMatrix& m,
                                   const std::optional<Vector>& init = std::nullopt,
                                   double tol = kDefaultTolerance);

/// The k algebraically largest eigenpairs of a symmetric matrix, computed by
/// shifted block power iteration with Rayleigh-Ritz extraction.
/// Throws NotSymmetric, DimensionMismatch (k out of range), ConvergenceFailure.
SpectralDecomposition top_k_eigenpairs(const DenseMatrix& m, std::size_t k,
                                       double tol = kDefaultTolerance);

/// The k algebraically smallest eigenpairs, ascending.
SpectralDecomposition bottom_k_eigenpairs(const DenseMatrix& m, std::size_t k,
                                          double tol = kDefaultTolerance);

/// Extreme eigenvalues of a symmetric matrix from the spectral norm of a
/// Gershgorin-shifted copy. Values only; no eigenvector residual check.
double largest_eigenvalue(const DenseMatrix& m, double tol = kDefaultTolerance);
double smallest_eigenvalue(const DenseMatrix& m, double tol = kDefaultTolerance);

/// σ₁(m); zero for the zero matrix.
double spectral_norm(const DenseMatrix& m, double tol = kDefaultTolerance);

/// Orthonormal rows spanning the row space of `m`. Rows whose residual falls
/// below rank_tol·σ₁(m) during pivoted Gram-Schmidt count as rank deficiency.
/// Throws ZeroMatrix when the numerical rank is 0.
DenseMatrix orthonormal_row_basis(const DenseMatrix& m, double rank_tol = kDefaultRankTolerance);

/// Numerical row rank under the same threshold as orthonormal_row_basis.
std::size_t numerical_rank(const DenseMatrix& m, double rank_tol = kDefaultRankTolerance);

/// Projector onto the column space of `m` (rows x rows). Throws ZeroMatrix.
DenseMatrix projector_onto(const DenseMatrix& m);
/// I − projector_onto(m); the identity for a zero matrix.
DenseMatrix projector_complement(const DenseMatrix& m);

} // namespace subspace_round
