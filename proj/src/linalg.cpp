#include "subspace_round/linalg.hpp"

#include "counter_rng.hpp"
#include "subspace_round/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace subspace_round {

namespace {

constexpr std::uint64_t kFallbackSeed = 0x5eed'0f'5eed'0fULL;
// Rayleigh-quotient changes this small are rounding noise.
constexpr double kNoiseFloor = 1e-14;
// Largest short side for which σ₁ comes from the small Gram matrix.
constexpr std::size_t kGramLimit = 64;

void require_same_shape(const DenseMatrix& a, const DenseMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatch(std::string(what) + ": shapes " + std::to_string(a.rows()) + "x" +
                                std::to_string(a.cols()) + " and " + std::to_string(b.rows()) + "x" +
                                std::to_string(b.cols()) + " differ");
    }
}

Vector random_unit(std::size_t n, std::uint64_t seed) {
    detail::CounterRng rng(seed);
    Vector v(n);
    for (auto& x : v) x = rng.normal();
    return unit(v);
}

// Cyclic Jacobi for the small projected problems. Returns eigenvalues in
// descending order; column j of `vectors` pairs with values[j].
void small_symmetric_eigen(DenseMatrix a, std::vector<double>& values, DenseMatrix& vectors) {
    const std::size_t n = a.rows();
    vectors = DenseMatrix::identity(n);
    const double scale = std::max(a.frobenius_norm(), std::numeric_limits<double>::min());
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
        if (std::sqrt(off) <= 1e-15 * scale) break;
        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t r = 0; r < n; ++r) {
                    const double arp = a(r, p);
                    const double arq = a(r, q);
                    a(r, p) = c * arp - s * arq;
                    a(r, q) = s * arp + c * arq;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const double apr = a(p, r);
                    const double aqr = a(q, r);
                    a(p, r) = c * apr - s * aqr;
                    a(q, r) = s * apr + c * aqr;
                }
                for (std::size_t r = 0; r < n; ++r) {
                    const double vrp = vectors(r, p);
                    const double vrq = vectors(r, q);
                    vectors(r, p) = c * vrp - s * vrq;
                    vectors(r, q) = s * vrp + c * vrq;
                }
            }
        }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
    values.resize(n);
    DenseMatrix sorted(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        values[j] = a(order[j], order[j]);
        for (std::size_t r = 0; r < n; ++r) sorted(r, j) = vectors(r, order[j]);
    }
    vectors = std::move(sorted);
}

// Orthonormalizes the rows of `q` in place (two Gram-Schmidt passes per row).
// Rows that collapse numerically are replaced by fresh random directions.
void orthonormalize_rows(DenseMatrix& q, std::uint64_t& seed) {
    const std::size_t b = q.rows();
    const std::size_t n = q.cols();
    for (std::size_t i = 0; i < b; ++i) {
        auto ri = q.row(i);
        const double before = norm2(ri);
        for (int pass = 0; pass < 2; ++pass) {
            for (std::size_t j = 0; j < i; ++j) {
                auto rj = q.row(j);
                const double c = dot(ri, rj);
                for (std::size_t l = 0; l < n; ++l) ri[l] -= c * rj[l];
            }
        }
        double after = norm2(ri);
        int attempts = 0;
        while (!(after > 1e-10 * std::max(before, 1e-300)) || after == 0.0) {
            if (++attempts > 8) throw ConvergenceFailure("block iteration: cannot complete an orthonormal basis");
            const Vector fresh = random_unit(n, seed++);
            std::copy(fresh.begin(), fresh.end(), ri.begin());
            for (int pass = 0; pass < 2; ++pass) {
                for (std::size_t j = 0; j < i; ++j) {
                    auto rj = q.row(j);
                    const double c = dot(ri, rj);
                    for (std::size_t l = 0; l < n; ++l) ri[l] -= c * rj[l];
                }
            }
            after = norm2(ri);
        }
        for (auto& x : ri) x /= after;
    }
}

double gershgorin_bound(const DenseMatrix& m) {
    double g = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double s = 0.0;
        for (double x : m.row(i)) s += std::abs(x);
        g = std::max(g, s);
    }
    return g;
}

} // namespace

DenseMatrix::DenseMatrix(std::size_t rows, std::size_t cols, double fill)
    : rows_(rows), cols_(cols), data_(rows * cols, fill) {
    if (rows == 0 || cols == 0) throw DimensionMismatch("matrix dimensions must be at least 1x1");
}

DenseMatrix DenseMatrix::identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

DenseMatrix DenseMatrix::from_rows(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows.front().empty()) throw DimensionMismatch("matrix must have at least one row and column");
    DenseMatrix m(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != m.cols_)
            throw DimensionMismatch("row " + std::to_string(i) + " has " + std::to_string(rows[i].size()) +
                                    " entries, expected " + std::to_string(m.cols_));
        for (std::size_t j = 0; j < m.cols_; ++j) {
            if (!std::isfinite(rows[i][j]))
                throw NonFinite("entry (" + std::to_string(i) + ", " + std::to_string(j) + ") is not finite");
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

DenseMatrix DenseMatrix::column(std::span<const double> values) {
    DenseMatrix m(values.size(), 1);
    std::copy(values.begin(), values.end(), m.data_.begin());
    return m;
}

DenseMatrix DenseMatrix::diagonal(std::span<const double> values) {
    DenseMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

Vector DenseMatrix::column_vector(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

DenseMatrix DenseMatrix::transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
}

DenseMatrix DenseMatrix::select_columns(std::span<const std::size_t> cols) const {
    DenseMatrix out(rows_, cols.size());
    for (std::size_t c = 0; c < cols.size(); ++c) {
        if (cols[c] >= cols_) throw DimensionMismatch("column index " + std::to_string(cols[c]) + " out of range");
        for (std::size_t i = 0; i < rows_; ++i) out(i, c) = (*this)(i, cols[c]);
    }
    return out;
}

std::vector<std::vector<double>> DenseMatrix::to_rows() const {
    std::vector<std::vector<double>> out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i].assign(row(i).begin(), row(i).end());
    return out;
}

double DenseMatrix::frobenius_norm() const { return norm2(data_); }

double DenseMatrix::max_abs() const {
    double m = 0.0;
    for (double x : data_) m = std::max(m, std::abs(x));
    return m;
}

bool DenseMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
    require_same_shape(*this, other, "matrix addition");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

DenseMatrix& DenseMatrix::operator-=(const DenseMatrix& other) {
    require_same_shape(*this, other, "matrix subtraction");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

DenseMatrix& DenseMatrix::operator*=(double scale) {
    for (double& x : data_) x *= scale;
    return *this;
}

DenseMatrix operator+(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs += rhs; }
DenseMatrix operator-(DenseMatrix lhs, const DenseMatrix& rhs) { return lhs -= rhs; }
DenseMatrix operator*(double scale, DenseMatrix m) { return m *= scale; }

DenseMatrix operator*(const DenseMatrix& lhs, const DenseMatrix& rhs) {
    if (lhs.cols() != rhs.rows())
        throw DimensionMismatch("matrix product: inner dimensions " + std::to_string(lhs.cols()) + " and " +
                                std::to_string(rhs.rows()) + " differ");
    DenseMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i) {
        auto o = out.row(i);
        for (std::size_t l = 0; l < lhs.cols(); ++l) {
            const double a = lhs(i, l);
            if (a == 0.0) continue;
            auto r = rhs.row(l);
            for (std::size_t j = 0; j < rhs.cols(); ++j) o[j] += a * r[j];
        }
    }
    return out;
}

Vector multiply(const DenseMatrix& m, std::span<const double> x) {
    if (x.size() != m.cols()) throw DimensionMismatch("matrix-vector product: vector length mismatch");
    Vector y(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) y[i] = dot(m.row(i), x);
    return y;
}

Vector multiply_transpose(const DenseMatrix& m, std::span<const double> x) {
    if (x.size() != m.rows()) throw DimensionMismatch("transposed matrix-vector product: vector length mismatch");
    Vector y(m.cols(), 0.0);
    for (std::size_t i = 0; i < m.rows(); ++i) {
        const double xi = x[i];
        if (xi == 0.0) continue;
        auto r = m.row(i);
        for (std::size_t j = 0; j < m.cols(); ++j) y[j] += xi * r[j];
    }
    return y;
}

DenseMatrix multiply_by_transpose(const DenseMatrix& lhs, const DenseMatrix& rhs) {
    if (lhs.cols() != rhs.cols()) throw DimensionMismatch("lhs * rhsᵀ: column counts differ");
    DenseMatrix out(lhs.rows(), rhs.rows());
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t j = 0; j < rhs.rows(); ++j) out(i, j) = dot(lhs.row(i), rhs.row(j));
    return out;
}

double dot(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) throw DimensionMismatch("dot: lengths differ");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

double norm2(std::span<const double> a) {
    double scale = 0.0;
    for (double x : a) scale = std::max(scale, std::abs(x));
    if (scale == 0.0 || !std::isfinite(scale)) return scale;
    double s = 0.0;
    for (double x : a) {
        const double y = x / scale;
        s += y * y;
    }
    return scale * std::sqrt(s);
}

Vector unit(std::span<const double> a) {
    const double nrm = norm2(a);
    if (nrm == 0.0) throw ZeroVector("cannot normalize a zero vector");
    Vector v(a.begin(), a.end());
    for (double& x : v) x /= nrm;
    return v;
}

void canonicalize_sign(std::span<double> v) {
    double scale = 0.0;
    for (double x : v) scale = std::max(scale, std::abs(x));
    if (scale == 0.0) return;
    for (double x : v) {
        if (std::abs(x) > 1e-9 * scale) {
            if (x < 0.0)
                for (double& y : v) y = -y;
            return;
        }
    }
}

bool is_symmetric(const DenseMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    const double bound = tol * std::max(1.0, m.max_abs());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = i + 1; j < m.cols(); ++j)
            if (std::abs(m(i, j) - m(j, i)) > bound) return false;
    return true;
}

namespace {

struct PowerOutcome {
    Vector right;
    double rho = 0.0; // ‖M r‖²
    bool converged = false;
};

// Power iteration on MᵀM from a unit start vector.
PowerOutcome power_iterate(const DenseMatrix& m, Vector r, double tol) {
    PowerOutcome out;
    double rho_prev = 0.0;
    double diff_prev = std::numeric_limits<double>::infinity();
    for (std::size_t it = 0; it < kMaxPowerIterations; ++it) {
        const Vector u = multiply(m, r);
        out.rho = dot(u, u);
        if (it > 0) {
            const double diff = std::abs(out.rho - rho_prev);
            // Small changes only count while they are shrinking; a growing
            // change means the iterate is still leaving a plateau.
            if (diff <= kNoiseFloor * out.rho || (diff <= tol * out.rho && diff < diff_prev)) {
                out.converged = true;
                break;
            }
            diff_prev = diff;
        }
        rho_prev = out.rho;
        Vector w = multiply_transpose(m, u);
        const double wn = norm2(w);
        if (wn == 0.0) throw ZeroMatrix("power iteration reached the kernel");
        for (double& x : w) x /= wn;
        r = std::move(w);
    }
    out.right = std::move(r);
    return out;
}

// The smaller of MᵀM and MMᵀ, and whether it is MᵀM.
std::pair<DenseMatrix, bool> small_gram(const DenseMatrix& m) {
    if (m.cols() <= m.rows()) {
        const DenseMatrix t = m.transpose();
        return {multiply_by_transpose(t, t), true};
    }
    return {multiply_by_transpose(m, m), false};
}

Vector gram_top_right(const DenseMatrix& m) {
    const auto [g, is_right] = small_gram(m);
    Vector v = top_k_eigenpairs(g, 1).vectors[0];
    return is_right ? v : unit(multiply_transpose(m, v));
}

} // namespace

SingularTriple top_singular_triple(const DenseMatrix& m, const std::optional<Vector>& init, double tol) {
    if (!(tol > 0.0)) throw DimensionMismatch("tolerance must be positive");
    const double fro = m.frobenius_norm();
    if (fro == 0.0) throw ZeroMatrix("top singular triple of a zero matrix");

    Vector r;
    if (init) {
        if (init->size() != m.cols()) throw DimensionMismatch("initial vector length differs from column count");
        r = *init;
    } else {
        r.assign(m.cols(), 1.0);
    }
    const double rn = norm2(r);
    if (rn == 0.0 || norm2(multiply(m, r)) <= 1e-12 * fro * rn) r = random_unit(m.cols(), kFallbackSeed);

    PowerOutcome p = power_iterate(m, unit(r), tol);
    if (!p.converged) {
        // Nearly tied leading singular values stall the single-vector method.
        if (std::min(m.rows(), m.cols()) > kGramLimit)
            throw ConvergenceFailure("power iteration did not converge within the iteration cap");
        p.right = gram_top_right(m);
    }
    r = std::move(p.right);
    canonicalize_sign(r);
    Vector left = multiply(m, r);
    const double sigma = norm2(left);
    if (sigma == 0.0) throw ZeroMatrix("power iteration reached the kernel");
    for (double& x : left) x /= sigma;
    return {sigma, std::move(left), std::move(r)};
}

SpectralDecomposition top_k_eigenpairs(const DenseMatrix& m, std::size_t k, double tol) {
    if (m.rows() != m.cols()) throw NotSymmetric("eigenpairs of a non-square matrix");
    if (!is_symmetric(m)) throw NotSymmetric("eigenpairs of a non-symmetric matrix");
    const std::size_t n = m.rows();
    if (k < 1 || k > n)
        throw DimensionMismatch("k = " + std::to_string(k) + " outside [1, " + std::to_string(n) + "]");

    const double g = gershgorin_bound(m);
    SpectralDecomposition out;
    if (g == 0.0) {
        for (std::size_t i = 0; i < k; ++i) {
            Vector e(n, 0.0);
            e[i] = 1.0;
            out.values.push_back(0.0);
            out.vectors.push_back(std::move(e));
        }
        return out;
    }

    // Shift to a positive semidefinite operator so that "largest" means
    // "largest in magnitude" for the power iteration.
    DenseMatrix a = m;
    for (std::size_t i = 0; i < n; ++i) a(i, i) += g;
    const double scale = std::sqrt(power_iterate(m, random_unit(n, kFallbackSeed + 3), 1e-6).rho);
    const double residual_bound = 1e-9 * std::max(scale, std::numeric_limits<double>::min());

    std::size_t b = std::min(n, std::max(2 * k + 2, k + 8));
    std::uint64_t seed = kFallbackSeed + 1;
    DenseMatrix q(b, n);
    {
        detail::CounterRng rng(seed++);
        for (std::size_t i = 0; i < b; ++i)
            for (std::size_t j = 0; j < n; ++j) q(i, j) = rng.normal();
    }
    orthonormalize_rows(q, seed);

    std::vector<double> prev(k, std::numeric_limits<double>::infinity());
    constexpr std::size_t kEdgeStreak = 20;
    constexpr double kIterationBudget = 2000.0;
    std::size_t edge_streak = 0;
    for (std::size_t it = 0; it < kMaxPowerIterations; ++it) {
        const DenseMatrix w = q * a; // rows are A q_i since A is symmetric
        DenseMatrix h = multiply_by_transpose(q, w);
        for (std::size_t i = 0; i < b; ++i)
            for (std::size_t j = i + 1; j < b; ++j) h(i, j) = h(j, i) = 0.5 * (h(i, j) + h(j, i));
        std::vector<double> theta;
        DenseMatrix u(1, 1);
        small_symmetric_eigen(h, theta, u);

        const DenseMatrix ut = u.transpose();
        DenseMatrix x = ut * q;
        DenseMatrix ax = ut * w;

        bool values_stable = true;
        for (std::size_t i = 0; i < k; ++i)
            if (std::abs(theta[i] - prev[i]) > tol * g) values_stable = false;
        bool residuals_small = values_stable;
        double needed = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            double s = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                const double d = ax(i, j) - theta[i] * x(i, j);
                s += d * d;
            }
            const double r = std::sqrt(s);
            if (r <= residual_bound) continue;
            residuals_small = false;
            // Iterations still needed at the rate theta_i / theta_{b-1}.
            const double edge = std::max(theta[b - 1], 0.0);
            needed = std::max(needed, theta[i] > edge ? std::log(r / residual_bound) / std::log(theta[i] / edge)
                                                      : std::numeric_limits<double>::infinity());
        }
        if (residuals_small) {
            for (std::size_t i = 0; i < k; ++i) {
                Vector v(x.row(i).begin(), x.row(i).end());
                v = unit(v);
                canonicalize_sign(v);
                out.values.push_back(theta[i] - g);
                out.vectors.push_back(std::move(v));
            }
            return out;
        }
        std::copy(theta.begin(), theta.begin() + static_cast<std::ptrdiff_t>(k), prev.begin());
        edge_streak = needed > kIterationBudget ? edge_streak + 1 : 0;
        if (edge_streak >= kEdgeStreak && b < n) {
            edge_streak = 0;
            // Grow the block: keep the Ritz vectors, append fresh random rows.
            const std::size_t grown = std::min(n, 2 * b);
            DenseMatrix next(grown, n);
            for (std::size_t i = 0; i < b; ++i) std::copy(ax.row(i).begin(), ax.row(i).end(), next.row(i).begin());
            detail::CounterRng rng(seed++);
            for (std::size_t i = b; i < grown; ++i)
                for (std::size_t j = 0; j < n; ++j) next(i, j) = rng.normal();
            b = grown;
            q = std::move(next);
            std::fill(prev.begin(), prev.end(), std::numeric_limits<double>::infinity());
        } else {
            q = std::move(ax);
        }
        orthonormalize_rows(q, seed);
    }
    throw ConvergenceFailure("block power iteration did not converge within the iteration cap");
}

SpectralDecomposition bottom_k_eigenpairs(const DenseMatrix& m, std::size_t k, double tol) {
    SpectralDecomposition d = top_k_eigenpairs(-1.0 * m, k, tol);
    for (double& v : d.values) v = -v;
    return d;
}

double largest_eigenvalue(const DenseMatrix& m, double tol) {
    if (!is_symmetric(m)) throw NotSymmetric("eigenvalue of a non-symmetric matrix");
    const double g = gershgorin_bound(m);
    if (g == 0.0) return 0.0;
    DenseMatrix shifted = m;
    for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) += g;
    return spectral_norm(shifted, tol) - g;
}

double smallest_eigenvalue(const DenseMatrix& m, double tol) { return -largest_eigenvalue(-1.0 * m, tol); }

double spectral_norm(const DenseMatrix& m, double tol) {
    if (m.frobenius_norm() == 0.0) return 0.0;
    if (std::min(m.rows(), m.cols()) <= kGramLimit) {
        const auto [g, is_right] = small_gram(m);
        return std::sqrt(std::max(0.0, top_k_eigenpairs(g, 1, tol).values[0]));
    }
    return top_singular_triple(m, random_unit(m.cols(), kFallbackSeed + 7), tol).value;
}

DenseMatrix orthonormal_row_basis(const DenseMatrix& m, double rank_tol) {
    const double sigma1 = spectral_norm(m);
    if (sigma1 == 0.0) throw ZeroMatrix("row basis of a zero matrix");
    const double threshold = rank_tol * sigma1;
    const std::size_t n = m.cols();

    DenseMatrix work = m;
    std::vector<bool> used(m.rows(), false);
    std::vector<Vector> basis;
    while (basis.size() < std::min(m.rows(), n)) {
        std::size_t pivot = m.rows();
        double best = threshold;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (used[i]) continue;
            const double nrm = norm2(work.row(i));
            if (nrm > best) {
                best = nrm;
                pivot = i;
            }
        }
        if (pivot == m.rows()) break;
        used[pivot] = true;
        Vector v(work.row(pivot).begin(), work.row(pivot).end());
        for (const auto& b : basis) {
            const double c = dot(v, b);
            for (std::size_t l = 0; l < n; ++l) v[l] -= c * b[l];
        }
        const double vn = norm2(v);
        if (!(vn > threshold)) break;
        for (double& x : v) x /= vn;
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (used[i]) continue;
            auto r = work.row(i);
            const double c = dot(r, v);
            for (std::size_t l = 0; l < n; ++l) r[l] -= c * v[l];
        }
        basis.push_back(std::move(v));
    }
    if (basis.empty()) throw ZeroMatrix("numerical rank is zero");
    DenseMatrix out(basis.size(), n);
    for (std::size_t i = 0; i < basis.size(); ++i) std::copy(basis[i].begin(), basis[i].end(), out.row(i).begin());
    return out;
}

std::size_t numerical_rank(const DenseMatrix& m, double rank_tol) {
    if (m.frobenius_norm() == 0.0) return 0;
    return orthonormal_row_basis(m, rank_tol).rows();
}

DenseMatrix projector_onto(const DenseMatrix& m) {
    const DenseMatrix basis = orthonormal_row_basis(m.transpose());
    DenseMatrix p(m.rows(), m.rows());
    for (std::size_t r = 0; r < basis.rows(); ++r) {
        auto b = basis.row(r);
        for (std::size_t i = 0; i < m.rows(); ++i) {
            if (b[i] == 0.0) continue;
            for (std::size_t j = 0; j < m.rows(); ++j) p(i, j) += b[i] * b[j];
        }
    }
    return p;
}

DenseMatrix projector_complement(const DenseMatrix& m) {
    DenseMatrix p = DenseMatrix::identity(m.rows());
    if (m.frobenius_norm() == 0.0) return p;
    return p - projector_onto(m);
}

} // namespace subspace_round
