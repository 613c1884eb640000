#include "properties.hpp"

#include "subspace_round/linalg.hpp"

#include <algorithm>
#include <numbers>

namespace subspace_round::verify {

using detail::cat;
using detail::Tracker;

namespace {

DenseMatrix projector_of_rows(const DenseMatrix& a) { return naive_multiply(naive_transpose(a), a); }

/// (I − AᵀA) Bᵀ for row bases A, B.
DenseMatrix complement_times(const DenseMatrix& a, const DenseMatrix& b) {
    DenseMatrix p = projector_of_rows(a);
    const std::size_t n = a.cols();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) p(i, j) = (i == j ? 1.0 : 0.0) - p(i, j);
    return naive_multiply(p, naive_transpose(b));
}

/// A random pair of k-dimensional row bases; half the time B is a small
/// rotation of A so that small principal angles are exercised.
std::pair<DenseMatrix, DenseMatrix> random_pair(std::size_t k, std::size_t n, Rng& rng) {
    DenseMatrix a = random_orthonormal_rows(k, n, rng);
    if (uniform_index(2, rng) == 0) return {a, random_orthonormal_rows(k, n, rng)};
    const double t = std::pow(10.0, uniform_real(-6.0, 0.0, rng));
    DenseMatrix b = random_gaussian(k, n, rng);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) b(i, j) = a(i, j) + t * b(i, j);
    return {a, detail::gram_schmidt_rows(b)};
}

double relative_gap(double got, double want, double scale) {
    return std::abs(got - want) / std::max(scale, std::numeric_limits<double>::min());
}

PropertyResult prop_singular_max_to_min(Rng& rng, std::size_t trials) {
    Tracker t("singular_max_to_min");
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t n = 2 + uniform_index(19, rng);
        const std::size_t k = 1 + uniform_index(std::min<std::size_t>(5, n - 1), rng);
        auto [a, b] = random_pair(k, n, rng);
        const double s = spectral_norm(complement_times(a, b));
        const double smin = singular_values(naive_multiply(a, naive_transpose(b))).back();
        const double gap = std::abs(smin - std::sqrt(std::max(0.0, 1.0 - s * s)));
        t.record(gap - 1e-7, [&] { return cat("n=", n, " k=", k, " sigma_min=", smin, " sin=", s); });
    }
    return t.finish();
}

PropertyResult prop_principal_angle_grid(Rng& rng, std::size_t trials) {
    Tracker t("principal_angle_grid");
    constexpr std::size_t kGrid = 20000;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t n = 3 + uniform_index(4, rng);
        const std::size_t k = 1 + uniform_index(2, rng);
        auto [a, b] = random_pair(k, n, rng);
        const double s = spectral_norm(complement_times(a, b));
        const DenseMatrix pa = projector_of_rows(a);
        // sin of the largest principal angle = max over unit x in span(B) of ‖(I − P_A)x‖.
        double best = 0.0;
        const std::size_t steps = k == 1 ? 1 : kGrid;
        for (std::size_t g = 0; g < steps; ++g) {
            const double theta = std::numbers::pi * static_cast<double>(g) / static_cast<double>(steps);
            std::vector<double> x(n);
            for (std::size_t j = 0; j < n; ++j)
                x[j] = k == 1 ? b(0, j) : std::cos(theta) * b(0, j) + std::sin(theta) * b(1, j);
            double r = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                double pi = 0.0;
                for (std::size_t j = 0; j < n; ++j) pi += pa(i, j) * x[j];
                r += (x[i] - pi) * (x[i] - pi);
            }
            best = std::max(best, std::sqrt(r));
        }
        t.record(std::abs(best - s) - 1e-3, [&] { return cat("n=", n, " k=", k, " grid=", best, " norm=", s); });
    }
    return t.finish();
}

PropertyResult prop_eigvec_distance(Rng& rng, std::size_t trials) {
    Tracker t("eigvec_distance");
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t n = 3 + uniform_index(10, rng);
        std::vector<double> values(n);
        const double gap = uniform_real(0.05, 1.0, rng);
        for (std::size_t i = 1; i < n; ++i) values[i] = uniform_real(0.0, 1.0, rng);
        values[0] = *std::max_element(values.begin() + 1, values.end()) + gap;
        const DenseMatrix a = with_spectrum(values, rng);
        DenseMatrix e = random_symmetric(n, rng);
        const double target = uniform_real(1e-4, gap / 2.5, rng);
        e *= target / oracle_spectral_norm(e);
        DenseMatrix b = a;
        b += e;
        const double en = oracle_spectral_norm(e);
        const std::vector<double> sa = singular_values(a);
        const double sep = sa[0] - sa[1];
        const Vector p = top_k_eigenpairs(a, 1).vectors[0];
        const Vector q = top_k_eigenpairs(b, 1).vectors[0];
        double pq = 0.0;
        for (std::size_t i = 0; i < n; ++i) pq += p[i] * q[i];
        const double bound = 1.0 - 2.0 * en / sep;
        t.record(bound - pq * pq - 1e-12, [&] { return cat("n=", n, " <p,q>^2=", pq * pq, " bound=", bound); });
    }
    return t.finish();
}

PropertyResult prop_known_spectrum(Rng& rng, std::size_t trials) {
    Tracker t("known_spectrum");
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t n = 1 + uniform_index(20, rng);
        const std::size_t k = 1 + uniform_index(n, rng);
        std::vector<double> values(n);
        for (double& v : values) v = (uniform_index(2, rng) ? 1.0 : -1.0) * std::pow(10.0, uniform_real(-1.0, 1.0, rng));
        const DenseMatrix m = with_spectrum(values, rng);
        std::vector<double> sorted = values;
        std::sort(sorted.begin(), sorted.end(), std::greater<>());
        const SpectralDecomposition top = top_k_eigenpairs(m, k);
        const SpectralDecomposition bottom = bottom_k_eigenpairs(m, k);
        double worst = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            worst = std::max(worst, relative_gap(top.values[i], sorted[i], std::abs(sorted[i])));
            worst = std::max(worst, relative_gap(bottom.values[i], sorted[n - 1 - i], std::abs(sorted[n - 1 - i])));
        }
        t.record(worst - 1e-6, [&] { return cat("n=", n, " k=", k, " relative error ", worst); });
    }
    return t.finish();
}

PropertyResult prop_eigen_residual(Rng& rng, std::size_t trials) {
    Tracker t("eigenvector_residual");
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t n = 1 + uniform_index(25, rng);
        const std::size_t k = 1 + uniform_index(std::min<std::size_t>(n, 6), rng);
        const DenseMatrix m = random_symmetric(n, rng);
        const double scale = oracle_spectral_norm(m);
        const SpectralDecomposition d = top_k_eigenpairs(m, k);
        double worst = 0.0;
        for (std::size_t i = 0; i < k; ++i) {
            const Vector mv = multiply(m, d.vectors[i]);
            double r = 0.0;
            for (std::size_t j = 0; j < n; ++j) r += std::pow(mv[j] - d.values[i] * d.vectors[i][j], 2);
            worst = std::max(worst, std::sqrt(r) / scale);
            for (std::size_t l = 0; l < i; ++l)
                worst = std::max(worst, std::abs(dot(d.vectors[i], d.vectors[l])));
        }
        t.record(worst - 1e-6, [&] { return cat("n=", n, " k=", k, " residual ", worst); });
    }
    return t.finish();
}

} // namespace

namespace detail {

PropertyResult prop_oracle_agreement(Rng& rng, std::size_t trials) {
    Tracker t("oracle_agreement");
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t kind = trial % 4;
        if (kind < 2) {
            // Rectangular: top singular value from the power method against one-sided Jacobi.
            const std::size_t rows = 1 + uniform_index(12, rng);
            const std::size_t cols = 1 + uniform_index(12, rng);
            const DenseMatrix m = random_gaussian(rows, cols, rng);
            const double want = singular_values(m).front();
            const double got_triple = top_singular_triple(m).value;
            const double got_norm = spectral_norm(m);
            const double err = std::max(relative_gap(got_triple, want, want), relative_gap(got_norm, want, want));
            t.record(err - 1e-6, [&] { return cat(rows, "x", cols, " sigma1 oracle=", want, " got=", got_triple); });
            continue;
        }
        // Symmetric: extreme eigenvalues and top-k against cyclic Jacobi;
        // 2 x 2 instances also against the closed form.
        const std::size_t n = kind == 2 ? 2 : 1 + uniform_index(12, rng);
        const DenseMatrix m = random_symmetric(n, rng);
        const EigenSystem e = jacobi_eigen(m);
        std::vector<double> want = e.values;
        if (n == 2) {
            const auto [hi, lo] = eigen_2x2(m(0, 0), m(0, 1), m(1, 1));
            want = {hi, lo};
        }
        // Eigenvalues are compared relative to the spectral radius, since
        // individual eigenvalues may sit arbitrarily close to zero.
        const double scale = std::max(std::abs(want.front()), std::abs(want.back()));
        double err = std::max(relative_gap(largest_eigenvalue(m), want.front(), scale),
                              relative_gap(smallest_eigenvalue(m), want.back(), scale));
        const std::size_t k = 1 + uniform_index(n, rng);
        const SpectralDecomposition d = top_k_eigenpairs(m, k);
        for (std::size_t i = 0; i < k; ++i) err = std::max(err, relative_gap(d.values[i], want[i], scale));
        t.record(err - 1e-6, [&] { return cat("symmetric n=", n, " k=", k, " relative error ", err); });
    }
    return t.finish();
}

PropertyResult prop_sandwich_equality(Rng& rng, std::size_t trials) {
    Tracker t("sandwich_equality");
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t n = 2 + uniform_index(19, rng);
        const std::size_t k = 1 + uniform_index(std::min<std::size_t>(5, n - 1), rng);
        auto [a, b] = random_pair(k, n, rng);
        const double lhs = spectral_norm(projector_of_rows(a) - projector_of_rows(b));
        const double rhs = spectral_norm(complement_times(a, b));
        t.record(std::abs(lhs - rhs) - 1e-7, [&] { return cat("n=", n, " k=", k, " |PA-PB|=", lhs, " |A'B|=", rhs); });
    }
    return t.finish();
}

} // namespace detail

SuiteReport run_linalg_suite(const SuiteOptions& o) {
    Rng rng(o.seed);
    SuiteReport r{"linalg", {}, {}};
    r.properties.push_back(detail::prop_sandwich_equality(rng, detail::trials_or(o, 500)));
    r.properties.push_back(prop_singular_max_to_min(rng, detail::trials_or(o, 500)));
    r.properties.push_back(prop_principal_angle_grid(rng, detail::trials_or(o, 50)));
    r.properties.push_back(prop_eigvec_distance(rng, detail::trials_or(o, 200)));
    r.properties.push_back(prop_known_spectrum(rng, detail::trials_or(o, 200)));
    r.properties.push_back(prop_eigen_residual(rng, detail::trials_or(o, 200)));
    r.properties.push_back(detail::prop_oracle_agreement(rng, detail::trials_or(o, 200)));
    return r;
}

} // namespace subspace_round::verify
