#include "properties.hpp"

#include <algorithm>
#include <stdexcept>

namespace subspace_round::verify {

bool SuiteReport::passed() const {
    return std::none_of(properties.begin(), properties.end(), [](const PropertyResult& p) { return p.failed(); });
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"linalg", "similarity", "round", "unravel", "pipeline", "graph"};
    return names;
}

SuiteReport run_suite(const std::string& name, const SuiteOptions& options) {
    if (name == "linalg") return run_linalg_suite(options);
    if (name == "similarity") return run_similarity_suite(options);
    if (name == "round") return run_round_suite(options);
    if (name == "unravel") return run_unravel_suite(options);
    if (name == "pipeline") return run_pipeline_suite(options);
    if (name == "graph") return run_graph_suite(options);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<std::pair<double, double>> pts;
    for (std::size_t i = 0; i < std::min(x.size(), y.size()); ++i)
        if (x[i] > 0.0 && y[i] > 0.0) pts.emplace_back(std::log(x[i]), std::log(y[i]));
    if (pts.size() < 2) return std::numeric_limits<double>::quiet_NaN();
    double mx = 0.0, my = 0.0;
    for (auto [a, b] : pts) {
        mx += a;
        my += b;
    }
    mx /= static_cast<double>(pts.size());
    my /= static_cast<double>(pts.size());
    double sxy = 0.0, sxx = 0.0;
    for (auto [a, b] : pts) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
    }
    return sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
}

namespace detail {

DenseMatrix gram_schmidt_rows(DenseMatrix m) {
    const std::size_t k = m.rows(), n = m.cols();
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                double d = 0.0;
                for (std::size_t t = 0; t < n; ++t) d += m(i, t) * m(j, t);
                for (std::size_t t = 0; t < n; ++t) m(i, t) -= d * m(j, t);
            }
            double nn = 0.0;
            for (std::size_t t = 0; t < n; ++t) nn += m(i, t) * m(i, t);
            nn = std::sqrt(nn);
            if (nn == 0.0) throw std::runtime_error("gram_schmidt_rows: rank deficient input");
            for (std::size_t t = 0; t < n; ++t) m(i, t) /= nn;
        }
    }
    return m;
}

DenseMatrix noisy_embedding(const std::vector<NodeSet>& sets, std::size_t n, double nu, Rng& rng) {
    DenseMatrix y = naive_transpose(indicator_basis(sets, n));
    if (nu > 0.0) {
        const DenseMatrix g = random_gaussian(y.rows(), n, rng);
        for (std::size_t i = 0; i < y.rows(); ++i)
            for (std::size_t j = 0; j < n; ++j) y(i, j) += nu * g(i, j);
    }
    return gram_schmidt_rows(std::move(y));
}

} // namespace detail

} // namespace subspace_round::verify
