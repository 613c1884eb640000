#include "subspace_round/graph.hpp"

#include "subspace_round/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <cmath>
#include <map>
#include <utility>

namespace subspace_round {

namespace {

// Reported spectra and normalizations need far less than solver accuracy.
constexpr double kDiagnosticTolerance = 1e-6;

void require_full_cover(const WeightedGraph& g, const Partition& gamma) {
    if (gamma.n() != g.n())
        throw DimensionMismatch("partition has n = " + std::to_string(gamma.n()) + ", graph has " +
                                std::to_string(g.n()));
    if (!gamma.covers_all())
        throw IncompleteCover(std::to_string(gamma.n() - gamma.covered_count()) + " nodes are not covered");
}

std::vector<char> membership(const NodeSet& t, std::size_t n) {
    std::vector<char> in(n, 0);
    for (Node u : t) {
        if (u >= n) throw NodeOutOfRange("node " + std::to_string(u) + " outside the graph");
        in[u] = 1;
    }
    return in;
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

WeightedGraph::WeightedGraph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    if (n_ == 0) throw InvalidGraph("graph needs at least one node");
    std::vector<std::pair<Node, Node>> pairs;
    pairs.reserve(edges_.size());
    for (const auto& e : edges_) {
        if (e.u >= n_ || e.v >= n_)
            throw NodeOutOfRange("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ") outside n = " +
                                 std::to_string(n_));
        if (e.u == e.v) throw InvalidGraph("self loop at node " + std::to_string(e.u));
        if (!(e.w > 0.0) || !std::isfinite(e.w))
            throw InvalidGraph("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) +
                               ") has non-positive or non-finite weight");
        pairs.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
    }
    std::sort(pairs.begin(), pairs.end());
    const auto dup = std::adjacent_find(pairs.begin(), pairs.end());
    if (dup != pairs.end())
        throw InvalidGraph("repeated edge (" + std::to_string(dup->first) + ", " + std::to_string(dup->second) + ")");
}

WeightedGraph WeightedGraph::merged(std::size_t n, const std::vector<Edge>& edges) {
    std::map<std::pair<Node, Node>, double> sum;
    for (const auto& e : edges) sum[{std::min(e.u, e.v), std::max(e.u, e.v)}] += e.w;
    std::vector<Edge> out;
    out.reserve(sum.size());
    for (const auto& [key, w] : sum) out.push_back({key.first, key.second, w});
    return {n, std::move(out)};
}

double WeightedGraph::total_weight() const {
    double s = 0.0;
    for (const auto& e : edges_) s += e.w;
    return s;
}

std::vector<double> WeightedGraph::degrees() const {
    std::vector<double> d(n_, 0.0);
    for (const auto& e : edges_) {
        d[e.u] += e.w;
        d[e.v] += e.w;
    }
    return d;
}

DenseMatrix laplacian(const WeightedGraph& g) {
    DenseMatrix l(g.n(), g.n());
    for (const auto& e : g.edges()) {
        l(e.u, e.v) -= e.w;
        l(e.v, e.u) -= e.w;
        l(e.u, e.u) += e.w;
        l(e.v, e.v) += e.w;
    }
    return l;
}

double cut_weight(const WeightedGraph& g, const NodeSet& t) {
    const auto in = membership(t, g.n());
    double c = 0.0;
    for (const auto& e : g.edges())
        if (in[e.u] != in[e.v]) c += e.w;
    return c;
}

double expansion(const WeightedGraph& g, const NodeSet& t) {
    if (t.empty() || t.size() >= g.n()) throw EmptyOrFullSet("expansion needs a proper non-empty subset");
    return cut_weight(g, t) / static_cast<double>(t.size());
}

double max_expansion(const WeightedGraph& g, const Partition& gamma) {
    require_full_cover(g, gamma);
    double m = 0.0;
    for (const auto& t : gamma.sets()) m = std::max(m, cut_weight(g, t) / static_cast<double>(t.size()));
    return m;
}

double phi_objective_symmetric(const WeightedGraph& g, const Partition& gamma) {
    require_full_cover(g, gamma);
    double m = 0.0;
    for (const auto& s : gamma.sets()) {
        if (s.size() == g.n()) continue;
        const auto smaller = std::min(s.size(), g.n() - s.size());
        m = std::max(m, cut_weight(g, s) / static_cast<double>(smaller));
    }
    return m;
}

SpectralBracket expansion_spectral_bound(const WeightedGraph& g, const Partition& gamma) {
    require_full_cover(g, gamma);
    const DenseMatrix b = basis_matrix(gamma);
    const DenseMatrix inner = b.transpose() * laplacian(g) * b;
    const double s = spectral_norm(inner);
    return {0.5 * s, s};
}

double next_laplacian_eigenvalue(const DenseMatrix& lap, const DenseMatrix& y) {
    const std::size_t n = lap.rows();
    if (y.cols() != n) throw DimensionMismatch("embedding width differs from the Laplacian size");
    if (y.rows() >= n) throw DimensionMismatch("no eigenvalue beyond the embedded ones");
    double c = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (double x : lap.row(i)) s += std::abs(x);
        c = std::max(c, s);
    }
    if (c == 0.0) return 0.0;
    // Top eigenvalue of P(cI − L)P with P = I − YᵀY; PSD, so it equals σ₁.
    DenseMatrix shifted = -1.0 * lap;
    for (std::size_t i = 0; i < n; ++i) shifted(i, i) += c;
    DenseMatrix p = DenseMatrix::identity(n);
    p -= y.transpose() * y;
    const DenseMatrix m = p * shifted * p;
    return c - spectral_norm(m, kDiagnosticTolerance);
}

GraphClustering cluster_graph(const WeightedGraph& g, std::size_t k, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    if (k < 1 || k > g.n())
        throw DimensionMismatch("k = " + std::to_string(k) + " outside [1, " + std::to_string(g.n()) + "]");
    const DenseMatrix lap = laplacian(g);

    SpectralDecomposition bottom = [&] {
        try {
            return bottom_k_eigenpairs(lap, k);
        } catch (Error& e) {
            e.add_context("laplacian eigenvectors");
            throw;
        }
    }();
    DenseMatrix rows(k, g.n());
    for (std::size_t i = 0; i < k; ++i) std::copy(bottom.vectors[i].begin(), bottom.vectors[i].end(), rows.row(i).begin());
    Embedding embedding = Embedding::orthonormalized(rows);

    Partition found = spectral_clustering(embedding);
    Partition covered = cover_uncovered(embedding.matrix(), found);

    ClusteringReport report;
    report.k = k;
    report.n = g.n();
    report.seed = seed;
    report.residual = residual(embedding, covered);
    if (k < g.n()) report.lambda_k1 = next_laplacian_eigenvalue(lap, embedding.matrix());
    std::vector<double> exps;
    for (const auto& t : covered.sets()) exps.push_back(cut_weight(g, t) / static_cast<double>(t.size()));
    report.per_cluster_expansion = std::move(exps);
    report.algorithm_parameters["mode"] = "graph";
    report.algorithm_parameters["laplacian"] = "combinatorial";
    report.algorithm_parameters["uncovered_before_post_pass"] = std::to_string(g.n() - found.covered_count());
    report.algorithm_parameters["lambda_k"] = format_double(bottom.values.back());
    report.runtime_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    return {std::move(covered), std::move(report), std::move(embedding)};
}

namespace {

Embedding top_rows(const DenseMatrix& x, std::size_t k) {
    const SpectralDecomposition top = top_k_eigenpairs(x, k);
    DenseMatrix rows(k, x.rows());
    for (std::size_t i = 0; i < k; ++i) std::copy(top.vectors[i].begin(), top.vectors[i].end(), rows.row(i).begin());
    return Embedding::orthonormalized(rows);
}

double elapsed_ms(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
}

} // namespace

Partition approximate_matrix(const DenseMatrix& x, std::size_t k) {
    return spectral_clustering(top_rows(x, k));
}

ReportedPartition cluster_embedding(const Embedding& y, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    SpectralClusteringResult r = spectral_clustering_detailed(y);
    ClusteringReport report;
    report.k = y.k();
    report.n = y.n();
    report.seed = seed;
    report.residual = residual(y, r.partition);
    report.algorithm_parameters["mode"] = "embedding";
    report.algorithm_parameters["uncovered"] = std::to_string(y.n() - r.partition.covered_count());
    report.algorithm_parameters["unravel_delta"] = format_double(r.unravel_delta);
    report.runtime_ms = elapsed_ms(start);
    return {std::move(r.partition), std::move(report)};
}

ReportedPartition cluster_matrix(const DenseMatrix& x, std::size_t k, std::uint64_t seed) {
    const auto start = std::chrono::steady_clock::now();
    if (x.rows() != x.cols()) throw DimensionMismatch("matrix mode needs a square matrix");
    if (k < 1 || k > x.rows())
        throw DimensionMismatch("k = " + std::to_string(k) + " outside [1, " + std::to_string(x.rows()) + "]");
    const Embedding y = [&] {
        try {
            return top_rows(x, k);
        } catch (Error& e) {
            e.add_context("top eigenvectors");
            throw;
        }
    }();
    Partition found = spectral_clustering(y);
    ClusteringReport report;
    report.k = k;
    report.n = x.rows();
    report.seed = seed;
    report.residual = residual(y, found);
    report.algorithm_parameters["mode"] = "matrix";
    report.algorithm_parameters["approximation_error"] = format_double(spectral_norm(x - partition_projector(found)));
    report.runtime_ms = elapsed_ms(start);
    return {std::move(found), std::move(report)};
}

DenseMatrix partition_projector(const Partition& gamma) {
    DenseMatrix p(gamma.n(), gamma.n());
    for (const auto& s : gamma.sets()) {
        const double w = 1.0 / static_cast<double>(s.size());
        for (Node u : s)
            for (Node v : s) p(u, v) = w;
    }
    return p;
}

CliqueApproximation approximate_graph_by_cliques(const WeightedGraph& g, std::size_t k) {
    DenseMatrix l = laplacian(g);
    const double lambda_max = spectral_norm(l, kDiagnosticTolerance);
    CliqueApproximation out{Partition(g.n(), {}), 1.0, 0.0};
    if (lambda_max > 0.0) {
        out.scale = lambda_max;
        l *= 1.0 / lambda_max;
    }
    DenseMatrix x = DenseMatrix::identity(g.n());
    x -= l;
    out.partition = approximate_matrix(x, k);
    // L_s − Γ^⊥ = L_s − I + Γ^proj
    DenseMatrix diff = partition_projector(out.partition);
    diff -= x;
    out.residual = spectral_norm(diff);
    return out;
}

bool ReductionReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const ConditionCheck& c) { return c.passed; });
}

const ConditionCheck& ReductionReport::check(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return c;
    throw DimensionMismatch("no reduction check named " + name);
}

ReductionReport verify_reduction_feasibility(const DenseMatrix& x, const DenseMatrix& y, double eps,
                                             const std::optional<Partition>& truth) {
    const std::size_t n = x.rows();
    if (x.cols() != n) throw DimensionMismatch("X must be square");
    if (y.cols() != n) throw DimensionMismatch("Y width differs from the size of X");
    if (!(eps >= 0.0)) throw DimensionMismatch("eps must be non-negative");
    const double tol = kReductionTolerance;
    const double root = std::sqrt(eps);
    const std::size_t k = y.rows();

    ReductionReport report;
    DenseMatrix xs = x;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) xs(i, j) = xs(j, i) = 0.5 * (x(i, j) + x(j, i));
    const bool symmetric = is_symmetric(x, tol);
    report.checks.push_back({"symmetric", symmetric, 0.0, tol});

    // (i) X − Y^proj − √ε·Y^⊥ ⪯ 0
    {
        const DenseMatrix yproj = y.transpose() * y;
        DenseMatrix perp = DenseMatrix::identity(n);
        perp -= yproj;
        DenseMatrix d = xs;
        d -= yproj;
        d -= root * perp;
        const double top = largest_eigenvalue(d);
        report.checks.push_back({"upper_bound", top <= tol, top, tol});
    }
    // (ii) YXYᵀ ⪰ (1 − ε)I
    {
        DenseMatrix inner = y * xs * y.transpose();
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j) inner(i, j) = inner(j, i) = 0.5 * (inner(i, j) + inner(j, i));
        const double low = smallest_eigenvalue(inner);
        report.checks.push_back({"lower_bound", low >= 1.0 - eps - tol, low, 1.0 - eps});
    }
    // Row and column sums equal to one, entries non-negative.
    {
        double worst = 0.0;
        double min_entry = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double row = 0.0;
            double col = 0.0;
            for (std::size_t j = 0; j < n; ++j) {
                row += x(i, j);
                col += x(j, i);
                min_entry = std::min(min_entry, x(i, j));
            }
            worst = std::max({worst, std::abs(row - 1.0), std::abs(col - 1.0)});
        }
        report.checks.push_back({"doubly_stochastic", worst <= tol && min_entry >= -tol, std::max(worst, -min_entry), tol});
    }
    // Diagonal dominance of the Laplacian I − X.
    {
        double worst = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < n; ++i) {
            double off = 0.0;
            for (std::size_t j = 0; j < n; ++j)
                if (j != i) off += std::abs(x(i, j));
            worst = std::max(worst, off - std::abs(1.0 - x(i, i)));
        }
        report.checks.push_back({"diagonally_dominant", worst <= tol, worst, tol});
    }
    {
        const double low = smallest_eigenvalue(xs);
        report.checks.push_back({"psd", low >= -tol, low, -tol});
    }
    {
        double tr = 0.0;
        for (std::size_t i = 0; i < n; ++i) tr += x(i, i);
        report.checks.push_back({"trace", std::abs(tr - static_cast<double>(k)) <= tol, tr, static_cast<double>(k)});
    }

    report.lambda_k1_bound = 1.0 - root;
    if (truth) {
        if (truth->n() != n) throw DimensionMismatch("truth partition size differs from X");
        for (const auto& t : truth->sets()) {
            double q = 0.0;
            for (Node u : t)
                for (Node v : t) q += (u == v ? 1.0 : 0.0) - x(u, v);
            report.per_cluster_phi.push_back(q / static_cast<double>(t.size()));
        }
    }
    return report;
}

void attach_truth(ClusteringReport& report, const Partition& found, const Partition& truth) {
    report.delta_to_truth = delta_partitions(found, truth).value;
}

} // namespace subspace_round
