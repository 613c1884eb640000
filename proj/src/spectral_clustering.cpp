#include "subspace_round/spectral_clustering.hpp"

#include "parallel.hpp"
#include "subspace_round/errors.hpp"
#include "subspace_round/rounding.hpp"
#include "subspace_round/unravel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

namespace subspace_round {

namespace {

struct CenterScan {
    double critical = std::numeric_limits<double>::infinity();
    std::vector<Node> order;
    std::size_t prefix = 0; // smallest accepted prefix length at `critical`
};

std::vector<double> column_norms_squared(const DenseMatrix& z) {
    std::vector<double> out(z.cols(), 0.0);
    for (std::size_t i = 0; i < z.rows(); ++i) {
        auto r = z.row(i);
        for (std::size_t u = 0; u < z.cols(); ++u) out[u] += r[u] * r[u];
    }
    return out;
}

CenterScan scan_center(const DenseMatrix& z, const std::vector<double>& norm_sq, std::size_t c, bool keep_order) {
    const std::size_t n = z.cols();
    std::vector<double> dist_sq(n, 0.0);
    for (std::size_t i = 0; i < z.rows(); ++i) {
        auto r = z.row(i);
        const double zc = r[c];
        for (std::size_t u = 0; u < n; ++u) {
            const double d = r[u] - zc;
            dist_sq[u] += d * d;
        }
    }
    std::vector<std::pair<double, Node>> keyed(n);
    for (Node u = 0; u < n; ++u) {
        const double ratio = norm_sq[u] > 0.0 ? std::sqrt(dist_sq[u] / norm_sq[u])
                                              : std::numeric_limits<double>::infinity();
        keyed[u] = {ratio, u};
    }
    std::sort(keyed.begin(), keyed.end());

    CenterScan scan;
    std::vector<double> slack(n);
    std::vector<double> spread(n);
    double mass = 0.0;
    double dist = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        mass += norm_sq[keyed[j].second];
        dist += dist_sq[keyed[j].second];
        slack[j] = 1.0 - mass;
        spread[j] = dist;
        scan.critical = std::min(scan.critical, std::max(slack[j], spread[j]));
    }
    for (std::size_t j = 0; j < n; ++j) {
        if (slack[j] <= scan.critical) {
            scan.prefix = j + 1;
            break;
        }
    }
    if (keep_order) {
        scan.order.resize(n);
        for (std::size_t j = 0; j < n; ++j) scan.order[j] = keyed[j].second;
    }
    return scan;
}

} // namespace

Embedding::Embedding(DenseMatrix y, double tol) : y_(std::move(y)) {
    if (!y_.all_finite()) throw NonFinite("embedding has non-finite entries");
    DenseMatrix gram = multiply_by_transpose(y_, y_);
    for (std::size_t i = 0; i < gram.rows(); ++i) gram(i, i) -= 1.0;
    const double err = spectral_norm(gram);
    if (err > tol)
        throw NotOrthonormal("embedding rows are not orthonormal: ‖YYᵀ − I‖₂ = " + std::to_string(err));
}

Embedding Embedding::orthonormalized(const DenseMatrix& m) { return Embedding(orthonormal_row_basis(m)); }

double find_cluster_critical_value(const DenseMatrix& z, std::size_t c) {
    if (c >= z.cols()) throw NodeOutOfRange("candidate center " + std::to_string(c) + " out of range");
    return scan_center(z, column_norms_squared(z), c, false).critical;
}

FindClusterResult find_cluster_detailed(const DenseMatrix& z) {
    if (!z.all_finite()) throw NonFinite("find_cluster input has non-finite entries");
    if (z.frobenius_norm() == 0.0) throw NoClusterFound("find_cluster input is zero");
    const std::size_t n = z.cols();
    const std::vector<double> norm_sq = column_norms_squared(z);

    std::vector<double> critical(n);
    detail::parallel_for(n, [&](std::size_t c) {
        critical[c] = scan_center(z, norm_sq, c, false).critical;
    });
    // Deterministic reduction: minimal δ′, ties to the smallest center.
    std::size_t best = 0;
    for (std::size_t c = 1; c < n; ++c)
        if (critical[c] < critical[best]) best = c;
    if (!(critical[best] <= 1.0))
        throw NoClusterFound("no candidate center admits an acceptable prefix (min critical value " +
                             std::to_string(critical[best]) + ")");

    const CenterScan scan = scan_center(z, norm_sq, best, true);
    FindClusterResult out;
    out.center = best;
    out.delta = scan.critical;
    out.prefix = NodeSet(std::vector<Node>(scan.order.begin(), scan.order.begin() + static_cast<std::ptrdiff_t>(scan.prefix)));

    const std::vector<std::size_t> cols(out.prefix.begin(), out.prefix.end());
    const DenseMatrix zs = z.select_columns(cols);
    const SingularTriple t = top_singular_triple(zs, Vector(cols.size(), 1.0));
    const NodeSet local = round_vector(t.right);
    std::vector<Node> mapped;
    for (Node i : local) mapped.push_back(cols[i]);
    out.cluster = NodeSet(std::move(mapped));
    return out;
}

NodeSet boost(const DenseMatrix& y, const NodeSet& s) {
    if (s.empty()) throw EmptySet("cannot boost an empty set");
    if (s.max() >= y.cols()) throw NodeOutOfRange("boost set contains node " + std::to_string(s.max()));
    const std::vector<std::size_t> cols(s.begin(), s.end());
    const DenseMatrix ys = y.select_columns(cols);
    const SingularTriple t = top_singular_triple(ys, Vector(cols.size(), 1.0));
    return round_vector(multiply_transpose(y, t.left));
}

SpectralClusteringResult spectral_clustering_detailed(const Embedding& embedding) {
    const DenseMatrix& y = embedding.matrix();
    const std::size_t n = y.cols();
    const std::size_t rounds = numerical_rank(y);

    std::vector<NodeSet> cores;
    std::vector<NodeSet> boosted;
    std::vector<double> deltas;
    for (std::size_t r = 1; r <= rounds; ++r) {
        const char* stage = "projection";
        try {
            DenseMatrix z = y;
            if (r > 1) {
                stage = "unravel of boosted sets";
                const Partition previous = unravel(OverlappingFamily(n, boosted)).partition;
                stage = "projection";
                const DenseMatrix centers = y * basis_matrix(previous);
                if (numerical_rank(centers.transpose()) < previous.k())
                    throw DegenerateCenters("cluster centers are linearly dependent");
                const DenseMatrix projected = projector_complement(centers) * y;
                z = orthonormal_row_basis(projected);
            }
            stage = "find_cluster";
            const FindClusterResult found = find_cluster_detailed(z);
            cores.push_back(found.cluster);
            deltas.push_back(found.delta);
            stage = "unravel of core sets";
            const Partition unraveled = unravel(OverlappingFamily(n, cores)).partition;
            stage = "boost";
            boosted.push_back(boost(y, unraveled[r - 1]));
        } catch (Error& e) {
            e.add_context("iteration " + std::to_string(r) + ", " + stage);
            throw;
        }
    }

    UnravelResult final_result = [&] {
        try {
            return unravel(OverlappingFamily(n, boosted));
        } catch (Error& e) {
            e.add_context("final unravel");
            throw;
        }
    }();
    return {std::move(final_result.partition), std::move(cores), std::move(boosted), std::move(deltas),
            final_result.delta};
}

double residual(const DenseMatrix& y, const Partition& gamma) {
    if (gamma.n() != y.cols())
        throw DimensionMismatch("partition has n = " + std::to_string(gamma.n()) + " but embedding has " +
                                std::to_string(y.cols()) + " columns");
    DenseMatrix diff = y;
    for (const auto& s : gamma.sets()) {
        for (std::size_t i = 0; i < y.rows(); ++i) {
            double mean = 0.0;
            for (Node u : s) mean += y(i, u);
            mean /= static_cast<double>(s.size());
            for (Node u : s) diff(i, u) -= mean;
        }
    }
    const double s = spectral_norm(diff);
    return s * s;
}

Partition cover_uncovered(const DenseMatrix& y, const Partition& gamma) {
    if (gamma.k() == 0) throw EmptySet("cannot cover nodes with an empty partition");
    if (gamma.n() != y.cols()) throw DimensionMismatch("partition and embedding disagree on n");
    const std::size_t k = gamma.k();
    std::vector<Vector> centers(k, Vector(y.rows(), 0.0));
    for (std::size_t c = 0; c < k; ++c) {
        for (Node u : gamma[c])
            for (std::size_t i = 0; i < y.rows(); ++i) centers[c][i] += y(i, u);
        for (double& x : centers[c]) x /= static_cast<double>(gamma[c].size());
    }
    std::vector<std::size_t> labels = gamma.labels();
    for (Node u = 0; u < y.cols(); ++u) {
        if (labels[u] != Partition::kUnassigned) continue;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < k; ++c) {
            double d = 0.0;
            for (std::size_t i = 0; i < y.rows(); ++i) {
                const double t = y(i, u) - centers[c][i];
                d += t * t;
            }
            if (d < best) {
                best = d;
                labels[u] = c;
            }
        }
    }
    return Partition::from_labels(labels, k);
}

} // namespace subspace_round
