#include "subspace_round/synth.hpp"

#include "counter_rng.hpp"
#include "subspace_round/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>
#include <utility>

namespace subspace_round {

namespace {

Partition consecutive_blocks(std::size_t n, const std::vector<std::size_t>& sizes) {
    std::vector<NodeSet> sets;
    Node next = 0;
    for (std::size_t s : sizes) {
        if (s == 0) throw EmptySet("cluster sizes must be positive");
        sets.push_back(NodeSet::range(next, next + s));
        next += s;
    }
    return {n, std::move(sets)};
}

DenseMatrix perturbed(const DenseMatrix& base, const DenseMatrix& noise, double nu) {
    DenseMatrix m = noise;
    m *= nu;
    m += base;
    return orthonormal_row_basis(m);
}

} // namespace

PlantedEmbedding planted_embedding(std::size_t n, const std::vector<std::size_t>& sizes, double eps_target,
                                   std::uint64_t seed) {
    const std::size_t total = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    if (sizes.empty()) throw EmptySet("at least one cluster size is required");
    if (total > n)
        throw SizesExceedN("cluster sizes sum to " + std::to_string(total) + " > n = " + std::to_string(n));
    if (!(eps_target >= 0.0 && eps_target < 1.0)) throw DimensionMismatch("eps must lie in [0, 1)");

    Partition truth = consecutive_blocks(n, sizes);
    const DenseMatrix base = basis_matrix(truth).transpose();
    if (eps_target == 0.0) {
        Embedding y(base);
        const double r = residual(y, truth);
        return {std::move(y), std::move(truth), r, 0.0};
    }

    detail::CounterRng rng(seed);
    DenseMatrix noise(base.rows(), base.cols());
    for (std::size_t i = 0; i < noise.rows(); ++i)
        for (std::size_t j = 0; j < noise.cols(); ++j) noise(i, j) = rng.normal();

    auto measure = [&](double nu) {
        const DenseMatrix y = perturbed(base, noise, nu);
        return std::pair{residual(y, truth), y};
    };

    // Bracket the target, then bisect geometrically.
    const auto in_range = [&](double v) { return v >= eps_target / 2.0 && v <= 2.0 * eps_target; };
    double lo = 0.0;
    double hi = std::sqrt(eps_target / static_cast<double>(n));
    double nu = hi;
    auto [value, y] = measure(nu);
    for (int i = 0; i < 200 && value < eps_target / 2.0; ++i) {
        lo = hi;
        hi *= 2.0;
        nu = hi;
        std::tie(value, y) = measure(nu);
    }
    for (int i = 0; i < 200 && !in_range(value); ++i) {
        nu = lo > 0.0 ? std::sqrt(lo * hi) : hi / 2.0;
        std::tie(value, y) = measure(nu);
        if (value > 2.0 * eps_target)
            hi = nu;
        else if (value < eps_target / 2.0)
            lo = nu;
    }
    if (!in_range(value)) throw ConvergenceFailure("noise scale search did not reach the target residual");
    return {Embedding(std::move(y)), std::move(truth), value, nu};
}

PlantedGraph planted_graph(const std::vector<std::size_t>& sizes, const IntraSpec& intra, double cross_weight,
                           std::uint64_t seed, std::size_t cross_edges) {
    if (sizes.empty()) throw EmptySet("at least one cluster size is required");
    if (!(cross_weight >= 0.0) || !std::isfinite(cross_weight))
        throw DimensionMismatch("cross weight must be finite and non-negative");
    const std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0});
    Partition truth = consecutive_blocks(n, sizes);
    detail::CounterRng rng(seed);

    std::vector<Edge> edges;
    for (const auto& t : truth.sets()) {
        const std::vector<Node> nodes(t.begin(), t.end());
        const std::size_t s = nodes.size();
        if (s < 2) continue;
        if (intra.kind == IntraCluster::NormalizedClique) {
            const double w = 1.0 / static_cast<double>(s);
            for (std::size_t a = 0; a < s; ++a)
                for (std::size_t b = a + 1; b < s; ++b) edges.push_back({nodes[a], nodes[b], w});
            continue;
        }
        if (intra.degree < 1) throw InvalidGraph("regular cluster degree must be positive");
        if (s - 1 <= intra.degree) {
            const double w = 1.0 / static_cast<double>(s - 1);
            for (std::size_t a = 0; a < s; ++a)
                for (std::size_t b = a + 1; b < s; ++b) edges.push_back({nodes[a], nodes[b], w});
            continue;
        }
        // Union of random Hamiltonian cycles; weighted degree is exactly 1.
        const std::size_t cycles = (intra.degree + 1) / 2;
        const double w = 1.0 / static_cast<double>(2 * cycles);
        for (std::size_t c = 0; c < cycles; ++c) {
            std::vector<Node> perm = nodes;
            for (std::size_t i = s - 1; i > 0; --i) std::swap(perm[i], perm[rng.below(i + 1)]);
            for (std::size_t i = 0; i < s; ++i) edges.push_back({perm[i], perm[(i + 1) % s], w});
        }
    }

    if (cross_weight > 0.0 && truth.k() >= 2) {
        const std::size_t count = cross_edges == 0 ? n : cross_edges;
        const double w = cross_weight / static_cast<double>(count);
        const auto labels = truth.labels();
        for (std::size_t e = 0; e < count; ++e) {
            const Node u = rng.below(n);
            const std::size_t outside = n - truth[labels[u]].size();
            // Pick the r-th node outside u's cluster.
            std::size_t r = rng.below(outside);
            Node v = 0;
            for (Node x = 0; x < n; ++x) {
                if (labels[x] == labels[u]) continue;
                if (r-- == 0) {
                    v = x;
                    break;
                }
            }
            edges.push_back({u, v, w});
        }
    }
    return {WeightedGraph::merged(n, edges), std::move(truth)};
}

} // namespace subspace_round
