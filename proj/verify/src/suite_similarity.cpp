#include "properties.hpp"

#include "subspace_round/errors.hpp"
#include "subspace_round/linalg.hpp"

#include <algorithm>
#include <bit>

namespace subspace_round::verify {

using detail::cat;
using detail::Tracker;

namespace {

NodeSet from_mask(unsigned mask) {
    std::vector<Node> m;
    for (unsigned u = 0; mask >> u; ++u)
        if (mask >> u & 1U) m.push_back(u);
    return NodeSet(std::move(m));
}

/// Exhaustive pairs of non-empty subsets of {0..n−1} for n ≤ 10.
std::vector<PropertyResult> jaccard_sandwich(std::size_t max_n) {
    Tracker lower("jaccard_lower_bound");
    Tracker upper("jaccard_upper_bound_stated", true);
    Tracker corrected("jaccard_upper_bound_corrected");
    Tracker library("delta_sets_matches_counts");
    for (std::size_t n = 1; n <= max_n; ++n) {
        const unsigned full = 1U << n;
        for (unsigned a = 1; a < full; ++a) {
            for (unsigned b = 1; b < full; ++b) {
                // Only pairs that use the top node, so each n adds new pairs.
                if (!((a | b) >> (n - 1) & 1U)) continue;
                const double sa = std::popcount(a), sb = std::popcount(b);
                const double i = std::popcount(a & b), u = std::popcount(a | b);
                const double delta = 1.0 - i * i / (sa * sb);
                const double jac = (u - i) / u;
                auto who = [&] { return cat("A=", from_mask(a).to_string(), " B=", from_mask(b).to_string(),
                                            " delta=", delta, " jaccard=", jac); };
                lower.record(jac / 4.0 - delta - 1e-12, who);
                upper.record(delta - jac - 1e-12, who);
                corrected.record(delta - (1.0 - (1.0 - jac) * (1.0 - jac)) - 1e-12, who);
                if (n <= 6) {
                    const NodeSet x = from_mask(a), y = from_mask(b);
                    const double got = std::max(std::abs(delta_sets(x, y) - delta),
                                                std::abs(jaccard_symmetric_difference(x, y) - jac));
                    library.record(got - 1e-15, who);
                }
            }
        }
    }
    return {lower.finish(), upper.finish(), corrected.finish(), library.finish()};
}

/// Moves a few nodes between sets (or in and out of the cover).
std::vector<NodeSet> perturb(const std::vector<NodeSet>& sets, std::size_t n, std::size_t moves, Rng& rng) {
    std::vector<std::vector<Node>> m;
    for (const auto& s : sets) m.emplace_back(s.begin(), s.end());
    for (std::size_t t = 0; t < moves; ++t) {
        const Node u = uniform_index(n, rng);
        for (auto& s : m) s.erase(std::remove(s.begin(), s.end(), u), s.end());
        const std::size_t to = uniform_index(m.size() + 1, rng);
        if (to < m.size()) m[to].push_back(u);
    }
    std::vector<NodeSet> out;
    for (auto& s : m) out.emplace_back(std::move(s));
    return out;
}

PropertyResult prop_sqrt_triangle(Rng& rng, std::size_t trials) {
    Tracker t("sqrt_triangle");
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t n = 2 + uniform_index(20, rng);
        const std::size_t k = 1 + uniform_index(std::min<std::size_t>(n, 5), rng);
        const auto a = random_partition(n, k, uniform_index(2, rng) == 0, rng);
        auto b = perturb(a, n, 1 + uniform_index(4, rng), rng);
        auto c = perturb(b, n, 1 + uniform_index(4, rng), rng);
        auto empty = [](const auto& s) { return std::any_of(s.begin(), s.end(), [](const NodeSet& x) { return x.empty(); }); };
        if (empty(b) || empty(c)) {
            --trial;
            continue;
        }
        const double ac = std::sqrt(delta_partitions(std::span(a), std::span(c)).value);
        const double ab = std::sqrt(delta_partitions(std::span(a), std::span(b)).value);
        const double bc = std::sqrt(delta_partitions(std::span(b), std::span(c)).value);
        t.record(ac - ab - bc - 1e-12, [&] { return cat("sqrt terms ", ac, " > ", ab, " + ", bc); });
    }
    return t.finish();
}

PropertyResult prop_bruteforce_bijection(Rng& rng, std::size_t trials) {
    Tracker t("bottleneck_matches_bruteforce");
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t n = 1 + uniform_index(14, rng);
        const std::size_t k = 1 + uniform_index(std::min<std::size_t>(n, 6), rng);
        const auto a = random_partition(n, k, uniform_index(2, rng) == 0, rng);
        // Mix near and unrelated pairs.
        const auto b = uniform_index(2, rng) ? random_partition(n, k, uniform_index(2, rng) == 0, rng)
                                             : perturb(a, n, 1 + uniform_index(3, rng), rng);
        if (std::any_of(b.begin(), b.end(), [](const NodeSet& x) { return x.empty(); })) {
            --trial;
            continue;
        }
        const PartitionMatch got = delta_partitions(std::span(a), std::span(b));
        const BruteMatch want = brute_delta_partitions(a, b);
        const double margin = got.bijection == want.bijection ? std::abs(got.value - want.value) - 1e-15 : 1.0;
        t.record(margin, [&] { return cat("A=", detail::describe_sets(a), " B=", detail::describe_sets(b),
                                          " got ", got.value, " want ", want.value); });
    }
    return t.finish();
}

PropertyResult prop_basis_orthonormal(Rng& rng, std::size_t trials) {
    Tracker t("basis_orthonormal");
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t n = 1 + uniform_index(60, rng);
        const std::size_t k = 1 + uniform_index(std::min<std::size_t>(n, 8), rng);
        const auto sets = random_partition(n, k, uniform_index(2, rng) == 0, rng);
        const DenseMatrix g = basis_matrix(Partition(n, sets));
        const DenseMatrix gram = naive_multiply(naive_transpose(g), g);
        double worst = 0.0;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) worst = std::max(worst, std::abs(gram(i, j) - (i == j ? 1.0 : 0.0)));
        // Each diagonal entry sums |T| rounded squares of 1/√|T|.
        t.record(worst - static_cast<double>(n) * std::numeric_limits<double>::epsilon(), [&] { return cat("n=", n, " k=", k, " max |GtG - I| = ", worst); });
    }
    return t.finish();
}

} // namespace

namespace detail {

PropertyResult prop_set_similarity(Rng& rng, std::size_t trials, double max_delta, std::vector<PropertyResult>* extra) {
    Tracker lower("set_similarity_lower");
    Tracker upper("set_similarity_upper");
    Tracker ordered("basis_distance_4delta");
    for (std::size_t trial = 0; trial < trials;) {
        const std::size_t n = 2 + uniform_index(29, rng);
        const std::size_t k = 1 + uniform_index(std::min<std::size_t>(n, 5), rng);
        const auto a = random_partition(n, k, uniform_index(2, rng) == 0, rng);
        const auto b = perturb(a, n, uniform_index(4, rng), rng);
        if (std::any_of(b.begin(), b.end(), [](const NodeSet& x) { return x.empty(); })) continue;
        const PartitionMatch match = delta_partitions(std::span(a), std::span(b));
        if (match.value > max_delta) continue;
        ++trial;
        std::vector<NodeSet> aligned;
        for (std::size_t i = 0; i < k; ++i) aligned.push_back(b[match.bijection[i]]);
        const DenseMatrix ga = indicator_basis(a, n);
        const DenseMatrix gb = indicator_basis(aligned, n);
        DenseMatrix perp = naive_multiply(ga, naive_transpose(ga));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) perp(i, j) = (i == j ? 1.0 : 0.0) - perp(i, j);
        const double s = std::pow(spectral_norm(naive_multiply(perp, gb)), 2);
        const double d = std::pow(spectral_norm(ga - gb), 2);
        auto who = [&] { return cat("A=", describe_sets(a), " B=", describe_sets(b), " delta=", match.value,
                                    " |Gperp Ghat|^2=", s, " |G - Ghat|^2=", d); };
        lower.record(match.value - s - 1e-9, who);
        upper.record(s - 2.0 * match.value - 1e-9, who);
        ordered.record(d - 4.0 * match.value - 1e-9, who);
    }
    if (extra) {
        extra->push_back(upper.finish());
        extra->push_back(ordered.finish());
    }
    return lower.finish();
}

} // namespace detail

SuiteReport run_similarity_suite(const SuiteOptions& o) {
    Rng rng(o.seed);
    SuiteReport r{"similarity", jaccard_sandwich(10), {}};
    std::vector<PropertyResult> extra;
    r.properties.push_back(detail::prop_set_similarity(rng, detail::trials_or(o, 500), 0.3, &extra));
    r.properties.insert(r.properties.end(), extra.begin(), extra.end());
    r.properties.push_back(prop_sqrt_triangle(rng, detail::trials_or(o, 500)));
    r.properties.push_back(prop_bruteforce_bijection(rng, detail::trials_or(o, 300)));
    r.properties.push_back(prop_basis_orthonormal(rng, detail::trials_or(o, 200)));
    return r;
}

} // namespace subspace_round::verify
