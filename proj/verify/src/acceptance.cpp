#include "subspace_round/verify/acceptance.hpp"

#include "properties.hpp"

#include <chrono>
#include <functional>

namespace subspace_round::verify {

namespace {

using Clock = std::chrono::steady_clock;

CriterionResult timed(int id, std::string title, double budget_seconds,
                      const std::function<std::vector<PropertyResult>()>& body) {
    CriterionResult c;
    c.id = id;
    c.title = std::move(title);
    const auto start = Clock::now();
    c.properties = body();
    c.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    c.passed = std::none_of(c.properties.begin(), c.properties.end(), [](const PropertyResult& p) { return p.failed(); });
    if (budget_seconds > 0.0 && c.seconds > budget_seconds) {
        c.passed = false;
        c.note = detail::cat("runtime ", c.seconds, " s exceeds the ", budget_seconds, " s budget");
    }
    return c;
}

PropertyResult pick(const std::vector<PropertyResult>& all, const std::string& name) {
    for (const auto& p : all)
        if (p.name == name) return p;
    PropertyResult missing;
    missing.name = name;
    missing.failures = 1;
    missing.witness = "property not produced";
    return missing;
}

} // namespace

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
    std::vector<CriterionResult> out;

    out.push_back(timed(1, "exact recovery on 50 random plants", 5.0, [&] {
        Rng rng(seed);
        return std::vector{detail::prop_exact_recovery(rng, 50)};
    }));

    // Criteria 2 and 3 share the planted sweep; it is timed with criterion 2.
    detail::EpsSweep sweep;
    out.push_back(timed(2, "sqrt(eps) scaling of delta and residual", 60.0, [&] {
        sweep = detail::eps_sweep(seed, {1e-6, 1e-5, 1e-4, 1e-3}, 3);
        return std::vector{pick(sweep.properties, "sweep_delta_slope"), pick(sweep.properties, "sweep_residual_slope"),
                           pick(sweep.properties, "sweep_delta_bound")};
    }));
    out.push_back(timed(3, "clusters of size <= 3 recovered exactly at eps <= 1e-4", 0.0, [&] {
        return std::vector{pick(sweep.properties, "small_cluster_exact")};
    }));

    out.push_back(timed(4, "round guarantee, exhaustive T for n <= 12", 30.0, [&] {
        Rng rng(seed + 4);
        return std::vector{detail::prop_round_guarantee(rng, 12, 200)};
    }));

    out.push_back(timed(5, "unravel guarantee on planted families and the figure fixture", 0.0, [&] {
        Rng rng(seed + 5);
        return std::vector{detail::prop_unravel_planted(rng, 100, {0.05, 0.1, 0.2}), detail::prop_unravel_figure()};
    }));

    out.push_back(timed(6, "similarity sandwiches", 0.0, [&] {
        Rng rng(seed + 6);
        std::vector<PropertyResult> extra;
        std::vector<PropertyResult> v{detail::prop_set_similarity(rng, 500, 0.3, &extra)};
        v.insert(v.end(), extra.begin(), extra.end());
        v.push_back(detail::prop_sandwich_equality(rng, 500));
        return v;
    }));

    out.push_back(timed(7, "graph application over phi/lambda ratios 1e-2, 1e-3, 1e-4", 120.0, [&] {
        const detail::GraphSweep g = detail::graph_sweep(seed, {1e-2, 1e-3, 1e-4});
        PropertyResult doubled = pick(g.properties, "graph_plant_lambda_2phi");
        doubled.flag_only = true;
        return std::vector{pick(g.properties, "graph_delta_monotone"), pick(g.properties, "graph_delta_at_1e-3"),
                           pick(g.properties, "graph_plant_bracket"), pick(g.properties, "graph_plant_lambda_phi"),
                           doubled};
    }));

    out.push_back(timed(8, "matrix approximation within 10 eps^(1/4)", 0.0, [&] {
        Rng rng(seed + 8);
        return std::vector{detail::prop_matrix_approximation(rng, 20, {1e-4, 1e-2}),
                           detail::prop_clique_approximation(rng, 10, {1e-4, 1e-2})};
    }));

    out.push_back(timed(9, "reduction verifier fixtures", 0.0, [] { return detail::reduction_fixtures(); }));

    out.push_back(timed(10, "power iteration against the Jacobi oracle on 200 matrices", 0.0, [&] {
        Rng rng(seed + 10);
        return std::vector{detail::prop_oracle_agreement(rng, 200)};
    }));
    return out;
}

} // namespace subspace_round::verify
