#include "properties.hpp"

#include "subspace_round/errors.hpp"
#include "subspace_round/graph.hpp"
#include "subspace_round/synth.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>

namespace subspace_round::verify {

using detail::cat;
using detail::Tracker;

namespace {

WeightedGraph random_graph(std::size_t n, Rng& rng) {
    std::vector<Edge> edges;
    const double p = uniform_real(0.1, 0.9, rng);
    for (Node u = 0; u < n; ++u)
        for (Node v = u + 1; v < n; ++v)
            if (uniform_real(0.0, 1.0, rng) < p)
                edges.push_back({u, v, static_cast<double>(1 + uniform_index(8, rng)) / 8.0});
    return {n, std::move(edges)};
}

double brute_cut(const WeightedGraph& g, const NodeSet& t) {
    double c = 0.0;
    for (const Edge& e : g.edges())
        if (t.contains(e.u) != t.contains(e.v)) c += e.w;
    return c;
}

double brute_max_expansion(const WeightedGraph& g, const std::vector<NodeSet>& sets) {
    double best = 0.0;
    for (const auto& t : sets) best = std::max(best, brute_cut(g, t) / static_cast<double>(t.size()));
    return best;
}

double brute_symmetric(const WeightedGraph& g, const std::vector<NodeSet>& sets) {
    double best = 0.0;
    for (const auto& t : sets) {
        const std::size_t rest = g.n() - t.size();
        if (rest == 0) continue;
        best = std::max(best, brute_cut(g, t) / static_cast<double>(std::min(t.size(), rest)));
    }
    return best;
}

std::vector<PropertyResult> random_graph_properties(Rng& rng, std::size_t trials) {
    Tracker quad("quadratic_form_cut");
    Tracker bracket("spectral_bracket");
    Tracker equiv("expansion_equivalence");
    Tracker lphi("lambda_k_below_phi");
    Tracker lphi2("lambda_k_below_2phi");
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t n = 2 + uniform_index(19, rng);
        const WeightedGraph g = random_graph(n, rng);
        const std::size_t k = 1 + uniform_index(std::min<std::size_t>(n, 5), rng);
        const auto sets = random_partition(n, k, true, rng);
        const Partition gamma(n, sets);
        const DenseMatrix lap = laplacian(g);
        auto who = [&] { return cat("n=", n, " edges=", g.edges().size(), " partition=", detail::describe_sets(sets)); };

        double quad_gap = 0.0;
        for (const auto& t : sets) {
            double form = 0.0;
            for (Node a : t)
                for (Node b : t) form += lap(a, b);
            quad_gap = std::max({quad_gap, std::abs(form - cut_weight(g, t)), std::abs(form - brute_cut(g, t))});
        }
        quad.record(quad_gap > 0.0 ? quad_gap : -1.0, who);

        const double phi = max_expansion(g, gamma);
        const SpectralBracket b = expansion_spectral_bound(g, gamma);
        const double tol = 1e-9 * std::max(1.0, phi);
        bracket.record(std::max(b.lower - phi, phi - b.upper) - tol, [&] {
            return cat(who(), " lower=", b.lower, " phi=", phi, " upper=", b.upper);
        });

        const double sym = phi_objective_symmetric(g, gamma);
        const double want = brute_max_expansion(g, sets);
        equiv.record(std::max({std::abs(phi - sym), std::abs(phi - want), std::abs(sym - brute_symmetric(g, sets))}) -
                         1e-12 * std::max(1.0, phi),
                     [&] { return cat(who(), " max_expansion=", phi, " symmetric=", sym, " oracle=", want); });

        const double lambda_k = jacobi_eigen(lap).values[n - k];
        lphi.record(lambda_k - phi - tol, [&] { return cat(who(), " lambda_k=", lambda_k, " phi=", phi); });
        lphi2.record(lambda_k - 2.0 * phi - tol, [&] { return cat(who(), " lambda_k=", lambda_k, " phi=", phi); });
    }
    return {quad.finish(), bracket.finish(), equiv.finish(), lphi.finish(), lphi2.finish()};
}

std::vector<PropertyResult> plant_properties(Rng& rng, std::size_t trials) {
    Tracker exact("clique_plant_exact");
    Tracker det("generator_determinism");
    Tracker empty("empty_graph_singletons");
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t k = 1 + uniform_index(5, rng);
        std::vector<std::size_t> sizes(k);
        for (auto& s : sizes) s = 1 + uniform_index(12, rng);
        const std::uint64_t seed = rng();
        const PlantedGraph pg = planted_graph(sizes, {IntraCluster::NormalizedClique}, 0.0, seed);
        DenseMatrix diff = laplacian(pg.graph);
        diff -= DenseMatrix::identity(pg.graph.n()) - naive_multiply(indicator_basis(pg.truth.sets(), pg.graph.n()),
                                                                      naive_transpose(indicator_basis(pg.truth.sets(), pg.graph.n())));
        const double gap = oracle_spectral_norm(diff);
        exact.record(gap - 1e-12, [&] { return cat("sizes k=", k, " |L - Gperp| = ", gap); });

        const IntraSpec spec{uniform_index(2, rng) ? IntraCluster::NormalizedClique : IntraCluster::RandomRegular,
                             2 + uniform_index(5, rng)};
        const double cross = uniform_real(0.0, 2.0, rng);
        const PlantedGraph a = planted_graph(sizes, spec, cross, seed);
        const PlantedGraph b = planted_graph(sizes, spec, cross, seed);
        bool same = a.graph.n() == b.graph.n() && a.graph.edges().size() == b.graph.edges().size() && a.truth == b.truth;
        for (std::size_t i = 0; same && i < a.graph.edges().size(); ++i) {
            const Edge& x = a.graph.edges()[i];
            const Edge& y = b.graph.edges()[i];
            same = x.u == y.u && x.v == y.v && x.w == y.w;
        }
        const std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) + 2;
        const PlantedEmbedding e1 = planted_embedding(n, sizes, 1e-3, seed);
        const PlantedEmbedding e2 = planted_embedding(n, sizes, 1e-3, seed);
        const auto d1 = e1.embedding.matrix().data();
        const auto d2 = e2.embedding.matrix().data();
        same = same && std::equal(d1.begin(), d1.end(), d2.begin(), d2.end()) && e1.eps_actual == e2.eps_actual;
        det.record(same ? -1.0 : 1.0, [&] { return cat("seed ", seed, " produced different instances"); });
    }
    for (std::size_t n = 1; n <= 4; ++n) {
        const CliqueApproximation c = approximate_graph_by_cliques(WeightedGraph(n, {}), n);
        bool ok = c.partition.k() == n && c.residual <= 1e-12;
        for (std::size_t i = 0; ok && i < n; ++i) ok = c.partition[i].size() == 1;
        empty.record(ok ? -1.0 : 1.0, [&] { return cat("n=", n, " residual=", c.residual); });
    }
    return {exact.finish(), det.finish(), empty.finish()};
}

/// Scales the cross weight until max_expansion(truth) / λ_{k+1} hits the target.
struct TunedPlant {
    PlantedGraph plant;
    double cross = 0.0;
    double ratio = 0.0;
    double phi = 0.0;
    double lambda_k1 = 0.0;
};

TunedPlant tune_plant(const std::vector<std::size_t>& sizes, const IntraSpec& spec, double target, std::uint64_t seed) {
    const std::size_t k = sizes.size();
    auto measure = [&](double w) {
        PlantedGraph pg = planted_graph(sizes, spec, w, seed);
        const double phi = max_expansion(pg.graph, pg.truth);
        const double lam = bottom_k_eigenpairs(laplacian(pg.graph), k + 1).values[k];
        return TunedPlant{std::move(pg), w, phi / lam, phi, lam};
    };
    double w = target;
    TunedPlant best = measure(w);
    for (int it = 0; it < 40 && std::abs(best.ratio / target - 1.0) > 1e-3; ++it) {
        w *= target / best.ratio;
        best = measure(w);
    }
    return best;
}

} // namespace

namespace detail {

GraphSweep graph_sweep(std::uint64_t seed, const std::vector<double>& ratios) {
    struct Series {
        const char* name;
        std::vector<std::size_t> sizes;
        IntraSpec spec;
    };
    const std::vector<Series> series{
        {"cliques_72", {40, 20, 10, 2}, {IntraCluster::NormalizedClique, 0}},
        {"regular6_300", {160, 80, 40, 20}, {IntraCluster::RandomRegular, 6}},
    };
    std::vector<double> sorted = ratios;
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    GraphSweep out;
    out.table.columns = {"series", "ratio_target", "ratio_actual", "cross_weight", "phi", "lambda_k1", "delta",
                         "residual"};
    Tracker monotone("graph_delta_monotone");
    Tracker at3("graph_delta_at_1e-3");
    Tracker small("graph_small_cluster_exact");
    Tracker bracket("graph_plant_bracket");
    Tracker lphi("graph_plant_lambda_phi");
    Tracker lphi2("graph_plant_lambda_2phi");
    Tracker slope("graph_delta_slope", true);
    for (std::size_t si = 0; si < series.size(); ++si) {
        const Series& s = series[si];
        std::vector<double> deltas, actual;
        for (double target : sorted) {
            const TunedPlant tp = tune_plant(s.sizes, s.spec, target, seed + si);
            const WeightedGraph& g = tp.plant.graph;
            const Partition& truth = tp.plant.truth;
            double delta = 1.0, res = 1.0;
            std::optional<Partition> found;
            try {
                GraphClustering gc = cluster_graph(g, s.sizes.size(), seed);
                delta = delta_partitions(gc.partition, truth).value;
                res = gc.report.residual;
                found = std::move(gc.partition);
            } catch (const Error&) {
            }
            deltas.push_back(delta);
            actual.push_back(tp.ratio);
            out.table.rows.push_back({static_cast<double>(si), target, tp.ratio, tp.cross, tp.phi, tp.lambda_k1, delta, res});
            auto who = [&] { return cat(s.name, " ratio=", tp.ratio, " delta=", delta); };
            if (std::abs(std::log10(target) + 3.0) < 1e-9) {
                at3.record(delta - 0.3, who);
                for (const auto& t : truth.sets()) {
                    if (t.size() > 2) continue;
                    const bool hit = found && std::find(found->sets().begin(), found->sets().end(), t) != found->sets().end();
                    small.record(hit ? -1.0 : 1.0, [&] { return cat(who(), " cluster ", t.to_string()); });
                }
            }
            const double lambda_k = bottom_k_eigenpairs(laplacian(g), s.sizes.size()).values.back();
            std::vector<const Partition*> witnesses{&truth};
            if (found && found->covers_all()) witnesses.push_back(&*found);
            for (const Partition* w : witnesses) {
                const double phi = max_expansion(g, *w);
                const SpectralBracket b = expansion_spectral_bound(g, *w);
                const double tol = 1e-9 * std::max(1.0, phi);
                bracket.record(std::max(b.lower - phi, phi - b.upper) - tol,
                               [&] { return cat(who(), " lower=", b.lower, " phi=", phi, " upper=", b.upper); });
                lphi.record(lambda_k - phi - tol, [&] { return cat(who(), " lambda_k=", lambda_k, " phi=", phi); });
                lphi2.record(lambda_k - 2.0 * phi - tol,
                             [&] { return cat(who(), " lambda_k=", lambda_k, " phi=", phi); });
            }
        }
        double worst = -1.0;
        for (std::size_t i = 1; i < deltas.size(); ++i) worst = std::max(worst, deltas[i] - deltas[i - 1]);
        monotone.record(worst, [&] { return cat(s.name, " delta increased by ", worst); });
        const double sl = log_log_slope(actual, deltas);
        const std::size_t positive = static_cast<std::size_t>(std::count_if(deltas.begin(), deltas.end(), [](double d) { return d > 0.0; }));
        slope.record(std::isnan(sl) ? std::numeric_limits<double>::infinity() : std::max(0.35 - sl, sl - 0.65), [&] {
            return std::isnan(sl) ? cat(s.name, " slope undefined: only ", positive, " of ", deltas.size(),
                                        " points have delta > 0")
                                  : cat(s.name, " log-log slope ", sl);
        });
    }
    out.properties = {monotone.finish(), at3.finish(), small.finish(), bracket.finish(), lphi.finish(),
                      lphi2.finish(), slope.finish()};
    return out;
}

PropertyResult prop_matrix_approximation(Rng& rng, std::size_t trials, const std::vector<double>& eps) {
    Tracker t("matrix_approximation");
    for (double e : eps) {
        for (std::size_t trial = 0; trial < trials; ++trial) {
            const std::size_t k = 2 + uniform_index(4, rng);
            const std::size_t n = k + 5 + uniform_index(50, rng);
            const auto sets = random_partition(n, k, true, rng);
            const DenseMatrix g = indicator_basis(sets, n);
            DenseMatrix x = naive_multiply(g, naive_transpose(g));
            DenseMatrix noise = random_symmetric(n, rng);
            noise *= e / oracle_spectral_norm(noise);
            x += noise;
            double dist = 2.0;
            std::string note;
            try {
                const Partition found = approximate_matrix(x, k);
                const DenseMatrix gf = indicator_basis(found.sets(), n);
                dist = oracle_spectral_norm(x - naive_multiply(gf, naive_transpose(gf)));
                note = describe_sets(found.sets());
            } catch (const Error& err) {
                note = err.what();
            }
            t.record(dist - 10.0 * std::pow(e, 0.25),
                     [&] { return cat("n=", n, " k=", k, " eps=", e, " |X - Gproj|=", dist, " ", note); });
        }
    }
    return t.finish();
}

PropertyResult prop_clique_approximation(Rng& rng, std::size_t trials, const std::vector<double>& eps) {
    Tracker t("clique_approximation");
    for (double e : eps) {
        for (std::size_t trial = 0; trial < trials; ++trial) {
            const std::size_t k = 2 + uniform_index(4, rng);
            std::vector<std::size_t> sizes(k);
            for (auto& s : sizes) s = 2 + uniform_index(12, rng);
            const std::uint64_t seed = rng();
            // ε is measured on L scaled by λ_max; the cross weight is rescaled until it matches.
            auto measured = [&](double w) {
                PlantedGraph pg = planted_graph(sizes, {IntraCluster::NormalizedClique}, w, seed);
                const std::size_t n = pg.graph.n();
                DenseMatrix lap = laplacian(pg.graph);
                lap *= 1.0 / jacobi_eigen(lap).values.front();
                const DenseMatrix gt = indicator_basis(pg.truth.sets(), n);
                const DenseMatrix perp = DenseMatrix::identity(n) - naive_multiply(gt, naive_transpose(gt));
                return std::pair{oracle_spectral_norm(lap - perp), std::move(pg)};
            };
            double w = e;
            auto [actual, pg] = measured(w);
            for (int it = 0; it < 30 && std::abs(actual / e - 1.0) > 1e-3; ++it) {
                w *= e / actual;
                std::tie(actual, pg) = measured(w);
            }
            double res = 2.0;
            try {
                res = approximate_graph_by_cliques(pg.graph, k).residual;
            } catch (const Error&) {
            }
            t.record(res - 10.0 * std::pow(actual, 0.25),
                     [&] { return cat("k=", k, " eps=", actual, " residual=", res); });
        }
    }
    return t.finish();
}

std::vector<PropertyResult> reduction_fixtures() {
    const std::vector<NodeSet> sets{{0, 1, 2}, {3, 4}, {5}};
    const Partition truth(6, sets);
    const DenseMatrix g = indicator_basis(sets, 6);
    const DenseMatrix y = naive_transpose(g);
    const DenseMatrix x0 = naive_multiply(g, y);
    auto rank_one = [](double t, std::vector<double> v) {
        const double s = std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
        DenseMatrix m(v.size(), v.size());
        for (std::size_t i = 0; i < v.size(); ++i)
            for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = t * v[i] * v[j] / (s * s);
        return m;
    };
    const DenseMatrix ones(6, 6, 1.0 / 6.0);
    const std::vector<double> split{1, -1, 0, 0, 0, 0};

    std::vector<PropertyResult> out;
    auto expect_pass = [&](const char* name, const DenseMatrix& x, const DenseMatrix& yy) {
        Tracker t(name);
        const ReductionReport r = verify_reduction_feasibility(x, yy, 0.0, truth);
        std::string failed;
        for (const auto& c : r.checks)
            if (!c.passed) failed += c.name + "=" + cat(c.value) + " ";
        t.record(r.all_passed() ? -1.0 : 1.0, [&] { return "failed checks: " + failed; });
        out.push_back(t.finish());
    };
    auto expect_flag = [&](const std::string& check, const DenseMatrix& x) {
        Tracker t("violation_" + check);
        const ReductionReport r = verify_reduction_feasibility(x, y, 0.0, truth);
        const ConditionCheck& c = r.check(check);
        t.record(c.passed ? 1.0 : -1.0, [&] { return cat(check, " passed with value ", c.value); });
        out.push_back(t.finish());
    };

    expect_pass("feasible_partition_projector", x0, y);
    DenseMatrix uniform_y(1, 6, 1.0 / std::sqrt(6.0));
    {
        Tracker t("feasible_uniform");
        const ReductionReport r = verify_reduction_feasibility(ones, uniform_y, 0.0);
        t.record(r.all_passed() ? -1.0 : 1.0, [] { return std::string("uniform fixture failed"); });
        out.push_back(t.finish());
    }

    DenseMatrix asym = x0;
    asym(0, 3) += 1e-3;
    expect_flag("symmetric", asym);
    expect_flag("upper_bound", x0 + rank_one(0.1, split));
    expect_flag("lower_bound", 0.5 * x0 + 0.5 * ones);
    DenseMatrix bumped = x0;
    bumped(0, 3) += 0.5;
    bumped(3, 0) += 0.5;
    expect_flag("doubly_stochastic", bumped);
    expect_flag("diagonally_dominant", x0 + rank_one(1.0, split));
    expect_flag("psd", x0 - rank_one(0.2, split));
    expect_flag("trace", 0.9 * x0 + 0.1 * ones);
    return out;
}

} // namespace detail

SuiteReport run_graph_suite(const SuiteOptions& o) {
    Rng rng(o.seed);
    SuiteReport r{"graph", random_graph_properties(rng, detail::trials_or(o, 300)), {}};
    for (auto& p : plant_properties(rng, detail::trials_or(o, 50))) r.properties.push_back(std::move(p));
    detail::GraphSweep sweep = detail::graph_sweep(o.seed, {1e-2, 1e-3, 1e-4});
    for (auto& p : sweep.properties) r.properties.push_back(std::move(p));
    r.sweep = std::move(sweep.table);
    r.properties.push_back(detail::prop_matrix_approximation(rng, detail::trials_or(o, 20), {1e-4, 1e-2}));
    r.properties.push_back(detail::prop_clique_approximation(rng, detail::trials_or(o, 10), {1e-4, 1e-2}));
    for (auto& p : detail::reduction_fixtures()) r.properties.push_back(std::move(p));
    return r;
}

} // namespace subspace_round::verify
