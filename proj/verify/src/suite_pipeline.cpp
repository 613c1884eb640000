#include "properties.hpp"

#include "subspace_round/errors.hpp"
#include "subspace_round/rounding.hpp"
#include "subspace_round/spectral_clustering.hpp"
#include "subspace_round/synth.hpp"
#include "subspace_round/unravel.hpp"

#include <algorithm>
#include <numeric>

namespace subspace_round::verify {

using detail::cat;
using detail::Tracker;

namespace {

DenseMatrix gram_minus_projector(const DenseMatrix& y, const std::vector<NodeSet>& sets) {
    const DenseMatrix g = indicator_basis(sets, y.cols());
    DenseMatrix d = naive_multiply(naive_transpose(y), y);
    const DenseMatrix p = naive_multiply(g, naive_transpose(g));
    for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j) d(i, j) -= p(i, j);
    return d;
}

NodeSet random_subset(std::size_t n, double p, Rng& rng) {
    std::vector<Node> m;
    for (Node u = 0; u < n; ++u)
        if (uniform_real(0.0, 1.0, rng) < p) m.push_back(u);
    if (m.empty()) m.push_back(uniform_index(n, rng));
    return NodeSet(std::move(m));
}

PropertyResult prop_minor_s(Rng& rng, std::size_t trials) {
    Tracker t("minor_s_props");
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t n = 2 + uniform_index(14, rng);
        const std::size_t k = 1 + uniform_index(std::min<std::size_t>(n, 4), rng);
        const auto sets = random_partition(n, k, true, rng);
        const double nu = uniform_index(4, rng) == 0 ? 0.0 : std::pow(10.0, uniform_real(-4.0, -0.5, rng));
        const DenseMatrix y = detail::noisy_embedding(sets, n, nu, rng);
        const double bound = oracle_spectral_norm(gram_minus_projector(y, sets));
        const NodeSet s = random_subset(n, uniform_real(0.1, 0.9, rng), rng);
        const std::vector<std::size_t> cols(s.begin(), s.end());
        std::vector<double> sigma = singular_values(y.select_columns(cols));
        sigma.resize(k, 0.0);
        std::vector<double> rho;
        for (const auto& tset : sets)
            rho.push_back(static_cast<double>(intersection_size(s, tset)) / static_cast<double>(tset.size()));
        std::sort(rho.begin(), rho.end(), std::greater<>());
        double worst = 0.0;
        for (std::size_t i = 0; i < k; ++i) worst = std::max(worst, std::abs(sigma[i] * sigma[i] - rho[i]));
        t.record(worst - bound - 1e-10, [&] { return cat("n=", n, " k=", k, " S=", s.to_string(), " gap=", worst,
                                                         " bound=", bound); });
    }
    return t.finish();
}

std::vector<PropertyResult> prop_boost_initial(Rng& rng, std::size_t trials) {
    Tracker main("boost_initial_closeness");
    Tracker others("boost_initial_others");
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t k = 2 + uniform_index(3, rng);
        const std::size_t n = 4 * k + uniform_index(30, rng);
        const auto sets = random_partition(n, k, true, rng);
        const double nu = std::pow(10.0, uniform_real(-3.0, -1.3, rng));
        const DenseMatrix y = detail::noisy_embedding(sets, n, nu, rng);
        const double delta = oracle_spectral_norm(gram_minus_projector(y, sets));
        // S keeps most of one cluster and a little of the others.
        const std::size_t home = uniform_index(k, rng);
        std::vector<Node> members;
        for (std::size_t c = 0; c < k; ++c) {
            const double keep = c == home ? uniform_real(0.75, 1.0, rng) : uniform_real(0.0, 0.25, rng);
            for (Node u : sets[c])
                if (uniform_real(0.0, 1.0, rng) < keep) members.push_back(u);
        }
        if (members.empty()) members.push_back(*sets[home].begin());
        const NodeSet s(std::move(members));
        const std::vector<std::size_t> cols(s.begin(), s.end());
        const DenseMatrix ys = y.select_columns(cols);
        std::vector<double> sv = singular_values(ys);
        sv.resize(2, 0.0);
        const double s1 = sv[0] * sv[0], s2 = sv[1] * sv[1];
        const SingularTriple top = top_singular_triple(ys, Vector(cols.size(), 1.0));
        std::vector<Node> picked;
        for (Node i : round_vector(top.right)) picked.push_back(cols[i]);
        const NodeSet hat(std::move(picked));

        std::size_t best = 0;
        for (std::size_t c = 1; c < k; ++c)
            if (intersection_size(s, sets[c]) * sets[best].size() > intersection_size(s, sets[best]) * sets[c].size())
                best = c;
        const double lhs = static_cast<double>(intersection_size(sets[best], hat)) /
                           std::sqrt(static_cast<double>(sets[best].size() * hat.size()));
        const double rhs = s1 > s2 ? std::sqrt(std::max(0.0, s1 - delta)) * (1.0 - 4.0 * delta / (s1 - s2)) : 0.0;
        auto who = [&] { return cat("n=", n, " k=", k, " delta=", delta, " sigma1=", s1, " sigma2=", s2,
                                    " S=", s.to_string(), " hat=", hat.to_string()); };
        main.record(rhs - lhs - 1e-12, who);
        double worst = -1.0;
        for (std::size_t c = 0; c < k; ++c) {
            if (c == best) continue;
            worst = std::max(worst, static_cast<double>(intersection_size(sets[c], hat)) -
                                        (s2 + delta) * static_cast<double>(sets[c].size()));
        }
        others.record(worst - 1e-9, who);
    }
    return {main.finish(), others.finish()};
}

PropertyResult prop_progress(Rng& rng, std::size_t trials) {
    Tracker t("progress");
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t k = 2 + uniform_index(3, rng);
        std::vector<std::size_t> sizes(k);
        for (auto& s : sizes) s = 1 + uniform_index(15, rng);
        const std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) + uniform_index(5, rng);
        const double eps = std::pow(10.0, uniform_real(-5.0, -2.0, rng));
        const PlantedEmbedding plant = planted_embedding(n, sizes, eps, rng());
        const DenseMatrix& y = plant.embedding.matrix();
        const auto& truth = plant.truth.sets();
        const double eps_true = oracle_residual(y, truth);
        SpectralClusteringResult run = [&] {
            try {
                return spectral_clustering_detailed(plant.embedding);
            } catch (const Error&) {
                return SpectralClusteringResult{Partition(n, {}), {}, {}, {}, 0.0};
            }
        }();
        if (run.boosted.size() != k) {
            t.record(1.0, [&] { return cat("spectral clustering failed on n=", n, " eps=", eps); });
            continue;
        }
        double worst = -1.0;
        std::string where;
        for (std::size_t r = 1; r < k; ++r) {
            const std::vector<NodeSet> head(run.boosted.begin(), run.boosted.begin() + static_cast<std::ptrdiff_t>(r));
            const Partition gamma = unravel(OverlappingFamily(n, head)).partition;
            const DenseMatrix centers = naive_multiply(y, indicator_basis(gamma.sets(), n));
            DenseMatrix p = column_projector(centers);
            for (std::size_t i = 0; i < k; ++i)
                for (std::size_t j = 0; j < k; ++j) p(i, j) = (i == j ? 1.0 : 0.0) - p(i, j);
            const DenseMatrix z = naive_multiply(p, y);
            const std::vector<double> sv = singular_values(z);
            double sv_gap = 0.0;
            for (std::size_t i = 0; i < sv.size(); ++i) sv_gap = std::max(sv_gap, std::abs(sv[i] - (i < k - r ? 1.0 : 0.0)));
            if (sv_gap - 1e-8 > worst) {
                worst = sv_gap - 1e-8;
                where = cat("r=", r, " singular value gap ", sv_gap);
            }
            // Every injective assignment of the r found clusters to truth clusters.
            std::vector<std::size_t> perm(k);
            std::iota(perm.begin(), perm.end(), std::size_t{0});
            do {
                if (!std::is_sorted(perm.begin() + static_cast<std::ptrdiff_t>(r), perm.end())) continue;
                std::vector<NodeSet> head_truth, rest;
                for (std::size_t i = 0; i < k; ++i) (i < r ? head_truth : rest).push_back(truth[perm[i]]);
                const double alpha = std::pow(oracle_spectral_norm(indicator_basis(gamma.sets(), n) -
                                                                   indicator_basis(head_truth, n)), 2);
                const double lhs = oracle_residual(z, rest);
                const double margin = lhs - (eps_true + alpha) - 1e-9;
                if (margin > worst) {
                    worst = margin;
                    where = cat("r=", r, " |Z rest_perp|^2=", lhs, " eps=", eps_true, " alpha=", alpha);
                }
            } while (std::next_permutation(perm.begin(), perm.end()));
        }
        t.record(worst, [&] { return cat("n=", n, " k=", k, " ", where); });
    }
    return t.finish();
}

} // namespace

namespace detail {

PropertyResult prop_exact_recovery(Rng& rng, std::size_t trials) {
    Tracker t("exact_recovery");
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t k = 1 + uniform_index(5, rng);
        const std::size_t n = k + uniform_index(61 - k, rng);
        auto sets = random_partition(n, k, uniform_index(2, rng) == 0, rng);
        if (trial % 2 == 0 && k > 1) {
            // Force a singleton cluster by handing the extra members to another set.
            std::vector<Node> rest(sets[0].begin() + 1, sets[0].end());
            rest.insert(rest.end(), sets[1].begin(), sets[1].end());
            sets[1] = NodeSet(std::move(rest));
            sets[0] = NodeSet{*sets[0].begin()};
        }
        const Partition truth(n, sets);
        double delta = 1.0;
        std::string note;
        try {
            const Partition found = spectral_clustering(Embedding(basis_matrix(truth).transpose()));
            delta = brute_delta_partitions(found.sets(), sets).value;
            note = describe_sets(found.sets());
        } catch (const Error& e) {
            note = e.what();
        }
        t.record(delta > 0.0 ? delta : -1.0, [&] { return cat("n=", n, " truth=", describe_sets(sets), " got ", note); });
    }
    return t.finish();
}

EpsSweep eps_sweep(std::uint64_t seed, const std::vector<double>& eps, std::size_t seeds_per_eps) {
    const std::vector<std::size_t> sizes{100, 50, 10, 3, 1};
    constexpr std::size_t n = 200;
    EpsSweep out;
    out.table.columns = {"eps_target", "seed", "eps_actual", "delta", "residual", "unravel_delta"};
    Tracker bound("sweep_delta_bound");
    Tracker small("small_cluster_exact");
    Tracker res_paper("residual_bound");
    Tracker res_stated("residual_bound_stated", true);
    std::vector<double> xs, ds, rs;
    for (double e : eps) {
        for (std::size_t s = 0; s < seeds_per_eps; ++s) {
            const std::uint64_t sd = seed * 1000 + s;
            const PlantedEmbedding plant = planted_embedding(n, sizes, e, sd);
            double delta = 1.0, res = 1.0, ud = -1.0;
            std::vector<NodeSet> found_sets;
            try {
                const SpectralClusteringResult r = spectral_clustering_detailed(plant.embedding);
                delta = delta_partitions(r.partition, plant.truth).value;
                res = residual(plant.embedding, r.partition);
                ud = r.unravel_delta;
                found_sets = r.partition.sets();
            } catch (const Error&) {
            }
            const double ea = plant.eps_actual;
            out.table.rows.push_back({e, static_cast<double>(sd), ea, delta, res, ud});
            xs.push_back(ea);
            ds.push_back(delta);
            rs.push_back(res);
            auto who = [&] { return cat("eps=", ea, " seed=", sd, " delta=", delta, " residual=", res); };
            bound.record(delta - 200.0 * std::sqrt(ea), who);
            res_paper.record(res - (2.0 * ea + 4.0 * delta) - 1e-9, who);
            res_stated.record(res - (ea + 2.0 * delta) - 1e-9, who);
            if (ea <= 1e-4) {
                for (const auto& tset : plant.truth.sets()) {
                    if (tset.size() > 3) continue;
                    const bool hit = std::find(found_sets.begin(), found_sets.end(), tset) != found_sets.end();
                    small.record(hit ? -1.0 : 1.0, [&] { return cat(who(), " cluster ", tset.to_string()); });
                }
            }
        }
    }
    auto slope_property = [&](const char* name, const std::vector<double>& ys) {
        Tracker t(name);
        const double slope = log_log_slope(xs, ys);
        const std::size_t positive = static_cast<std::size_t>(std::count_if(ys.begin(), ys.end(), [](double v) { return v > 0.0; }));
        const double margin = std::isnan(slope) ? std::numeric_limits<double>::infinity()
                                                : std::max(0.35 - slope, slope - 0.65);
        t.record(margin, [&] {
            return std::isnan(slope) ? cat("slope undefined: only ", positive, " of ", ys.size(), " points are positive")
                                     : cat("log-log slope ", slope, " over ", positive, " positive points");
        });
        return t.finish();
    };
    out.properties.push_back(slope_property("sweep_delta_slope", ds));
    out.properties.push_back(slope_property("sweep_residual_slope", rs));
    out.properties.push_back(bound.finish());
    out.properties.push_back(small.finish());
    out.properties.push_back(res_paper.finish());
    out.properties.push_back(res_stated.finish());
    return out;
}

} // namespace detail

SuiteReport run_pipeline_suite(const SuiteOptions& o) {
    Rng rng(o.seed);
    SuiteReport r{"pipeline", {}, {}};
    r.properties.push_back(detail::prop_exact_recovery(rng, detail::trials_or(o, 50)));
    r.properties.push_back(prop_minor_s(rng, detail::trials_or(o, 300)));
    for (auto& p : prop_boost_initial(rng, detail::trials_or(o, 300))) r.properties.push_back(std::move(p));
    r.properties.push_back(prop_progress(rng, detail::trials_or(o, 30)));
    const std::vector<double> eps = o.eps_sweep.empty() ? std::vector<double>{1e-6, 1e-5, 1e-4, 1e-3} : o.eps_sweep;
    detail::EpsSweep sweep = detail::eps_sweep(o.seed, eps, 3);
    for (auto& p : sweep.properties) r.properties.push_back(std::move(p));
    r.sweep = std::move(sweep.table);
    return r;
}

} // namespace subspace_round::verify
