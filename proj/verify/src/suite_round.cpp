#include "properties.hpp"

#include "subspace_round/rounding.hpp"

#include <algorithm>

namespace subspace_round::verify {

using detail::cat;
using detail::Tracker;

namespace {

/// Cycles through Gaussian vectors, noisy indicators and vectors with ties.
std::vector<double> sample_q(std::size_t n, std::size_t index, Rng& rng) {
    std::normal_distribution<double> normal;
    std::vector<double> q(n);
    do {
        switch (index % 4) {
        case 0:
            for (double& x : q) x = normal(rng);
            break;
        case 1:
        case 2: {
            const double noise = std::pow(10.0, uniform_real(-3.0, 0.0, rng));
            const double scale = (uniform_index(2, rng) ? 1.0 : -1.0) * uniform_real(0.1, 10.0, rng);
            for (double& x : q) x = scale * ((uniform_index(2, rng) ? 1.0 : 0.0) + noise * normal(rng));
            break;
        }
        default:
            for (double& x : q) x = static_cast<double>(uniform_index(4, rng)) - 1.0;
        }
    } while (std::all_of(q.begin(), q.end(), [](double x) { return x == 0.0; }));
    return q;
}

std::vector<PropertyResult> threshold_properties(Rng& rng, std::size_t trials) {
    Tracker optimal("threshold_optimality");
    Tracker ties("tie_breaking");
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t n = 1 + uniform_index(12, rng);
        const std::vector<double> q = sample_q(n, trial, rng);
        const RoundResult got = round_vector_detailed(q);
        const std::vector<NodeSet> family = threshold_sets(q);
        double best = 0.0;
        for (const auto& s : family) best = std::max(best, threshold_score(q, s));
        const bool member = std::find(family.begin(), family.end(), got.set) != family.end();
        const double got_score = threshold_score(q, got.set);
        auto who = [&] { return cat("n=", n, " set=", got.set.to_string(), " score=", got_score, " best=", best); };
        optimal.record(member ? best - got_score - 1e-12 * best : 1.0, who);
        // Smallest cardinality, then lexicographic, among maximizers.
        const NodeSet* pick = nullptr;
        for (const auto& s : family) {
            if (threshold_score(q, s) < best * (1.0 - 1e-12)) continue;
            if (!pick || s.size() < pick->size() || (s.size() == pick->size() && s < *pick)) pick = &s;
        }
        ties.record(pick && *pick == got.set ? -1.0 : 1.0, [&] { return cat(who(), " expected ", pick->to_string()); });
    }
    return {optimal.finish(), ties.finish()};
}

PropertyResult prop_scale_invariance(Rng& rng, std::size_t trials) {
    Tracker t("scale_invariance");
    std::normal_distribution<double> normal;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t n = 1 + uniform_index(30, rng);
        std::vector<double> q(n);
        for (double& x : q) x = normal(rng);
        const double c = std::pow(10.0, uniform_real(-3.0, 3.0, rng));
        std::vector<double> up(n), down(n);
        for (std::size_t i = 0; i < n; ++i) {
            up[i] = c * q[i];
            down[i] = -c * q[i];
        }
        const RoundResult base = round_vector_detailed(q);
        const RoundResult pos = round_vector_detailed(up);
        const RoundResult neg = round_vector_detailed(down);
        const double score_gap = std::max(std::abs(pos.score - c * base.score), std::abs(neg.score - c * base.score)) /
                                 (c * base.score);
        // The whole of V is a threshold set for both signs, so its sign carries no information.
        const bool whole = base.set.size() == n;
        const bool same = pos.set == base.set && neg.set == base.set &&
                          (whole || (pos.sign == base.sign && neg.sign == -base.sign));
        t.record(same ? score_gap - 1e-12 : 1.0, [&] { return cat("n=", n, " c=", c, " score gap ", score_gap); });
    }
    return t.finish();
}

} // namespace

namespace detail {

PropertyResult prop_round_guarantee(Rng& rng, std::size_t max_n, std::size_t q_per_n) {
    Tracker t("round_guarantee");
    for (std::size_t n = 1; n <= max_n; ++n) {
        std::vector<NodeSet> all;
        for (unsigned mask = 1; mask < (1U << n); ++mask) {
            std::vector<Node> m;
            for (unsigned u = 0; u < n; ++u)
                if (mask >> u & 1U) m.push_back(u);
            all.emplace_back(std::move(m));
        }
        for (std::size_t i = 0; i < q_per_n; ++i) {
            const std::vector<double> q = sample_q(n, i, rng);
            const NodeSet r = round_vector(q);
            for (const NodeSet& target : all) {
                const std::vector<double> ind = [&] {
                    std::vector<double> v(n, 0.0);
                    for (Node u : target) v[u] = 1.0;
                    return v;
                }();
                const double dq = vector_delta(q, ind);
                const double dr = set_delta(r, target);
                t.record(dr - 4.0 * dq - 1e-12, [&] { return cat("n=", n, " T=", target.to_string(), " round=",
                                                                 r.to_string(), " delta(round,T)=", dr,
                                                                 " delta(q,T)=", dq); });
            }
        }
    }
    return t.finish();
}

} // namespace detail

SuiteReport run_round_suite(const SuiteOptions& o) {
    Rng rng(o.seed);
    SuiteReport r{"round", {}, {}};
    r.properties.push_back(detail::prop_round_guarantee(rng, 12, detail::trials_or(o, 200)));
    for (auto& p : threshold_properties(rng, detail::trials_or(o, 500))) r.properties.push_back(std::move(p));
    r.properties.push_back(prop_scale_invariance(rng, detail::trials_or(o, 500)));
    return r;
}

} // namespace subspace_round::verify
