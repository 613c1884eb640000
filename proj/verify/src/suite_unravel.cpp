#include "properties.hpp"

#include "subspace_round/errors.hpp"
#include "subspace_round/unravel.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

namespace subspace_round::verify {

using detail::cat;
using detail::Tracker;

namespace {

struct Fraction {
    std::size_t num; // δ = num / den
    std::size_t den;
};

/// Grid {0} ∪ {1 − m/|S|}, ascending, as exact fractions.
std::vector<Fraction> oracle_grid(const std::vector<NodeSet>& family) {
    std::vector<Fraction> g{{0, 1}};
    for (const auto& s : family)
        for (std::size_t m = 1; m <= s.size(); ++m) g.push_back({s.size() - m, s.size()});
    std::sort(g.begin(), g.end(), [](Fraction a, Fraction b) { return a.num * b.den < b.num * a.den; });
    g.erase(std::unique(g.begin(), g.end(), [](Fraction a, Fraction b) { return a.num * b.den == b.num * a.den; }),
            g.end());
    return g;
}

std::vector<std::size_t> oracle_blocks(const std::vector<NodeSet>& family, Fraction d) {
    std::vector<std::size_t> b;
    for (const auto& s : family) {
        const std::size_t top = (d.den - d.num) * s.size();
        b.push_back((top + d.den - 1) / d.den);
    }
    return b;
}

std::vector<NodeSet> random_family(std::size_t n, std::size_t k, Rng& rng) {
    std::vector<NodeSet> f;
    for (std::size_t i = 0; i < k; ++i) {
        std::vector<Node> m;
        const double p = uniform_real(0.1, 0.6, rng);
        for (Node u = 0; u < n; ++u)
            if (uniform_real(0.0, 1.0, rng) < p) m.push_back(u);
        if (m.empty()) m.push_back(uniform_index(n, rng));
        f.emplace_back(std::move(m));
    }
    return f;
}

bool retains(const Partition& out, const std::vector<NodeSet>& family, double delta) {
    for (std::size_t i = 0; i < family.size(); ++i) {
        if (set_difference(out[i], family[i]).size() != 0) return false;
        if (static_cast<double>(out[i].size()) < (1.0 - delta) * static_cast<double>(family[i].size()) - 1e-9)
            return false;
    }
    return true;
}

std::vector<PropertyResult> small_family_properties(Rng& rng, std::size_t trials) {
    Tracker retained("disjoint_and_retained");
    Tracker grid("grid_matches_oracle");
    Tracker feasibility("feasibility_matches_bruteforce");
    Tracker minimal("delta_minimal");
    Tracker monotone("feasibility_monotone");
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const std::size_t n = 1 + uniform_index(10, rng);
        const std::size_t k = 1 + uniform_index(std::min<std::size_t>(n, 4), rng);
        const auto family = random_family(n, k, rng);
        const OverlappingFamily fam(n, family);
        auto who = [&] { return cat("n=", n, " family=", detail::describe_sets(family)); };

        const std::vector<Fraction> g = oracle_grid(family);
        const std::vector<double> lib_grid = candidate_deltas(fam);
        bool grid_ok = lib_grid.size() == g.size();
        for (std::size_t i = 0; grid_ok && i < g.size(); ++i)
            grid_ok = std::abs(lib_grid[i] - static_cast<double>(g[i].num) / static_cast<double>(g[i].den)) <= 1e-15;
        grid.record(grid_ok ? -1.0 : 1.0, who);

        std::vector<bool> feasible;
        bool agree = true;
        for (const Fraction& d : g) {
            const bool want = brute_unravel_feasible(family, n, oracle_blocks(family, d));
            const bool got = unravel_at(fam, static_cast<double>(d.num) / static_cast<double>(d.den)).has_value();
            agree = agree && want == got;
            feasible.push_back(got);
        }
        feasibility.record(agree ? -1.0 : 1.0, who);
        bool mono = true;
        for (std::size_t i = 1; i < feasible.size(); ++i) mono = mono && (!feasible[i - 1] || feasible[i]);
        monotone.record(mono ? -1.0 : 1.0, who);

        const auto first = std::find(feasible.begin(), feasible.end(), true);
        try {
            const UnravelResult r = unravel(fam);
            retained.record(retains(r.partition, family, r.delta) ? -1.0 : 1.0, who);
            const std::size_t idx = static_cast<std::size_t>(first - feasible.begin());
            const bool ok = first != feasible.end() &&
                            std::abs(r.delta - static_cast<double>(g[idx].num) / static_cast<double>(g[idx].den)) <= 1e-15;
            minimal.record(ok ? -1.0 : 1.0, [&] { return cat(who(), " delta=", r.delta); });
        } catch (const Infeasible&) {
            // Must agree with the oracle that no grid value is feasible.
            minimal.record(first == feasible.end() ? -1.0 : 1.0, [&] { return cat(who(), " threw Infeasible"); });
        }
    }
    return {retained.finish(), grid.finish(), feasibility.finish(), minimal.finish(), monotone.finish()};
}

} // namespace

namespace detail {

PropertyResult prop_unravel_planted(Rng& rng, std::size_t trials, const std::vector<double>& deltas) {
    Tracker t("planted_recovery");
    for (std::size_t trial = 0; trial < trials; ++trial) {
        const double d0 = deltas[trial % deltas.size()];
        const std::size_t k = 2 + uniform_index(4, rng);
        std::vector<std::size_t> sizes(k);
        for (auto& s : sizes) s = 8 + uniform_index(33, rng);
        const std::size_t n = std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}) + uniform_index(5, rng);
        std::vector<NodeSet> truth;
        std::vector<std::size_t> label(n, k);
        {
            std::vector<Node> order(n);
            std::iota(order.begin(), order.end(), Node{0});
            std::shuffle(order.begin(), order.end(), rng);
            std::size_t at = 0;
            for (std::size_t c = 0; c < k; ++c) {
                std::vector<Node> m(order.begin() + static_cast<std::ptrdiff_t>(at),
                                    order.begin() + static_cast<std::ptrdiff_t>(at + sizes[c]));
                for (Node u : m) label[u] = c;
                at += sizes[c];
                truth.emplace_back(std::move(m));
            }
        }
        std::vector<NodeSet> family;
        for (std::size_t c = 0; c < k; ++c) {
            const double ts = static_cast<double>(sizes[c]);
            std::size_t drop = uniform_index(static_cast<std::size_t>(ts * d0) + 1, rng);
            std::size_t add = uniform_index(static_cast<std::size_t>(ts * d0) + 1, rng);
            auto delta_of = [&](std::size_t r, std::size_t a) {
                const double keep = ts - static_cast<double>(r);
                return 1.0 - keep * keep / (ts * (keep + static_cast<double>(a)));
            };
            while (delta_of(drop, add) > d0) (drop > add ? drop : add) -= 1;
            std::vector<Node> members(truth[c].begin(), truth[c].end());
            std::shuffle(members.begin(), members.end(), rng);
            members.resize(members.size() - drop);
            std::vector<Node> outside;
            for (Node u = 0; u < n; ++u)
                if (label[u] != c) outside.push_back(u);
            std::shuffle(outside.begin(), outside.end(), rng);
            members.insert(members.end(), outside.begin(), outside.begin() + static_cast<std::ptrdiff_t>(add));
            family.emplace_back(std::move(members));
        }
        const double closeness = brute_delta_partitions(family, truth).value;
        const UnravelResult r = unravel(OverlappingFamily(n, family));
        const double out_delta = brute_delta_partitions(r.partition.sets(), truth).value;
        const bool kept = retains(r.partition, family, r.delta);
        const double margin = std::max({closeness - d0, r.delta - d0, out_delta - 4.0 * d0}) - 1e-12;
        t.record(kept ? margin : 1.0, [&] {
            return cat("delta0=", d0, " family closeness=", closeness, " unravel delta=", r.delta,
                       " output delta=", out_delta, kept ? "" : " (retention violated)");
        });
    }
    return t.finish();
}

PropertyResult prop_unravel_figure() {
    Tracker t("figure_fixture");
    const std::vector<NodeSet> family{{0, 1, 2, 4}, {3, 4, 5, 6}, {6, 7, 8, 9, 10}, {10}};
    const std::vector<NodeSet> expected{{0, 1, 2}, {3, 4, 5}, {6, 7, 8, 9}, {10}};
    const UnravelResult r = unravel(OverlappingFamily(11, family));
    const bool ok = std::abs(r.delta - 0.25) <= 1e-15 && r.partition.sets() == expected;
    t.record(ok ? -1.0 : 1.0, [&] { return cat("delta=", r.delta, " sets=", describe_sets(r.partition.sets())); });
    // The matching is unique at δ = 1/4.
    std::size_t count = 0;
    const auto blocks = oracle_blocks(family, {1, 4});
    auto rec = [&](auto&& self, std::size_t u, std::vector<std::size_t>& load) -> void {
        if (u == 11) {
            count += load == blocks;
            return;
        }
        for (std::size_t s = 0; s < family.size(); ++s) {
            if (!family[s].contains(u) || load[s] == blocks[s]) continue;
            ++load[s];
            self(self, u + 1, load);
            --load[s];
        }
        self(self, u + 1, load);
    };
    std::vector<std::size_t> load(family.size(), 0);
    rec(rec, 0, load);
    t.record(count == 1 ? -1.0 : 1.0, [&] { return cat(count, " matchings at delta = 1/4"); });
    return t.finish();
}

} // namespace detail

SuiteReport run_unravel_suite(const SuiteOptions& o) {
    Rng rng(o.seed);
    SuiteReport r{"unravel", small_family_properties(rng, detail::trials_or(o, 300)), {}};
    r.properties.push_back(detail::prop_unravel_planted(rng, detail::trials_or(o, 100), {0.05, 0.1, 0.2}));
    r.properties.push_back(detail::prop_unravel_figure());
    return r;
}

} // namespace subspace_round::verify
