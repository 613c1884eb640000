#include "subspace_round/unravel.hpp"

#include "subspace_round/errors.hpp"
#include "subspace_round/matching.hpp"

#include <algorithm>
#include <cmath>

namespace subspace_round {

namespace {

std::vector<DeltaFraction> candidate_fractions(const OverlappingFamily& family) {
    std::vector<DeltaFraction> out{{0, 1}};
    for (const auto& s : family.sets())
        for (std::size_t m = 1; m <= s.size(); ++m) out.push_back({s.size() - m, s.size()});
    auto less = [](const DeltaFraction& a, const DeltaFraction& b) {
        return a.numerator * b.denominator < b.numerator * a.denominator;
    };
    auto equal = [](const DeltaFraction& a, const DeltaFraction& b) {
        return a.numerator * b.denominator == b.numerator * a.denominator;
    };
    std::sort(out.begin(), out.end(), less);
    out.erase(std::unique(out.begin(), out.end(), equal), out.end());
    return out;
}

std::optional<Partition> unravel_with_blocks(const OverlappingFamily& family, const std::vector<std::size_t>& blocks) {
    CapacitatedBipartiteGraph g;
    g.left_count = family.n();
    g.capacity = blocks;
    g.adjacent.resize(family.n());
    for (std::size_t j = 0; j < family.k(); ++j)
        for (Node u : family[j]) g.adjacent[u].push_back(j);
    const CapacitatedMatching m = maximum_matching(g);
    if (!m.saturates_right(g)) return std::nullopt;

    std::vector<std::vector<Node>> members(family.k());
    for (Node u = 0; u < family.n(); ++u)
        if (m.right_of[u] != kUnmatched) members[m.right_of[u]].push_back(u);
    std::vector<NodeSet> sets;
    for (auto& mem : members) sets.emplace_back(std::move(mem));
    return Partition(family.n(), std::move(sets));
}

std::optional<Partition> unravel_at_fraction(const OverlappingFamily& family, const DeltaFraction& delta) {
    std::vector<std::size_t> blocks;
    for (const auto& s : family.sets()) blocks.push_back(delta.block_size(s.size()));
    return unravel_with_blocks(family, blocks);
}

} // namespace

std::size_t DeltaFraction::block_size(std::size_t size) const {
    // ⌈(den − num)·size / den⌉
    const std::size_t top = (denominator - numerator) * size;
    return (top + denominator - 1) / denominator;
}

std::vector<double> candidate_deltas(const OverlappingFamily& family) {
    std::vector<double> out;
    for (const auto& f : candidate_fractions(family)) out.push_back(f.value());
    return out;
}

std::optional<Partition> unravel_at(const OverlappingFamily& family, double delta) {
    if (!(delta >= 0.0 && delta <= 1.0)) throw DimensionMismatch("delta must lie in [0, 1]");
    std::vector<std::size_t> blocks;
    for (const auto& s : family.sets()) {
        // Guard against 1 − δ landing a hair above an integer multiple.
        const double exact = (1.0 - delta) * static_cast<double>(s.size());
        const double nearest = std::round(exact);
        const double size = std::abs(exact - nearest) <= 1e-9 * std::max(1.0, exact) ? nearest : std::ceil(exact);
        blocks.push_back(static_cast<std::size_t>(size));
    }
    return unravel_with_blocks(family, blocks);
}

UnravelResult unravel(const OverlappingFamily& family) {
    if (family.k() == 0) return {Partition(family.n(), {}), 0.0};
    const auto grid = candidate_fractions(family);
    // Feasibility is monotone in δ: larger δ only shrinks blocks.
    std::size_t lo = 0;
    std::size_t hi = grid.size() - 1;
    auto best = unravel_at_fraction(family, grid[hi]);
    if (!best) throw Infeasible("no matching covers unit blocks: some sets cannot receive distinct nodes");
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (auto p = unravel_at_fraction(family, grid[mid])) {
            best = std::move(p);
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return {std::move(*best), grid[lo].value()};
}

} // namespace subspace_round
