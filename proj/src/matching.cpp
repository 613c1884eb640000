#include "subspace_round/matching.hpp"

#include "subspace_round/errors.hpp"

#include <algorithm>

namespace subspace_round {

namespace {

struct Augmenter {
    const CapacitatedBipartiteGraph& g;
    CapacitatedMatching& m;
    std::vector<std::vector<std::size_t>> assigned;
    std::vector<char> visited;

    void assign(std::size_t u, std::size_t j) {
        if (m.right_of[u] != kUnmatched) {
            auto& list = assigned[m.right_of[u]];
            list.erase(std::find(list.begin(), list.end(), u));
            --m.load[m.right_of[u]];
        } else {
            ++m.size;
        }
        m.right_of[u] = j;
        assigned[j].push_back(u);
        ++m.load[j];
    }

    bool augment(std::size_t u) {
        for (std::size_t j : g.adjacent[u]) {
            if (visited[j]) continue;
            visited[j] = 1;
            if (m.load[j] < g.capacity[j]) {
                assign(u, j);
                return true;
            }
            const std::vector<std::size_t> holders = assigned[j];
            for (std::size_t w : holders) {
                if (w != u && augment(w)) {
                    assign(u, j);
                    return true;
                }
            }
        }
        return false;
    }
};

} // namespace

bool CapacitatedMatching::saturates_right(const CapacitatedBipartiteGraph& g) const {
    for (std::size_t j = 0; j < g.capacity.size(); ++j)
        if (load[j] < g.capacity[j]) return false;
    return true;
}

CapacitatedMatching maximum_matching(const CapacitatedBipartiteGraph& g) {
    if (g.adjacent.size() != g.left_count) throw DimensionMismatch("adjacency list count differs from left size");
    const std::size_t right = g.capacity.size();
    for (const auto& adj : g.adjacent)
        for (std::size_t j : adj)
            if (j >= right) throw NodeOutOfRange("right vertex " + std::to_string(j) + " out of range");

    CapacitatedMatching m;
    m.right_of.assign(g.left_count, kUnmatched);
    m.load.assign(right, 0);
    std::size_t total = 0;
    for (std::size_t c : g.capacity) total += c;

    Augmenter aug{g, m, std::vector<std::vector<std::size_t>>(right), std::vector<char>(right)};
    for (std::size_t u = 0; u < g.left_count && m.size < total; ++u) {
        std::fill(aug.visited.begin(), aug.visited.end(), 0);
        aug.augment(u);
    }
    return m;
}

} // namespace subspace_round
