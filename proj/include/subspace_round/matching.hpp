#pragma once

#include <cstddef>
#include <limits>
#include <vector>

namespace subspace_round {

inline constexpr std::size_t kUnmatched = std::numeric_limits<std::size_t>::max();

/// Bipartite graph whose right vertices carry integer capacities.
/// Each left vertex may be matched at most once.
struct CapacitatedBipartiteGraph {
    std::size_t left_count = 0;
    std::vector<std::size_t> capacity;            // per right vertex
    std::vector<std::vector<std::size_t>> adjacent; // left -> right vertices
};

struct CapacitatedMatching {
    std::vector<std::size_t> right_of;  // per left vertex, kUnmatched when free
    std::vector<std::size_t> load;      // per right vertex
    std::size_t size = 0;

    bool saturates_right(const CapacitatedBipartiteGraph& g) const;
};

/// Maximum matching by augmenting paths. Left vertices are tried in
/// ascending order and adjacency lists in their given order, so the result
/// is deterministic.
CapacitatedMatching maximum_matching(const CapacitatedBipartiteGraph& g);

} // namespace subspace_round
