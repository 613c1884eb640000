#pragma once

#include "subspace_round/partitions.hpp"

#include <span>

namespace subspace_round {

struct RoundResult {
    NodeSet set;
    double score = 0.0; // |⟨q, 1_S⟩| / √|S|
    int sign = 1;       // +1 for an upper threshold set, -1 for a lower one
};

/// Best threshold set {u : s·q_u ≥ s·q_v} over v and s = ±1, scored by
/// |⟨q, 1_S/√|S|⟩|. Ties go to the smaller set, then the lexicographically
/// smaller one. Throws ZeroVector.
RoundResult round_vector_detailed(std::span<const double> q);

inline NodeSet round_vector(std::span<const double> q) { return round_vector_detailed(q).set; }

} // namespace subspace_round
