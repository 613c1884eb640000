#pragma once

#include "subspace_round/partitions.hpp"

#include <optional>
#include <vector>

namespace subspace_round {

/// A grid value δ = 1 − m/s kept as the exact fraction (s − m)/s.
struct DeltaFraction {
    std::size_t numerator = 0;
    std::size_t denominator = 1;

    double value() const { return static_cast<double>(numerator) / static_cast<double>(denominator); }
    /// ⌈(1 − δ)·size⌉ computed in integers.
    std::size_t block_size(std::size_t size) const;
};

struct UnravelResult {
    Partition partition;
    double delta = 0.0;
};

/// Every δ = 1 − m/|S| with S in the family and 1 ≤ m ≤ |S|, together with 0,
/// ascending and without duplicates.
std::vector<double> candidate_deltas(const OverlappingFamily& family);

/// Disjoint U_S ⊆ S with |U_S| = ⌈(1 − δ)|S|⌉ at the given δ, or nullopt when
/// no matching covers every block.
std::optional<Partition> unravel_at(const OverlappingFamily& family, double delta);

/// Smallest δ in candidate_deltas for which unravel_at succeeds.
/// Throws Infeasible when even blocks of size one cannot be covered.
UnravelResult unravel(const OverlappingFamily& family);

} // namespace subspace_round
