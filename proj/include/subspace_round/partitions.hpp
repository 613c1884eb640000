#pragma once

#include "subspace_round/linalg.hpp"

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace subspace_round {

using Node = std::size_t;

/// Sorted set of node ids without duplicates.
class NodeSet {
public:
    NodeSet() = default;
    explicit NodeSet(std::vector<Node> members);
    NodeSet(std::initializer_list<Node> members);

    /// {begin, ..., end - 1}
    static NodeSet range(Node begin, Node end);

    std::size_t size() const noexcept { return members_.size(); }
    bool empty() const noexcept { return members_.empty(); }
    bool contains(Node u) const;
    std::span<const Node> members() const noexcept { return members_; }
    auto begin() const noexcept { return members_.begin(); }
    auto end() const noexcept { return members_.end(); }
    Node max() const { return members_.back(); }

    /// Indicator vector of length n (1 on members).
    Vector indicator(std::size_t n) const;

    std::string to_string() const;

    friend bool operator==(const NodeSet&, const NodeSet&) = default;
    friend auto operator<=>(const NodeSet&, const NodeSet&) = default;

private:
    std::vector<Node> members_;
};

std::size_t intersection_size(const NodeSet& a, const NodeSet& b);
NodeSet set_union(const NodeSet& a, const NodeSet& b);
NodeSet set_intersection(const NodeSet& a, const NodeSet& b);
NodeSet set_difference(const NodeSet& a, const NodeSet& b);

/// k non-empty subsets of {0..n-1}; overlaps allowed.
class OverlappingFamily {
public:
    OverlappingFamily(std::size_t n, std::vector<NodeSet> sets);

    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return sets_.size(); }
    const std::vector<NodeSet>& sets() const noexcept { return sets_; }
    const NodeSet& operator[](std::size_t i) const { return sets_[i]; }

private:
    std::size_t n_;
    std::vector<NodeSet> sets_;
};

/// k pairwise disjoint non-empty subsets of {0..n-1}. Nodes may be left
/// uncovered.
class Partition {
public:
    Partition(std::size_t n, std::vector<NodeSet> sets);
    /// From a label per node; labels must be dense 0..k-1, kUnassigned skips.
    static Partition from_labels(std::span<const std::size_t> labels, std::size_t k);

    static constexpr std::size_t kUnassigned = static_cast<std::size_t>(-1);

    std::size_t n() const noexcept { return n_; }
    std::size_t k() const noexcept { return sets_.size(); }
    const std::vector<NodeSet>& sets() const noexcept { return sets_; }
    const NodeSet& operator[](std::size_t i) const { return sets_[i]; }

    /// Cluster index per node, or kUnassigned.
    std::vector<std::size_t> labels() const;
    std::size_t covered_count() const;
    bool covers_all() const { return covered_count() == n_; }

    OverlappingFamily as_family() const { return {n_, sets_}; }

    friend bool operator==(const Partition&, const Partition&) = default;

private:
    std::size_t n_;
    std::vector<NodeSet> sets_;
};

/// n x k matrix whose i-th column is the normalized indicator of the i-th set.
DenseMatrix basis_matrix(const Partition& p);

/// 1 - <p̂, q̂>². Throws ZeroVector.
double delta_vectors(std::span<const double> p, std::span<const double> q);

/// 1 - |A∩B|² / (|A||B|). Throws EmptySet.
double delta_sets(const NodeSet& a, const NodeSet& b);

/// |AΔB| / |A∪B|. Throws EmptyUnion.
double jaccard_symmetric_difference(const NodeSet& a, const NodeSet& b);

struct PartitionMatch {
    double value = 0.0;
    /// bijection[i] is the index in the second family matched to set i of the first.
    std::vector<std::size_t> bijection;
};

/// min over bijections π of max_i Δ(A_i, B_π(i)), by bottleneck assignment.
/// Among optimal bijections, the lexicographically smallest is returned.
/// Throws SizeMismatch when the families have different sizes.
PartitionMatch delta_partitions(std::span<const NodeSet> a, std::span<const NodeSet> b);
PartitionMatch delta_partitions(const Partition& a, const Partition& b);
PartitionMatch delta_partitions(const OverlappingFamily& a, const OverlappingFamily& b);

/// π₁(S) = argmax_T |S∩T|/|T|, checked to be a bijection inverse to
/// π₂(T) = argmax_S |S∩T|/|S|. Ties go to the smaller index.
/// Throws NotBijective when either check fails, SizeMismatch on unequal k.
std::vector<std::size_t> greedy_match(const Partition& a, const Partition& b);

} // namespace subspace_round
