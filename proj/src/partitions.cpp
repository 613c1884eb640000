#include "subspace_round/partitions.hpp"

#include "subspace_round/errors.hpp"
#include "subspace_round/matching.hpp"

#include <algorithm>
#include <cmath>
#include <iterator>
#include <numeric>

namespace subspace_round {

NodeSet::NodeSet(std::vector<Node> members) : members_(std::move(members)) {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
}

NodeSet::NodeSet(std::initializer_list<Node> members) : NodeSet(std::vector<Node>(members)) {}

NodeSet NodeSet::range(Node begin, Node end) {
    std::vector<Node> m;
    for (Node u = begin; u < end; ++u) m.push_back(u);
    return NodeSet(std::move(m));
}

bool NodeSet::contains(Node u) const { return std::binary_search(members_.begin(), members_.end(), u); }

Vector NodeSet::indicator(std::size_t n) const {
    Vector v(n, 0.0);
    for (Node u : members_) {
        if (u >= n) throw NodeOutOfRange("node " + std::to_string(u) + " outside [0, " + std::to_string(n) + ")");
        v[u] = 1.0;
    }
    return v;
}

std::string NodeSet::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(members_[i]);
    }
    return s + "}";
}

std::size_t intersection_size(const NodeSet& a, const NodeSet& b) {
    std::size_t count = 0;
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() && j != b.end()) {
        if (*i < *j) {
            ++i;
        } else if (*j < *i) {
            ++j;
        } else {
            ++count;
            ++i;
            ++j;
        }
    }
    return count;
}

NodeSet set_union(const NodeSet& a, const NodeSet& b) {
    std::vector<Node> out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return NodeSet(std::move(out));
}

NodeSet set_intersection(const NodeSet& a, const NodeSet& b) {
    std::vector<Node> out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return NodeSet(std::move(out));
}

NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
    std::vector<Node> out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return NodeSet(std::move(out));
}

OverlappingFamily::OverlappingFamily(std::size_t n, std::vector<NodeSet> sets) : n_(n), sets_(std::move(sets)) {
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        if (sets_[i].empty()) throw EmptySet("set " + std::to_string(i) + " is empty");
        if (sets_[i].max() >= n_)
            throw NodeOutOfRange("set " + std::to_string(i) + " contains node " + std::to_string(sets_[i].max()) +
                                 " >= n = " + std::to_string(n_));
    }
}

Partition::Partition(std::size_t n, std::vector<NodeSet> sets) : n_(n), sets_(std::move(sets)) {
    std::vector<std::size_t> owner(n_, kUnassigned);
    for (std::size_t i = 0; i < sets_.size(); ++i) {
        if (sets_[i].empty()) throw EmptySet("set " + std::to_string(i) + " is empty");
        for (Node u : sets_[i]) {
            if (u >= n_)
                throw NodeOutOfRange("set " + std::to_string(i) + " contains node " + std::to_string(u) +
                                     " >= n = " + std::to_string(n_));
            if (owner[u] != kUnassigned)
                throw OverlapDetected("node " + std::to_string(u) + " is in sets " + std::to_string(owner[u]) +
                                      " and " + std::to_string(i));
            owner[u] = i;
        }
    }
}

Partition Partition::from_labels(std::span<const std::size_t> labels, std::size_t k) {
    std::vector<std::vector<Node>> members(k);
    for (Node u = 0; u < labels.size(); ++u) {
        if (labels[u] == kUnassigned) continue;
        if (labels[u] >= k)
            throw NodeOutOfRange("label " + std::to_string(labels[u]) + " of node " + std::to_string(u) +
                                 " is not below k = " + std::to_string(k));
        members[labels[u]].push_back(u);
    }
    std::vector<NodeSet> sets;
    for (auto& m : members) sets.emplace_back(std::move(m));
    return {labels.size(), std::move(sets)};
}

std::vector<std::size_t> Partition::labels() const {
    std::vector<std::size_t> out(n_, kUnassigned);
    for (std::size_t i = 0; i < sets_.size(); ++i)
        for (Node u : sets_[i]) out[u] = i;
    return out;
}

std::size_t Partition::covered_count() const {
    std::size_t c = 0;
    for (const auto& s : sets_) c += s.size();
    return c;
}

DenseMatrix basis_matrix(const Partition& p) {
    if (p.k() == 0) throw EmptySet("basis matrix of a partition with no sets");
    DenseMatrix b(p.n(), p.k());
    for (std::size_t i = 0; i < p.k(); ++i) {
        const double w = 1.0 / std::sqrt(static_cast<double>(p[i].size()));
        for (Node u : p[i]) b(u, i) = w;
    }
    return b;
}

double delta_vectors(std::span<const double> p, std::span<const double> q) {
    const Vector a = unit(p);
    const Vector b = unit(q);
    const double c = dot(a, b);
    return std::clamp(1.0 - c * c, 0.0, 1.0);
}

double delta_sets(const NodeSet& a, const NodeSet& b) {
    if (a.empty() || b.empty()) throw EmptySet("similarity of an empty set");
    const auto i = static_cast<double>(intersection_size(a, b));
    return 1.0 - (i * i) / (static_cast<double>(a.size()) * static_cast<double>(b.size()));
}

double jaccard_symmetric_difference(const NodeSet& a, const NodeSet& b) {
    const std::size_t i = intersection_size(a, b);
    const std::size_t u = a.size() + b.size() - i;
    if (u == 0) throw EmptyUnion("union of two empty sets");
    return static_cast<double>(u - i) / static_cast<double>(u);
}

namespace {

bool has_perfect_matching(const std::vector<std::vector<char>>& allowed, const std::vector<char>& row_fixed,
                          const std::vector<char>& col_fixed) {
    const std::size_t k = allowed.size();
    CapacitatedBipartiteGraph g;
    g.left_count = k;
    g.capacity.assign(k, 1);
    g.adjacent.resize(k);
    std::size_t free_rows = 0;
    for (std::size_t i = 0; i < k; ++i) {
        if (row_fixed[i]) {
            continue;
        }
        ++free_rows;
        for (std::size_t j = 0; j < k; ++j)
            if (!col_fixed[j] && allowed[i][j]) g.adjacent[i].push_back(j);
    }
    for (std::size_t j = 0; j < k; ++j)
        if (col_fixed[j]) g.capacity[j] = 0;
    return maximum_matching(g).size == free_rows;
}

} // namespace

PartitionMatch delta_partitions(std::span<const NodeSet> a, std::span<const NodeSet> b) {
    if (a.size() != b.size())
        throw SizeMismatch("families have " + std::to_string(a.size()) + " and " + std::to_string(b.size()) +
                           " sets");
    const std::size_t k = a.size();
    PartitionMatch out;
    if (k == 0) return out;

    std::vector<std::vector<double>> d(k, std::vector<double>(k));
    std::vector<double> values;
    values.reserve(k * k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            d[i][j] = delta_sets(a[i], b[j]);
            values.push_back(d[i][j]);
        }
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());

    auto allowed_at = [&](double t) {
        std::vector<std::vector<char>> allowed(k, std::vector<char>(k));
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j) allowed[i][j] = d[i][j] <= t;
        return allowed;
    };
    const std::vector<char> none(k, 0);

    std::size_t lo = 0;
    std::size_t hi = values.size() - 1; // the largest value always admits every bijection
    while (lo < hi) {
        const std::size_t mid = lo + (hi - lo) / 2;
        if (has_perfect_matching(allowed_at(values[mid]), none, none))
            hi = mid;
        else
            lo = mid + 1;
    }
    out.value = values[lo];

    // Lexicographically smallest bijection among those meeting the bottleneck.
    const auto allowed = allowed_at(out.value);
    std::vector<char> row_fixed(k, 0);
    std::vector<char> col_fixed(k, 0);
    out.bijection.assign(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        row_fixed[i] = 1;
        for (std::size_t j = 0; j < k; ++j) {
            if (col_fixed[j] || !allowed[i][j]) continue;
            col_fixed[j] = 1;
            if (has_perfect_matching(allowed, row_fixed, col_fixed)) {
                out.bijection[i] = j;
                break;
            }
            col_fixed[j] = 0;
        }
    }
    return out;
}

PartitionMatch delta_partitions(const Partition& a, const Partition& b) {
    return delta_partitions(std::span<const NodeSet>(a.sets()), std::span<const NodeSet>(b.sets()));
}

PartitionMatch delta_partitions(const OverlappingFamily& a, const OverlappingFamily& b) {
    return delta_partitions(std::span<const NodeSet>(a.sets()), std::span<const NodeSet>(b.sets()));
}

std::vector<std::size_t> greedy_match(const Partition& a, const Partition& b) {
    if (a.k() != b.k())
        throw SizeMismatch("partitions have " + std::to_string(a.k()) + " and " + std::to_string(b.k()) + " sets");
    const std::size_t k = a.k();
    std::vector<std::vector<std::size_t>> overlap(k, std::vector<std::size_t>(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) overlap[i][j] = intersection_size(a[i], b[j]);

    // Fractions compared by cross-multiplication to stay exact.
    std::vector<std::size_t> pi1(k, 0);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 1; j < k; ++j)
            if (overlap[i][j] * b[pi1[i]].size() > overlap[i][pi1[i]] * b[j].size()) pi1[i] = j;
    std::vector<std::size_t> pi2(k, 0);
    for (std::size_t j = 0; j < k; ++j)
        for (std::size_t i = 1; i < k; ++i)
            if (overlap[i][j] * a[pi2[j]].size() > overlap[pi2[j]][j] * a[i].size()) pi2[j] = i;

    std::vector<char> hit(k, 0);
    for (std::size_t i = 0; i < k; ++i) {
        if (hit[pi1[i]]) throw NotBijective("two sets share the same best match " + std::to_string(pi1[i]));
        hit[pi1[i]] = 1;
    }
    for (std::size_t i = 0; i < k; ++i)
        if (pi2[pi1[i]] != i) throw NotBijective("best-match maps are not mutually inverse at set " + std::to_string(i));
    return pi1;
}

} // namespace subspace_round
