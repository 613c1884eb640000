#include "subspace_round/rounding.hpp"

#include "subspace_round/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace subspace_round {

namespace {

constexpr double kScoreTieTolerance = 1e-12;

struct Candidate {
    std::vector<Node> members;
    double score;
    int sign;
};

bool better(const Candidate& c, const std::optional<Candidate>& best) {
    if (!best) return true;
    const double scale = std::max(std::abs(c.score), std::abs(best->score));
    if (c.score > best->score + kScoreTieTolerance * scale) return true;
    if (c.score < best->score - kScoreTieTolerance * scale) return false;
    if (c.members.size() != best->members.size()) return c.members.size() < best->members.size();
    return c.members < best->members;
}

} // namespace

RoundResult round_vector_detailed(std::span<const double> q) {
    const std::size_t n = q.size();
    if (n == 0 || norm2(q) == 0.0) throw ZeroVector("cannot round a zero vector");
    for (double x : q)
        if (!std::isfinite(x)) throw NonFinite("cannot round a vector with non-finite entries");

    std::vector<Node> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Node a, Node b) { return q[a] > q[b]; });

    std::optional<Candidate> best;
    auto consider = [&](std::vector<Node> members, double sum, int sign) {
        const double score = std::abs(sum) / std::sqrt(static_cast<double>(members.size()));
        std::sort(members.begin(), members.end());
        Candidate c{std::move(members), score, sign};
        if (better(c, best)) best = std::move(c);
    };

    // s = +1: prefixes of the descending order, closed under equal values.
    {
        double sum = 0.0;
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j < n && q[order[j]] == q[order[i]]) sum += q[order[j++]];
            consider(std::vector<Node>(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(j)), sum, 1);
            i = j;
        }
    }
    // s = -1: prefixes of the ascending order.
    {
        double sum = 0.0;
        std::size_t i = n;
        while (i > 0) {
            std::size_t j = i;
            while (j > 0 && q[order[j - 1]] == q[order[i - 1]]) sum += q[order[--j]];
            consider(std::vector<Node>(order.begin() + static_cast<std::ptrdiff_t>(j), order.end()), sum, -1);
            i = j;
        }
    }
    return {NodeSet(std::move(best->members)), best->score, best->sign};
}

} // namespace subspace_round
