#pragma once

#include "subspace_round/verify/oracles.hpp"
#include "subspace_round/verify/suites.hpp"

#include "subspace_round/partitions.hpp"

#include <cmath>
#include <cstddef>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

namespace subspace_round::verify::detail {

/// Accumulates trials of one property. A positive margin is a violation.
class Tracker {
public:
    explicit Tracker(std::string name, bool flag_only = false) {
        result_.name = std::move(name);
        result_.flag_only = flag_only;
        result_.worst = -std::numeric_limits<double>::infinity();
    }

    template <class Describe>
    void record(double margin, Describe&& describe) {
        ++result_.trials;
        if (std::isnan(margin)) margin = std::numeric_limits<double>::infinity();
        if (margin > 0.0) ++result_.failures;
        if (margin > result_.worst) {
            result_.worst = margin;
            result_.witness = describe();
        }
    }
    void record(double margin) {
        record(margin, [] { return std::string(); });
    }

    PropertyResult finish() {
        if (result_.trials == 0) result_.worst = 0.0;
        return result_;
    }

private:
    PropertyResult result_;
};

inline std::size_t trials_or(const SuiteOptions& o, std::size_t fallback) {
    return o.trials == 0 ? fallback : o.trials;
}

inline std::string describe_sets(const std::vector<NodeSet>& sets) {
    std::string out = "[";
    for (std::size_t i = 0; i < sets.size(); ++i) out += (i ? ", " : "") + sets[i].to_string();
    return out + "]";
}

template <class... Parts>
std::string cat(const Parts&... parts) {
    std::ostringstream os;
    os.precision(6);
    (os << ... << parts);
    return os.str();
}

/// Rows of `m` orthonormalized by two passes of classical Gram-Schmidt.
DenseMatrix gram_schmidt_rows(DenseMatrix m);

/// basis_matrixᵀ of `sets` plus ν times Gaussian noise, row-orthonormalized.
DenseMatrix noisy_embedding(const std::vector<NodeSet>& sets, std::size_t n, double nu, Rng& rng);

// Individual properties, shared by the suites and the acceptance runner.
PropertyResult prop_oracle_agreement(Rng& rng, std::size_t trials);
PropertyResult prop_sandwich_equality(Rng& rng, std::size_t trials);
PropertyResult prop_round_guarantee(Rng& rng, std::size_t max_n, std::size_t q_per_n);
PropertyResult prop_set_similarity(Rng& rng, std::size_t trials, double max_delta, std::vector<PropertyResult>* extra);
PropertyResult prop_unravel_planted(Rng& rng, std::size_t trials, const std::vector<double>& deltas);
PropertyResult prop_unravel_figure();
PropertyResult prop_exact_recovery(Rng& rng, std::size_t trials);

struct EpsSweep {
    std::vector<PropertyResult> properties;
    SweepTable table;
};
EpsSweep eps_sweep(std::uint64_t seed, const std::vector<double>& eps, std::size_t seeds_per_eps);

struct GraphSweep {
    std::vector<PropertyResult> properties;
    SweepTable table;
};
GraphSweep graph_sweep(std::uint64_t seed, const std::vector<double>& ratios);

PropertyResult prop_matrix_approximation(Rng& rng, std::size_t trials, const std::vector<double>& eps);
PropertyResult prop_clique_approximation(Rng& rng, std::size_t trials, const std::vector<double>& eps);
std::vector<PropertyResult> reduction_fixtures();

} // namespace subspace_round::verify::detail
