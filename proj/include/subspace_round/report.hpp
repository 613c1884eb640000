#pragma once

#include "subspace_round/partitions.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace subspace_round {

struct ClusteringReport {
    std::size_t k = 0;
    std::size_t n = 0;
    std::optional<double> delta_to_truth;
    double residual = 0.0;
    std::optional<std::vector<double>> per_cluster_expansion;
    std::optional<double> lambda_k1;
    double runtime_ms = 0.0;
    std::uint64_t seed = 0;
    std::map<std::string, std::string> algorithm_parameters;
};

/// Fills delta_to_truth from the bottleneck similarity to `truth`.
void attach_truth(ClusteringReport& report, const Partition& found, const Partition& truth);

} // namespace subspace_round
