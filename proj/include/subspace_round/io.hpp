#pragma once

#include "subspace_round/graph.hpp"
#include "subspace_round/linalg.hpp"
#include "subspace_round/partitions.hpp"
#include "subspace_round/report.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>

namespace subspace_round {

using Json = nlohmann::ordered_json;

/// Edge list: optional `n <int>` header, then `u v w` per line, `#` starts a
/// comment. Without a header n is one more than the largest id. Parse errors
/// name the source and line.
WeightedGraph parse_edge_list(std::istream& in, const std::string& source = "<input>");
WeightedGraph read_edge_list(const std::string& path);
void write_edge_list(std::ostream& out, const WeightedGraph& g);
void write_edge_list(const std::string& path, const WeightedGraph& g);

/// {"n": int, "sets": [[int, ...], ...]}
Json partition_to_json(const Partition& p);
Partition partition_from_json(const Json& j);
Partition read_partition(const std::string& path);
void write_partition(const std::string& path, const Partition& p);

/// {"k": int, "n": int, "rows": [[...], ...]}
Json embedding_to_json(const DenseMatrix& y);
DenseMatrix embedding_from_json(const Json& j);
DenseMatrix read_embedding(const std::string& path);
void write_embedding(const std::string& path, const DenseMatrix& y);

/// {"rows": [[...], ...]}
DenseMatrix read_matrix(const std::string& path);
void write_matrix(const std::string& path, const DenseMatrix& m);

Json report_to_json(const ClusteringReport& report, const Partition& partition);

Json read_json(const std::string& path);
void write_json(const std::string& path, const Json& j);

} // namespace subspace_round
