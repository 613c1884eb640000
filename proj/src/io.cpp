#include "subspace_round/io.hpp"

#include "subspace_round/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <fstream>
#include <sstream>

namespace subspace_round {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void parse_fail(const std::string& source, std::size_t line, const std::string& what) {
    throw ParseError(source + ":" + std::to_string(line) + ": " + what);
}

bool read_index(std::istringstream& in, std::size_t& out) {
    long long v = 0;
    if (!(in >> v) || v < 0) return false;
    out = static_cast<std::size_t>(v);
    return true;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "' for reading");
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    return out;
}

Json rows_json(const DenseMatrix& m) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(std::vector<double>(m.row(i).begin(), m.row(i).end()));
    return rows;
}

DenseMatrix rows_from_json(const Json& j, const char* what) {
    if (!j.is_array()) throw ParseError(std::string(what) + ": \"rows\" must be an array");
    std::vector<std::vector<double>> rows;
    for (const auto& r : j) {
        if (!r.is_array()) throw ParseError(std::string(what) + ": each row must be an array");
        std::vector<double> row;
        for (const auto& x : r) {
            if (!x.is_number()) throw ParseError(std::string(what) + ": entries must be numbers");
            row.push_back(x.get<double>());
        }
        rows.push_back(std::move(row));
    }
    return DenseMatrix::from_rows(rows);
}

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

} // namespace

WeightedGraph parse_edge_list(std::istream& in, const std::string& source) {
    std::optional<std::size_t> n;
    std::vector<Edge> edges;
    std::vector<std::size_t> edge_lines;
    std::size_t max_id = 0;
    std::string raw;
    std::size_t line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const auto hash = raw.find('#');
        const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (text.empty()) continue;
        std::istringstream fields(text);
        if (text[0] == 'n') {
            std::string keyword;
            fields >> keyword;
            std::size_t value = 0;
            if (keyword != "n" || !read_index(fields, value)) parse_fail(source, line, "expected header 'n <int>'");
            if (n) parse_fail(source, line, "repeated 'n' header");
            if (!edges.empty()) parse_fail(source, line, "'n' header must precede the edges");
            n = value;
        } else {
            Edge e;
            if (!read_index(fields, e.u) || !read_index(fields, e.v))
                parse_fail(source, line, "expected 'u v w' with non-negative integer node ids");
            if (!(fields >> e.w)) parse_fail(source, line, "missing or malformed weight");
            std::string extra;
            if (fields >> extra) parse_fail(source, line, "unexpected trailing token '" + extra + "'");
            if (!std::isfinite(e.w) || e.w <= 0.0) parse_fail(source, line, "weight must be positive and finite");
            if (e.u == e.v) parse_fail(source, line, "self loop at node " + std::to_string(e.u));
            max_id = std::max({max_id, e.u, e.v});
            edges.push_back(e);
            edge_lines.push_back(line);
        }
    }
    if (!n) {
        if (edges.empty()) parse_fail(source, line, "no edges and no 'n' header");
        n = max_id + 1;
    }
    for (std::size_t i = 0; i < edges.size(); ++i)
        if (edges[i].u >= *n || edges[i].v >= *n)
            parse_fail(source, edge_lines[i], "node id exceeds n = " + std::to_string(*n));
    try {
        return WeightedGraph(*n, std::move(edges));
    } catch (InvalidGraph& e) {
        e.add_context(source);
        throw;
    }
}

WeightedGraph read_edge_list(const std::string& path) {
    auto in = open_in(path);
    return parse_edge_list(in, path);
}

void write_edge_list(std::ostream& out, const WeightedGraph& g) {
    out << "n " << g.n() << "\n";
    for (const auto& e : g.edges()) out << e.u << " " << e.v << " " << format_double(e.w) << "\n";
}

void write_edge_list(const std::string& path, const WeightedGraph& g) {
    auto out = open_out(path);
    write_edge_list(out, g);
    if (!out) throw IoError("failed writing '" + path + "'");
}

Json partition_to_json(const Partition& p) {
    Json sets = Json::array();
    for (const auto& s : p.sets()) sets.push_back(std::vector<std::size_t>(s.begin(), s.end()));
    return Json{{"n", p.n()}, {"sets", sets}};
}

Partition partition_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("n") || !j.contains("sets"))
        throw ParseError("partition JSON needs \"n\" and \"sets\"");
    if (!j["n"].is_number_unsigned()) throw ParseError("partition \"n\" must be a non-negative integer");
    std::vector<NodeSet> sets;
    for (const auto& s : j["sets"]) {
        std::vector<Node> members;
        for (const auto& u : s) {
            if (!u.is_number_unsigned()) throw ParseError("partition members must be non-negative integers");
            members.push_back(u.get<Node>());
        }
        sets.emplace_back(std::move(members));
    }
    return {j["n"].get<std::size_t>(), std::move(sets)};
}

Partition read_partition(const std::string& path) {
    try {
        return partition_from_json(read_json(path));
    } catch (ParseError& e) {
        e.add_context(path);
        throw;
    }
}

void write_partition(const std::string& path, const Partition& p) { write_json(path, partition_to_json(p)); }

Json embedding_to_json(const DenseMatrix& y) { return Json{{"k", y.rows()}, {"n", y.cols()}, {"rows", rows_json(y)}}; }

DenseMatrix embedding_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("rows")) throw ParseError("embedding JSON needs \"rows\"");
    DenseMatrix y = rows_from_json(j["rows"], "embedding");
    if (j.contains("k") && j["k"].get<std::size_t>() != y.rows())
        throw ParseError("embedding \"k\" disagrees with the number of rows");
    if (j.contains("n") && j["n"].get<std::size_t>() != y.cols())
        throw ParseError("embedding \"n\" disagrees with the row length");
    return y;
}

DenseMatrix read_embedding(const std::string& path) {
    try {
        return embedding_from_json(read_json(path));
    } catch (ParseError& e) {
        e.add_context(path);
        throw;
    }
}

void write_embedding(const std::string& path, const DenseMatrix& y) { write_json(path, embedding_to_json(y)); }

DenseMatrix read_matrix(const std::string& path) {
    const Json j = read_json(path);
    try {
        if (!j.is_object() || !j.contains("rows")) throw ParseError("matrix JSON needs \"rows\"");
        return rows_from_json(j["rows"], "matrix");
    } catch (ParseError& e) {
        e.add_context(path);
        throw;
    }
}

void write_matrix(const std::string& path, const DenseMatrix& m) { write_json(path, Json{{"rows", rows_json(m)}}); }

Json report_to_json(const ClusteringReport& r, const Partition& partition) {
    Json j;
    j["k"] = r.k;
    j["n"] = r.n;
    j["delta_to_truth"] = r.delta_to_truth ? Json(*r.delta_to_truth) : Json(nullptr);
    j["residual"] = r.residual;
    j["per_cluster_expansion"] = r.per_cluster_expansion ? Json(*r.per_cluster_expansion) : Json(nullptr);
    j["lambda_k1"] = r.lambda_k1 ? Json(*r.lambda_k1) : Json(nullptr);
    j["runtime_ms"] = r.runtime_ms;
    j["seed"] = r.seed;
    j["algorithm_parameters"] = r.algorithm_parameters;
    j["partition"] = partition_to_json(partition);
    return j;
}

Json read_json(const std::string& path) {
    auto in = open_in(path);
    try {
        return Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
}

void write_json(const std::string& path, const Json& j) {
    auto out = open_out(path);
    out << j.dump(2) << "\n";
    if (!out) throw IoError("failed writing '" + path + "'");
}

} // namespace subspace_round
