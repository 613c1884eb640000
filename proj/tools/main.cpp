#include "subspace_round/errors.hpp"
#include "subspace_round/graph.hpp"
#include "subspace_round/io.hpp"
#include "subspace_round/synth.hpp"
#include "subspace_round/verify/acceptance.hpp"
#include "subspace_round/verify/suites.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sr = subspace_round;
namespace verify = subspace_round::verify;

namespace {

constexpr int kOk = 0;
constexpr int kFailure = 1;
constexpr int kUsage = 2;

/// Raised for bad flag values; the message starts with the flag name.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> parts;
    std::string cur;
    std::istringstream in(s);
    while (std::getline(in, cur, sep)) parts.push_back(cur);
    if (!s.empty() && s.back() == sep) parts.emplace_back();
    return parts;
}

std::vector<std::size_t> parse_sizes(const std::string& flag, const std::string& text) {
    std::vector<std::size_t> out;
    for (const std::string& part : split(text, ',')) {
        std::size_t used = 0;
        unsigned long long v = 0;
        try {
            if (part.empty() || part.front() == '-' || part.front() == '+') throw std::invalid_argument(part);
            v = std::stoull(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != part.size() || used == 0 || v == 0)
            throw UsageError(flag + ": expected comma-separated positive integers, got '" + text + "'");
        out.push_back(static_cast<std::size_t>(v));
    }
    if (out.empty()) throw UsageError(flag + ": at least one cluster size is required");
    return out;
}

std::vector<double> parse_reals(const std::string& flag, const std::string& text) {
    std::vector<double> out;
    for (const std::string& part : split(text, ',')) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(part, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (part.empty() || used != part.size() || !(v > 0.0))
            throw UsageError(flag + ": expected comma-separated positive numbers, got '" + text + "'");
        out.push_back(v);
    }
    return out;
}

void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out) throw sr::IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out) throw sr::IoError("write to '" + path + "' failed");
}

std::string csv_field(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
    return q + "\"";
}

std::string number(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

// ---------------------------------------------------------------- generate

struct GenerateArgs {
    std::string kind;
    std::string sizes;
    std::size_t n = 0;
    double eps = 0.0;
    double cross = 0.0;
    std::uint64_t seed = 1;
    std::string out = "instance";
    std::string intra = "clique";
    std::size_t degree = 3;
    std::size_t cross_edges = 0;
};

int run_generate(const GenerateArgs& a) {
    const std::vector<std::size_t> sizes = parse_sizes("--sizes", a.sizes);
    std::size_t total = 0;
    for (std::size_t s : sizes) total += s;
    sr::Json stats;
    stats["kind"] = a.kind;
    stats["seed"] = a.seed;
    if (a.kind == "embedding") {
        const std::size_t n = a.n == 0 ? total : a.n;
        if (total > n)
            throw UsageError("--sizes: cluster sizes sum to " + std::to_string(total) + ", more than --n " +
                             std::to_string(n));
        if (!(a.eps >= 0.0 && a.eps < 1.0)) throw UsageError("--eps: must lie in [0, 1)");
        const sr::PlantedEmbedding pe = sr::planted_embedding(n, sizes, a.eps, a.seed);
        const std::string emb = a.out + ".embedding.json";
        const std::string part = a.out + ".partition.json";
        sr::write_embedding(emb, pe.embedding.matrix());
        sr::write_partition(part, pe.truth);
        stats["n"] = n;
        stats["k"] = sizes.size();
        stats["eps_target"] = a.eps;
        stats["eps_actual"] = pe.eps_actual;
        stats["noise_scale"] = pe.noise_scale;
        stats["files"] = {emb, part};
    } else {
        if (!(a.cross >= 0.0)) throw UsageError("--cross: must be non-negative");
        sr::IntraSpec spec;
        if (a.intra == "clique") {
            spec.kind = sr::IntraCluster::NormalizedClique;
        } else {
            spec.kind = sr::IntraCluster::RandomRegular;
            spec.degree = a.degree;
            if (a.degree < 1) throw UsageError("--degree: must be positive");
        }
        const sr::PlantedGraph pg = sr::planted_graph(sizes, spec, a.cross, a.seed, a.cross_edges);
        const std::string edges = a.out + ".graph.txt";
        const std::string part = a.out + ".partition.json";
        sr::write_edge_list(edges, pg.graph);
        sr::write_partition(part, pg.truth);
        stats["n"] = pg.graph.n();
        stats["k"] = sizes.size();
        stats["edges"] = pg.graph.edges().size();
        stats["cross_weight"] = a.cross;
        stats["phi_truth"] = sr::max_expansion(pg.graph, pg.truth);
        stats["files"] = {edges, part};
    }
    std::cout << stats.dump(2) << "\n";
    return kOk;
}

// ----------------------------------------------------------------- cluster

struct ClusterArgs {
    std::string input;
    std::string mode = "embedding";
    std::size_t k = 0;
    std::string truth;
    std::string out;
    std::uint64_t seed = 0;
    std::string format = "json";
};

int run_cluster(const ClusterArgs& a) {
    if (a.mode != "embedding" && a.k == 0) throw UsageError("--k: required for --mode " + a.mode);
    sr::ReportedPartition result = [&]() -> sr::ReportedPartition {
        if (a.mode == "graph") {
            const sr::WeightedGraph g = sr::read_edge_list(a.input);
            sr::GraphClustering gc = sr::cluster_graph(g, a.k, a.seed);
            return {std::move(gc.partition), std::move(gc.report)};
        }
        if (a.mode == "matrix") return sr::cluster_matrix(sr::read_matrix(a.input), a.k, a.seed);
        const sr::DenseMatrix y = sr::read_embedding(a.input);
        if (a.k != 0 && a.k != y.rows())
            throw UsageError("--k: " + std::to_string(a.k) + " does not match the embedding's " +
                             std::to_string(y.rows()) + " rows");
        return sr::cluster_embedding(sr::Embedding(y), a.seed);
    }();
    if (!a.truth.empty()) sr::attach_truth(result.report, result.partition, sr::read_partition(a.truth));

    if (a.format == "csv") {
        std::vector<long long> label(result.partition.n(), -1);
        for (std::size_t i = 0; i < result.partition.sets().size(); ++i)
            for (sr::Node u : result.partition.sets()[i]) label[u] = static_cast<long long>(i);
        std::string text = "node,cluster\n";
        for (std::size_t u = 0; u < label.size(); ++u) text += std::to_string(u) + "," + std::to_string(label[u]) + "\n";
        emit(a.out, text);
    } else {
        emit(a.out, sr::report_to_json(result.report, result.partition).dump(2) + "\n");
    }
    return kOk;
}

// ------------------------------------------------------------------ verify

struct VerifyArgs {
    std::string suite;
    std::uint64_t seed = 1;
    std::size_t trials = 0;
    std::string eps_sweep;
    std::string format = "json";
    std::string out;
};

sr::Json property_json(const verify::PropertyResult& p) {
    return {{"name", p.name},       {"trials", p.trials}, {"failures", p.failures},
            {"worst", p.worst},     {"passed", !p.failed()}, {"flag_only", p.flag_only},
            {"witness", p.witness}};
}

void report_failures(const std::vector<verify::PropertyResult>& props) {
    for (const auto& p : props)
        if (p.failures > 0)
            std::cerr << (p.flag_only ? "FLAG " : "FAIL ") << p.name << " (" << p.failures << "/" << p.trials
                      << "): " << p.witness << "\n";
}

int run_acceptance_suite(const VerifyArgs& a) {
    const auto criteria = verify::run_acceptance(a.seed);
    bool ok = true;
    sr::Json list = sr::Json::array();
    std::string csv = "criterion,title,passed,seconds,note\n";
    for (const auto& c : criteria) {
        ok = ok && c.passed;
        sr::Json props = sr::Json::array();
        for (const auto& p : c.properties) props.push_back(property_json(p));
        list.push_back({{"id", c.id}, {"title", c.title}, {"passed", c.passed}, {"seconds", c.seconds},
                        {"note", c.note}, {"properties", props}});
        csv += std::to_string(c.id) + "," + csv_field(c.title) + "," + (c.passed ? "true" : "false") + "," +
               number(c.seconds) + "," + csv_field(c.note) + "\n";
        report_failures(c.properties);
    }
    if (a.format == "csv")
        emit(a.out, csv);
    else
        emit(a.out, sr::Json{{"suite", "acceptance"}, {"seed", a.seed}, {"passed", ok}, {"criteria", list}}.dump(2) + "\n");
    return ok ? kOk : kFailure;
}

int run_verify(const VerifyArgs& a) {
    if (a.suite == "acceptance") return run_acceptance_suite(a);
    const auto& names = verify::suite_names();
    if (std::find(names.begin(), names.end(), a.suite) == names.end()) {
        std::string all;
        for (const auto& n : names) all += (all.empty() ? "" : ", ") + n;
        throw UsageError("suite: unknown suite '" + a.suite + "' (expected one of " + all + ", acceptance)");
    }
    verify::SuiteOptions o;
    o.seed = a.seed;
    o.trials = a.trials;
    if (!a.eps_sweep.empty()) o.eps_sweep = parse_reals("--eps-sweep", a.eps_sweep);
    const verify::SuiteReport r = verify::run_suite(a.suite, o);
    report_failures(r.properties);

    if (a.format == "csv") {
        std::string text;
        if (!r.sweep.columns.empty()) {
            for (std::size_t i = 0; i < r.sweep.columns.size(); ++i) text += (i ? "," : "") + r.sweep.columns[i];
            text += "\n";
            for (const auto& row : r.sweep.rows) {
                for (std::size_t i = 0; i < row.size(); ++i) text += (i ? "," : "") + number(row[i]);
                text += "\n";
            }
        } else {
            text = "property,trials,failures,worst,passed,flag_only,witness\n";
            for (const auto& p : r.properties)
                text += csv_field(p.name) + "," + std::to_string(p.trials) + "," + std::to_string(p.failures) + "," +
                        number(p.worst) + "," + (p.failed() ? "false" : "true") + "," +
                        (p.flag_only ? "true" : "false") + "," + csv_field(p.witness) + "\n";
        }
        emit(a.out, text);
    } else {
        sr::Json props = sr::Json::array();
        for (const auto& p : r.properties) props.push_back(property_json(p));
        sr::Json j{{"suite", r.suite}, {"seed", a.seed}, {"passed", r.passed()}, {"properties", props}};
        if (!r.sweep.columns.empty()) j["sweep"] = {{"columns", r.sweep.columns}, {"rows", r.sweep.rows}};
        emit(a.out, j.dump(2) + "\n");
    }
    return r.passed() ? kOk : kFailure;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Spectral clustering by subspace rounding: instance generation, clustering and property suites"};
    app.require_subcommand(1);
    const std::vector<std::string> formats{"json", "csv"};

    GenerateArgs gen;
    CLI::App* g = app.add_subcommand("generate", "write a planted instance and its ground-truth partition");
    g->add_option("kind", gen.kind, "embedding or graph")->required()->check(CLI::IsMember({"embedding", "graph"}));
    g->add_option("--sizes", gen.sizes, "comma-separated cluster sizes")->required();
    g->add_option("--n", gen.n, "number of nodes for embeddings (default: sum of sizes)");
    g->add_option("--eps", gen.eps, "target residual for embeddings");
    g->add_option("--cross", gen.cross, "total cross-cluster weight for graphs");
    g->add_option("--cross-edges", gen.cross_edges, "number of cross edges (default: one per node)");
    g->add_option("--intra", gen.intra, "cluster graphs: clique or regular")->check(CLI::IsMember({"clique", "regular"}));
    g->add_option("--degree", gen.degree, "degree for --intra regular");
    g->add_option("--seed", gen.seed, "generator seed");
    g->add_option("--out", gen.out, "output prefix");

    ClusterArgs cl;
    CLI::App* c = app.add_subcommand("cluster", "cluster an embedding, graph or symmetric matrix");
    c->add_option("input", cl.input, "input file")->required();
    c->add_option("--mode", cl.mode, "embedding, graph or matrix")->check(CLI::IsMember({"embedding", "graph", "matrix"}));
    c->add_option("--k", cl.k, "number of clusters (graph and matrix modes)");
    c->add_option("--truth", cl.truth, "ground-truth partition JSON");
    c->add_option("--out", cl.out, "report path (default: stdout)");
    c->add_option("--seed", cl.seed, "seed recorded in the report");
    c->add_option("--format", cl.format, "json report or csv node assignment")->check(CLI::IsMember(formats));

    VerifyArgs ve;
    CLI::App* v = app.add_subcommand("verify", "run a property suite");
    v->add_option("suite", ve.suite, "linalg, similarity, round, unravel, pipeline, graph or acceptance")->required();
    v->add_option("--seed", ve.seed, "suite seed");
    v->add_option("--trials", ve.trials, "trials per property (default: per property)");
    v->add_option("--eps-sweep", ve.eps_sweep, "comma-separated eps targets for the pipeline sweep");
    v->add_option("--format", ve.format, "json summary or csv table")->check(CLI::IsMember(formats));
    v->add_option("--out", ve.out, "summary path (default: stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*g) return run_generate(gen);
        if (*c) return run_cluster(cl);
        return run_verify(ve);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const sr::IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const sr::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const sr::SizesExceedN& e) {
        std::cerr << "error: --sizes: " << e.what() << "\n";
        return kUsage;
    } catch (const sr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kFailure;
    }
}
