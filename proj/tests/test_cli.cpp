#include "subspace_round/graph.hpp"
#include "subspace_round/io.hpp"

#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace subspace_round;
namespace fs = std::filesystem;

namespace {

struct CliRun {
    int code = -1;
    std::string out;
    std::string err;
};

fs::path workdir() {
    const fs::path dir = fs::temp_directory_path() / "subspace_round_cli_tests";
    fs::create_directories(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

CliRun cli(const std::string& args) {
    const fs::path dir = workdir();
    const std::string name = ::testing::UnitTest::GetInstance()->current_test_info()->name();
    const fs::path out = dir / (name + ".stdout"), err = dir / (name + ".stderr");
    const std::string cmd = "cd '" + dir.string() + "' && '" SUBSPACE_ROUND_CLI "' " + args + " >'" + out.string() +
                            "' 2>'" + err.string() + "'";
    const int status = std::system(cmd.c_str());
    CliRun r;
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    r.out = slurp(out);
    r.err = slurp(err);
    return r;
}

Json without_runtime(Json j) {
    j.erase("runtime_ms");
    return j;
}

} // namespace

TEST(Cli, GenerateGraphWritesEdgeListAndPartition) {
    const CliRun r = cli("generate graph --sizes 40,20,10,2 --cross 0.5 --seed 7 --out gen7");
    ASSERT_EQ(r.code, 0) << r.err;
    const Partition p = read_partition((workdir() / "gen7.partition.json").string());
    EXPECT_EQ(p.k(), 4u);
    EXPECT_EQ(p.n(), 72u);
    const WeightedGraph g = read_edge_list((workdir() / "gen7.graph.txt").string());
    EXPECT_EQ(g.n(), 72u);
    EXPECT_NEAR(Json::parse(r.out)["phi_truth"].get<double>(), max_expansion(g, p), 1e-15);
}

TEST(Cli, GenerateExactRankOneEmbedding) {
    const CliRun r = cli("generate embedding --sizes 3 --eps 0 --n 3 --out rank1");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(Json::parse(r.out)["eps_actual"].get<double>(), 0.0);
    const DenseMatrix y = read_embedding((workdir() / "rank1.embedding.json").string());
    ASSERT_EQ(y.rows(), 1u);
    for (std::size_t j = 0; j < 3; ++j) EXPECT_NEAR(y(0, j), 1.0 / std::sqrt(3.0), 1e-15);
}

TEST(Cli, InvalidSizesNameTheFlag) {
    for (const std::string bad : {"4,x", "0", "3,,2", "-1"}) {
        const CliRun r = cli("generate graph --sizes " + bad);
        EXPECT_NE(r.code, 0) << bad;
        EXPECT_NE(r.err.find("--sizes"), std::string::npos) << r.err;
    }
    const CliRun over = cli("generate embedding --sizes 3,3 --n 4");
    EXPECT_EQ(over.code, 2);
    EXPECT_NE(over.err.find("--sizes"), std::string::npos) << over.err;
}

TEST(Cli, ExactEmbeddingHasZeroDelta) {
    ASSERT_EQ(cli("generate embedding --n 20 --sizes 8,6,1 --eps 0 --out exact").code, 0);
    const CliRun r = cli("cluster exact.embedding.json --truth exact.partition.json");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(Json::parse(r.out)["delta_to_truth"].get<double>(), 0.0);
}

TEST(Cli, GraphReportMatchesLibraryCall) {
    ASSERT_EQ(cli("generate graph --sizes 40,20,10,2 --cross 0.05 --seed 3 --out parity").code, 0);
    const CliRun r = cli("cluster parity.graph.txt --mode graph --k 4 --seed 3 --truth parity.partition.json --out parity.report.json");
    ASSERT_EQ(r.code, 0) << r.err;
    const Json from_cli = read_json((workdir() / "parity.report.json").string());

    const WeightedGraph g = read_edge_list((workdir() / "parity.graph.txt").string());
    GraphClustering gc = cluster_graph(g, 4, 3);
    attach_truth(gc.report, gc.partition, read_partition((workdir() / "parity.partition.json").string()));
    const Json from_api = report_to_json(gc.report, gc.partition);
    EXPECT_EQ(without_runtime(from_cli), without_runtime(from_api));
    EXPECT_EQ(from_cli["residual"].get<double>(), gc.report.residual);
    EXPECT_EQ(from_cli["lambda_k1"].get<double>(), *gc.report.lambda_k1);
}

TEST(Cli, EmbeddingAndMatrixReportsMatchLibraryCalls) {
    ASSERT_EQ(cli("generate embedding --n 60 --sizes 30,20,5 --eps 1e-4 --seed 2 --out pe").code, 0);
    const CliRun e = cli("cluster pe.embedding.json --seed 2 --out pe.report.json");
    ASSERT_EQ(e.code, 0) << e.err;
    const ReportedPartition api = cluster_embedding(Embedding(read_embedding((workdir() / "pe.embedding.json").string())), 2);
    EXPECT_EQ(without_runtime(read_json((workdir() / "pe.report.json").string())),
              without_runtime(report_to_json(api.report, api.partition)));

    const DenseMatrix x = DenseMatrix::from_rows({{0.5, 0.5, 0, 0}, {0.5, 0.5, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
    write_matrix((workdir() / "x.matrix.json").string(), x);
    const CliRun m = cli("cluster x.matrix.json --mode matrix --k 3 --out x.report.json");
    ASSERT_EQ(m.code, 0) << m.err;
    const ReportedPartition mapi = cluster_matrix(x, 3);
    EXPECT_EQ(without_runtime(read_json((workdir() / "x.report.json").string())),
              without_runtime(report_to_json(mapi.report, mapi.partition)));
}

TEST(Cli, ReportsAreDeterministic) {
    ASSERT_EQ(cli("generate graph --sizes 10,10 --cross 0.1 --seed 5 --out det").code, 0);
    const CliRun a = cli("cluster det.graph.txt --mode graph --k 2 --seed 5");
    const CliRun b = cli("cluster det.graph.txt --mode graph --k 2 --seed 5");
    ASSERT_EQ(a.code, 0);
    EXPECT_EQ(without_runtime(Json::parse(a.out)), without_runtime(Json::parse(b.out)));
}

TEST(Cli, CsvAssignment) {
    ASSERT_EQ(cli("generate graph --sizes 3,3 --cross 0.01 --seed 1 --out csv").code, 0);
    const CliRun r = cli("cluster csv.graph.txt --mode graph --k 2 --format csv");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out.rfind("node,cluster\n", 0), 0u);
    EXPECT_EQ(std::count(r.out.begin(), r.out.end(), '\n'), 7);
}

TEST(Cli, MissingFileExitsTwo) {
    const CliRun r = cli("cluster does-not-exist.graph.txt --mode graph --k 2");
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("does-not-exist.graph.txt"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrorsExitTwo) {
    EXPECT_EQ(cli("").code, 2);
    EXPECT_EQ(cli("cluster x.json --mode nope").code, 2);
    EXPECT_EQ(cli("cluster x.json --mode graph").code, 2);
    EXPECT_EQ(cli("verify nosuchsuite").code, 2);
    EXPECT_EQ(cli("verify pipeline --eps-sweep 1e-3,abc").code, 2);
}

TEST(Cli, AlgorithmErrorsExitOneWithStage) {
    std::ofstream(workdir() / "bad.matrix.json") << R"({"rows": [[1, 2], [0, 1]]})";
    const CliRun r = cli("cluster bad.matrix.json --mode matrix --k 1");
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("top eigenvectors"), std::string::npos) << r.err;
}

TEST(Cli, VerifySuitePassesAndReportsJson) {
    const CliRun r = cli("verify unravel --trials 20");
    EXPECT_EQ(r.code, 0) << r.err;
    const Json j = Json::parse(r.out);
    EXPECT_TRUE(j["passed"].get<bool>());
    EXPECT_FALSE(j["properties"].empty());
}
