#include "subspace_round/errors.hpp"
#include "subspace_round/io.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

using namespace subspace_round;

namespace {

std::filesystem::path scratch(const std::string& name) {
    const auto dir = std::filesystem::temp_directory_path() / "subspace_round_io_tests";
    std::filesystem::create_directories(dir);
    return dir / name;
}

} // namespace

TEST(EdgeList, ParsesHeaderCommentsAndWeights) {
    std::istringstream in("# two edges\nn 4\n0 1 0.5\n2 3 2 # trailing\n\n");
    const WeightedGraph g = parse_edge_list(in);
    EXPECT_EQ(g.n(), 4u);
    ASSERT_EQ(g.edges().size(), 2u);
    EXPECT_EQ(g.edges()[1].w, 2.0);
}

TEST(EdgeList, InfersNWithoutHeader) {
    std::istringstream in("0 5 1\n");
    EXPECT_EQ(parse_edge_list(in).n(), 6u);
}

TEST(EdgeList, ErrorsNameTheLine) {
    std::istringstream in("n 3\n0 1 1\n0 x 1\n");
    try {
        parse_edge_list(in, "fixture.txt");
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find("fixture.txt:3"), std::string::npos) << e.what();
    }
}

TEST(EdgeList, RoundTripIsExact) {
    const WeightedGraph g(5, {{0, 1, 0.1}, {1, 4, 1.0 / 3.0}, {2, 3, 7.25}});
    const auto path = scratch("roundtrip.graph.txt");
    write_edge_list(path.string(), g);
    const WeightedGraph back = read_edge_list(path.string());
    ASSERT_EQ(back.edges().size(), 3u);
    EXPECT_EQ(back.n(), 5u);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(back.edges()[i].w, g.edges()[i].w);
}

TEST(EdgeList, MissingFileIsIoError) {
    EXPECT_THROW(read_edge_list("/nonexistent/graph.txt"), IoError);
}

TEST(PartitionJson, RoundTrip) {
    const Partition p(6, {NodeSet{0, 2}, NodeSet{5}});
    EXPECT_EQ(partition_from_json(partition_to_json(p)), p);
    const auto path = scratch("p.partition.json");
    write_partition(path.string(), p);
    EXPECT_EQ(read_partition(path.string()), p);
}

TEST(PartitionJson, RejectsOverlap) {
    const Json j = Json::parse(R"({"n": 3, "sets": [[0, 1], [1]]})");
    EXPECT_THROW(partition_from_json(j), OverlapDetected);
}

TEST(EmbeddingJson, RoundTripIsExact) {
    const DenseMatrix y = DenseMatrix::from_rows({{0.6, 0.8, 0.0}, {0.0, 0.0, 1.0}});
    const auto path = scratch("e.embedding.json");
    write_embedding(path.string(), y);
    const DenseMatrix back = read_embedding(path.string());
    EXPECT_EQ((back - y).max_abs(), 0.0);
}

TEST(EmbeddingJson, ShapeMismatchIsParseError) {
    const Json j = Json::parse(R"({"k": 2, "n": 3, "rows": [[1, 0, 0]]})");
    EXPECT_THROW(embedding_from_json(j), ParseError);
}

TEST(ReportJson, FieldsInOrder) {
    ClusteringReport r;
    r.k = 2;
    r.n = 3;
    r.residual = 0.25;
    r.seed = 9;
    r.algorithm_parameters["mode"] = "embedding";
    const Json j = report_to_json(r, Partition(3, {NodeSet{0}, NodeSet{1, 2}}));
    std::vector<std::string> keys;
    for (const auto& item : j.items()) keys.push_back(item.key());
    EXPECT_EQ(keys, (std::vector<std::string>{"k", "n", "delta_to_truth", "residual", "per_cluster_expansion",
                                              "lambda_k1", "runtime_ms", "seed", "algorithm_parameters",
                                              "partition"}));
    EXPECT_TRUE(j["delta_to_truth"].is_null());
    EXPECT_EQ(j["residual"].get<double>(), 0.25);
}
