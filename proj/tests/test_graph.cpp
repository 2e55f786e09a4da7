#include <gtest/gtest.h>

#include "support.hpp"

using namespace ccqaoa;
using namespace ccqaoa::testing;

TEST(Graph, NormalizesAndSortsEdges) {
  Graph g(4, {{2, 1}, {0, 3}, {1, 0}});
  const std::vector<Edge> expected{{0, 1}, {0, 3}, {1, 2}};
  EXPECT_EQ(g.edges(), expected);
  EXPECT_TRUE(g.has_edge(2, 1));
  EXPECT_FALSE(g.has_edge(0, 2));
}

TEST(Graph, RejectsMalformedInput) {
  EXPECT_THROW(Graph(3, {{0, 3}}), InvalidArgument);
  EXPECT_THROW(Graph(3, {{1, 1}}), InvalidArgument);
  EXPECT_THROW(Graph(3, {{0, 1}, {1, 0}}), InvalidArgument);
  EXPECT_THROW(Graph(2, {}, std::vector<double>{1.0}), InvalidArgument);
  EXPECT_THROW(Graph(2, {}, std::vector<double>{1.0, -0.5}), InvalidArgument);
}

TEST(GenErdosRenyi, ProbabilityOneGivesComplete) {
  for (std::uint64_t seed : {0u, 5u, 99u}) {
    const auto g = gen_erdos_renyi(3, 1.0, seed);
    EXPECT_EQ(g.num_edges(), 3u);
    EXPECT_EQ(g, triangle());
  }
}

TEST(GenErdosRenyi, ProbabilityZeroGivesEmpty) {
  EXPECT_EQ(gen_erdos_renyi(5, 0.0, 17).num_edges(), 0u);
}

TEST(GenErdosRenyi, Deterministic) {
  EXPECT_EQ(gen_erdos_renyi(10, 0.5, 7).edges(), gen_erdos_renyi(10, 0.5, 7).edges());
  EXPECT_NE(gen_erdos_renyi(10, 0.5, 7).edges(), gen_erdos_renyi(10, 0.5, 8).edges());
}

TEST(GenErdosRenyi, EdgeDensityNearP) {
  std::size_t edges = 0;
  for (std::uint64_t s = 0; s < 200; ++s)
    edges += gen_erdos_renyi(12, 0.3, s).num_edges();
  const double density = static_cast<double>(edges) / (200.0 * 66.0);
  EXPECT_NEAR(density, 0.3, 0.02);
}

TEST(GenErdosRenyi, RejectsBadArguments) {
  EXPECT_THROW(gen_erdos_renyi(0, 0.5, 1), InvalidArgument);
  EXPECT_THROW(gen_erdos_renyi(4, 1.5, 1), InvalidArgument);
  EXPECT_THROW(gen_erdos_renyi(4, -0.1, 1), InvalidArgument);
}

TEST(AssignRandomWeights, InRange) {
  const auto g = assign_random_weights(complete(4), 0.0, 3.0, 1);
  ASSERT_EQ(g.weights().size(), 4u);
  for (double w : g.weights()) {
    EXPECT_GE(w, 0.0);
    EXPECT_LE(w, 3.0);
  }
}

TEST(AssignRandomWeights, DegenerateInterval) {
  const auto g = assign_random_weights(triangle(), 1.0, 1.0, 42);
  for (double w : g.weights())
    EXPECT_EQ(w, 1.0);
}

TEST(AssignRandomWeights, Deterministic) {
  const auto g = complete(5);
  EXPECT_EQ(assign_random_weights(g, 0, 3, 9).weights(),
            assign_random_weights(g, 0, 3, 9).weights());
}

TEST(AssignRandomWeights, RejectsBadRange) {
  EXPECT_THROW(assign_random_weights(triangle(), 2.0, 1.0, 0), InvalidArgument);
  EXPECT_THROW(assign_random_weights(triangle(), -1.0, 1.0, 0), InvalidArgument);
}

TEST(Degree, Examples) {
  EXPECT_EQ(degree(triangle(), 0), 2u);
  EXPECT_EQ(degree(Graph(4), 3), 0u);
  EXPECT_EQ(degree(path3(), 1), 2u);
  EXPECT_THROW(degree(path3(), 3), InvalidArgument);
}

TEST(CommonNeighbors, Examples) {
  EXPECT_EQ(common_neighbors(triangle(), 0, 1), 1u);
  EXPECT_EQ(common_neighbors(single_edge(), 0, 1), 0u);
  EXPECT_EQ(common_neighbors(complete(4), 0, 1), 2u);
  EXPECT_THROW(common_neighbors(triangle(), 1, 1), InvalidArgument);
}

TEST(CommonNeighbors, MatchesAdjacencyIntersection) {
  for (std::uint64_t s = 0; s < 30; ++s) {
    const auto g = gen_erdos_renyi(9, 0.5, s);
    for (Vertex u = 0; u < 9; ++u)
      for (Vertex v = u + 1; v < 9; ++v) {
        std::size_t count = 0;
        for (Vertex w = 0; w < 9; ++w)
          count += (w != u && w != v && g.has_edge(u, w) && g.has_edge(v, w)) ? 1 : 0;
        EXPECT_EQ(g.common_neighbors(u, v), count);
      }
  }
}

TEST(GraphJson, RoundTrip) {
  const auto g = assign_random_weights(gen_erdos_renyi(7, 0.5, 3), 0, 3, 4);
  const nlohmann::json j = g;
  EXPECT_EQ(j.get<Graph>(), g);
  const nlohmann::json j2 = path3();
  EXPECT_FALSE(j2.contains("weights"));
  EXPECT_EQ(j2.get<Graph>(), path3());
}

TEST(GraphJson, MalformedInputRejected) {
  EXPECT_THROW(nlohmann::json::parse(R"({"edges": []})").get<Graph>(), InvalidArgument);
  EXPECT_THROW(nlohmann::json::parse(R"({"n": 3, "edges": [[0]]})").get<Graph>(),
               InvalidArgument);
  EXPECT_THROW(nlohmann::json::parse(R"({"n": 3, "edges": [[0, 5]]})").get<Graph>(),
               InvalidArgument);
}
