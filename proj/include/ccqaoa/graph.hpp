#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "ccqaoa/error.hpp"
#include "ccqaoa/rng.hpp"

namespace ccqaoa {

using Vertex = std::size_t;
using Edge = std::pair<Vertex, Vertex>;

/// Undirected simple graph with optional nonnegative vertex weights.
///
/// Edges are normalized to (min, max) and kept sorted; neighbor lists are
/// sorted so that shared-neighbor counts are a linear merge.
class Graph {
public:
  Graph() = default;

  explicit Graph(std::size_t n, std::vector<Edge> edges = {},
                 std::optional<std::vector<double>> weights = std::nullopt)
      : n_(n), adjacency_(n) {
    for (auto &[u, v] : edges) {
      detail::require(u < n && v < n, "edge (" + std::to_string(u) + "," +
                                          std::to_string(v) +
                                          ") has an out-of-range endpoint");
      detail::require(u != v, "self-loop on vertex " + std::to_string(u));
      if (u > v)
        std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    const auto dup = std::adjacent_find(edges.begin(), edges.end());
    detail::require(dup == edges.end(),
                    dup == edges.end()
                        ? std::string()
                        : "duplicate edge (" + std::to_string(dup->first) +
                              "," + std::to_string(dup->second) + ")");
    edges_ = std::move(edges);
    for (const auto &[u, v] : edges_) {
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    for (auto &nbrs : adjacency_)
      std::sort(nbrs.begin(), nbrs.end());
    if (weights)
      set_weights(std::move(*weights));
  }

  std::size_t num_vertices() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge> &edges() const { return edges_; }

  const std::vector<Vertex> &neighbors(Vertex u) const {
    check_vertex(u);
    return adjacency_[u];
  }

  bool has_edge(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    return std::binary_search(adjacency_[u].begin(), adjacency_[u].end(), v);
  }

  std::size_t degree(Vertex u) const {
    check_vertex(u);
    return adjacency_[u].size();
  }

  /// Number of vertices adjacent to both u and v.
  std::size_t common_neighbors(Vertex u, Vertex v) const {
    check_vertex(u);
    check_vertex(v);
    detail::require(u != v, "common_neighbors needs two distinct vertices");
    const auto &a = adjacency_[u];
    const auto &b = adjacency_[v];
    std::size_t count = 0;
    for (auto i = a.begin(), j = b.begin(); i != a.end() && j != b.end();) {
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

  bool has_weights() const { return weights_.has_value(); }

  const std::vector<double> &weights() const {
    if (!weights_)
      throw InvalidArgument("graph carries no vertex weights");
    return *weights_;
  }

  void set_weights(std::vector<double> weights) {
    detail::require(weights.size() == n_,
                    "expected " + std::to_string(n_) + " weights, got " +
                        std::to_string(weights.size()));
    for (double w : weights)
      detail::require(w >= 0.0, "vertex weights must be nonnegative");
    weights_ = std::move(weights);
  }

  friend bool operator==(const Graph &, const Graph &) = default;

private:
  void check_vertex(Vertex u) const {
    if (u >= n_)
      throw InvalidArgument("vertex " + std::to_string(u) +
                            " out of range for a graph with " +
                            std::to_string(n_) + " vertices");
  }

  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::optional<std::vector<double>> weights_;
};

/// Erdős–Rényi G(n, p): pairs (u, v), u < v, visited in lexicographic order,
/// each kept when a uniform draw falls below p_edge.
inline Graph gen_erdos_renyi(std::size_t n, double p_edge, std::uint64_t seed) {
  detail::require(n >= 1, "graph needs at least one vertex");
  detail::require(p_edge >= 0.0 && p_edge <= 1.0,
                  "edge probability must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (rng.uniform() < p_edge)
        edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

/// Copy of g with i.i.d. uniform weights on [lo, hi].
inline Graph assign_random_weights(Graph g, double lo, double hi,
                                   std::uint64_t seed) {
  detail::require(lo <= hi, "weight range needs lo <= hi");
  detail::require(lo >= 0.0, "vertex weights must be nonnegative");
  Rng rng(seed);
  std::vector<double> w(g.num_vertices());
  for (auto &x : w)
    x = lo == hi ? lo : rng.uniform(lo, hi);
  g.set_weights(std::move(w));
  return g;
}

inline std::size_t degree(const Graph &g, Vertex u) { return g.degree(u); }

inline std::size_t common_neighbors(const Graph &g, Vertex u, Vertex v) {
  return g.common_neighbors(u, v);
}

// JSON: {"n": 3, "edges": [[0,1],[1,2]], "weights": [1.0, 2.0, 0.5]}

inline void to_json(nlohmann::json &j, const Graph &g) {
  j = nlohmann::json{{"n", g.num_vertices()}, {"edges", nlohmann::json::array()}};
  for (const auto &[u, v] : g.edges())
    j["edges"].push_back({u, v});
  if (g.has_weights())
    j["weights"] = g.weights();
}

inline void from_json(const nlohmann::json &j, Graph &g) {
  try {
    const auto n = j.at("n").get<std::size_t>();
    std::vector<Edge> edges;
    for (const auto &e : j.at("edges")) {
      detail::require(e.is_array() && e.size() == 2,
                      "each edge must be a two-element array");
      edges.emplace_back(e[0].get<std::size_t>(), e[1].get<std::size_t>());
    }
    std::optional<std::vector<double>> weights;
    if (j.contains("weights") && !j["weights"].is_null())
      weights = j["weights"].get<std::vector<double>>();
    g = Graph(n, std::move(edges), std::move(weights));
  } catch (const nlohmann::json::exception &e) {
    throw InvalidArgument(std::string("malformed graph JSON: ") + e.what());
  }
}

} // namespace ccqaoa
