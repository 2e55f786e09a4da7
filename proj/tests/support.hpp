#pragma once

#include <bit>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <vector>

#include "ccqaoa/ccqaoa.hpp"

namespace ccqaoa::testing {

inline Graph path3() { return Graph(3, {{0, 1}, {1, 2}}); }
inline Graph triangle() { return Graph(3, {{0, 1}, {0, 2}, {1, 2}}); }
inline Graph single_edge() { return Graph(2, {{0, 1}}); }
inline Graph complete(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      e.emplace_back(u, v);
  return Graph(n, e);
}
inline Graph cycle(std::size_t n) {
  std::vector<Edge> e;
  for (Vertex u = 0; u < n; ++u)
    e.emplace_back(u, (u + 1) % n);
  return Graph(n, e);
}

inline bool covers(const Graph &g, std::uint64_t mask) {
  for (const auto &[u, v] : g.edges())
    if (!((mask >> u) & 1U) && !((mask >> v) & 1U))
      return false;
  return true;
}

inline bool independent(const Graph &g, std::uint64_t mask) {
  for (const auto &[u, v] : g.edges())
    if (((mask >> u) & 1U) && ((mask >> v) & 1U))
      return false;
  return true;
}

// Exhaustive subset search: the set of optimal vertex subsets (as bitmasks,
// bit i set <=> vertex i selected) for the given problem.
inline std::set<std::uint64_t> combinatorial_optima(Problem p, const Graph &g) {
  const std::size_t n = g.num_vertices();
  std::set<std::uint64_t> best;
  double best_value = std::numeric_limits<double>::infinity();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    double value = 0.0;
    if (p == Problem::mis) {
      if (!independent(g, mask))
        continue;
      value = -static_cast<double>(std::popcount(mask));
    } else {
      if (!covers(g, mask))
        continue;
      for (std::size_t i = 0; i < n; ++i)
        if ((mask >> i) & 1U)
          value += p == Problem::mwvc ? g.weights()[i] : 1.0;
    }
    if (value < best_value - 1e-12) {
      best_value = value;
      best = {mask};
    } else if (value <= best_value + 1e-12) {
      best.insert(mask);
    }
  }
  return best;
}

inline std::set<std::uint64_t> ground_set(const IsingModel &m) {
  const auto gs = brute_force(m);
  return {gs.indices.begin(), gs.indices.end()};
}

// Uniform-coupling model drawn from one of the three problem builders on a
// random graph.
inline IsingModel random_problem_model(Rng &rng, std::size_t n, double p_edge) {
  const auto seed = rng.next_u64();
  Graph g = gen_erdos_renyi(n, p_edge, seed);
  switch (rng.next_u64() % 3) {
  case 0:
    return build_mvc(g, 2.0, 1.0);
  case 1: {
    g = assign_random_weights(g, 0.1, 3.0, derive_seed(seed, 1));
    const auto [a, b] =
        CoefficientRule{CoefficientRule::Kind::weighted, 0.0, 0.5, 0.1}.resolve(g);
    return build_mwvc(g, a, b);
  }
  default:
    return build_mis(g, 2.0, 1.0);
  }
}

// Arbitrary model with independent random couplings, fields and constant.
inline IsingModel random_model(Rng &rng, std::size_t n, double p_edge) {
  IsingModel m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (rng.uniform() < p_edge)
        m.add_coupling(i, j, rng.uniform(-1.0, 1.0));
  for (std::size_t i = 0; i < n; ++i)
    m.add_field(i, rng.uniform(-1.0, 1.0));
  m.add_constant(rng.uniform(-2.0, 2.0));
  return m;
}

} // namespace ccqaoa::testing
