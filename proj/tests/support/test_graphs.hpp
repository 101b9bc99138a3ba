#ifndef SPREADSET_TESTS_TEST_GRAPHS_HPP_
#define SPREADSET_TESTS_TEST_GRAPHS_HPP_

// Named graphs and a seeded generator of random connected graphs shared by
// the unit and acceptance suites.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "spreadset/graph.hpp"

namespace spreadset::testing {

inline Graph path_graph(std::size_t n) {
  std::vector<std::pair<Node, Node>> e;
  for (Node i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return Graph(n, e);
}

inline Graph cycle_graph(std::size_t n) {
  std::vector<std::pair<Node, Node>> e;
  for (Node i = 0; i < n; ++i) e.emplace_back(i, static_cast<Node>((i + 1) % n));
  return Graph(n, e);
}

inline Graph complete_graph(std::size_t n) {
  std::vector<std::pair<Node, Node>> e;
  for (Node i = 0; i < n; ++i)
    for (Node j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return Graph(n, e);
}

//! Center 0, leaves 1..n-1.
inline Graph star_graph(std::size_t n) {
  std::vector<std::pair<Node, Node>> e;
  for (Node i = 1; i < n; ++i) e.emplace_back(0, i);
  return Graph(n, e);
}

//! Random spanning tree on shuffled labels plus each remaining pair with
//! probability p.
inline Graph random_connected_graph(std::size_t n, double p, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Node> perm(n);
  std::iota(perm.begin(), perm.end(), Node{0});
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<std::pair<Node, Node>> e;
  for (Node i = 1; i < n; ++i) {
    std::uniform_int_distribution<Node> parent(0, i - 1);
    e.emplace_back(perm[i], perm[parent(rng)]);
  }
  std::bernoulli_distribution coin(p);
  for (Node i = 0; i < n; ++i)
    for (Node j = i + 1; j < n; ++j)
      if (coin(rng)) e.emplace_back(i, j);
  return Graph(n, e);
}

struct NamedGraph {
  std::string name;
  Graph graph;
};

//! The fixed sweep used for exhaustive checks: paths, cycles, stars and
//! complete graphs on 2..max_n nodes, then random_per_size random graphs per
//! size with densities cycling through {0.2, 0.35, 0.5, 0.7}.
inline std::vector<NamedGraph> graph_sweep(std::size_t max_n, std::size_t random_per_size,
                                           std::uint64_t seed = 2024) {
  std::vector<NamedGraph> out;
  for (std::size_t n = 2; n <= max_n; ++n) {
    out.push_back({"P" + std::to_string(n), path_graph(n)});
    if (n >= 3) out.push_back({"C" + std::to_string(n), cycle_graph(n)});
    if (n >= 4) out.push_back({"S" + std::to_string(n), star_graph(n)});
    if (n >= 4) out.push_back({"K" + std::to_string(n), complete_graph(n)});
  }
  const double densities[] = {0.2, 0.35, 0.5, 0.7};
  for (std::size_t n = 3; n <= max_n; ++n) {
    for (std::size_t r = 0; r < random_per_size; ++r) {
      const std::uint64_t s = seed * 1000003ull + n * 1009ull + r;
      out.push_back({"R" + std::to_string(n) + "_" + std::to_string(r),
                     random_connected_graph(n, densities[r % 4], s)});
    }
  }
  return out;
}

}  // namespace spreadset::testing

#endif  // SPREADSET_TESTS_TEST_GRAPHS_HPP_
