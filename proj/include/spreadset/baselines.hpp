#ifndef SPREADSET_BASELINES_HPP_
#define SPREADSET_BASELINES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <optional>
#include <random>
#include <vector>

#include "spreadset/error.hpp"
#include "spreadset/graph.hpp"
#include "spreadset/node_set.hpp"
#include "spreadset/objective.hpp"

namespace spreadset {

inline constexpr std::uint64_t kDefaultEnumerationBudget = 10'000'000;

struct BruteForceOptions {
  std::uint64_t budget = kDefaultEnumerationBudget;
  //! Restrict to sets containing this node.
  std::optional<Node> required;
};

struct Optimum {
  double value = 0.0;
  std::vector<NodeSet> argmin;  // canonical order
  std::uint64_t evaluated = 0;
};

//! Exact minimum of f over nonempty sets of cardinality <= m.
template <SetObjective F>
Optimum brute_force_optimal(F& f, std::size_t m, const BruteForceOptions& opt = {}) {
  const std::size_t n = f.ground_size();
  if (m < 1 || m > n)
    throw Error(ErrorKind::InvalidInput, "cardinality " + std::to_string(m) + " outside [1, " +
                                             std::to_string(n) + "]");
  if (opt.required && *opt.required >= n)
    throw Error(ErrorKind::InvalidInput, "required node out of range");

  std::uint64_t count = 0;
  if (opt.required) {
    for (std::size_t k = 0; k < m && count <= opt.budget; ++k)
      count += binomial_capped(n - 1, k, opt.budget);
  } else {
    count = count_subsets_up_to(n, m, opt.budget);
  }
  if (count > opt.budget)
    throw Error(ErrorKind::BudgetExceeded, "exhaustive search over sets of size <= " +
                                               std::to_string(m) + " on " + std::to_string(n) +
                                               " nodes exceeds budget " +
                                               std::to_string(opt.budget));

  Optimum best;
  best.value = std::numeric_limits<double>::infinity();
  auto visit = [&](const NodeSet& s) {
    const double v = f(s);
    ++best.evaluated;
    if (strictly_less(v, best.value)) {
      best.value = v;
      best.argmin.clear();
      best.argmin.push_back(s);
    } else if (nearly_equal(v, best.value)) {
      best.argmin.push_back(s);
      best.value = std::min(best.value, v);
    }
  };

  if (opt.required) {
    const Node a = *opt.required;
    for (std::size_t k = 0; k < m; ++k) {
      for_each_combination(n - 1, k, [&](const NodeSet& rest) {
        std::vector<Node> members;
        members.reserve(k + 1);
        for (Node v : rest) members.push_back(v >= a ? v + 1 : v);
        members.push_back(a);
        visit(NodeSet(std::move(members)));
      });
    }
  } else {
    for_each_subset_up_to(n, m, visit);
  }
  std::sort(best.argmin.begin(), best.argmin.end());
  return best;
}

struct GreedyStep {
  Node added;
  NodeSet set;
  double value;
};

struct GreedyTrace {
  NodeSet seed;
  std::vector<GreedyStep> steps;
  NodeSet final_set;
  double final_value = 0.0;  // f(final_set); 0 when final_set is empty
};

//! Adds, one node at a time, the node giving the smallest f until the set has
//! m elements. Ties go to the lowest node id.
template <SetObjective F>
GreedyTrace greedy_select(F& f, std::size_t m, const NodeSet& seed = {}) {
  const std::size_t n = f.ground_size();
  if (m > n)
    throw Error(ErrorKind::InvalidInput,
                "cardinality " + std::to_string(m) + " exceeds node count " + std::to_string(n));
  if (seed.size() > m) throw Error(ErrorKind::InvalidInput, "seed is larger than the target size");
  if (!seed.empty() && seed.max_member() >= n)
    throw Error(ErrorKind::InvalidInput, "seed is not a subset of V");

  GreedyTrace trace;
  trace.seed = seed;
  NodeSet current = seed;
  while (current.size() < m) {
    std::optional<GreedyStep> best;
    for (Node v = 0; v < n; ++v) {
      if (current.contains(v)) continue;
      NodeSet candidate = current.with(v);
      const double value = f(candidate);
      if (!best || strictly_less(value, best->value)) best = GreedyStep{v, std::move(candidate), value};
    }
    current = best->set;
    trace.steps.push_back(std::move(*best));
  }
  trace.final_set = current;
  trace.final_value = current.empty() ? 0.0 : f(current);
  return trace;
}

//! Both sides of F({a}) - F(A_m(a)) >= (1 - 1/e) (F({a}) - F*_a), where
//! A_m(a) is the greedy m-set grown from {a} and F*_a the best value over
//! sets of size <= m that contain a.
struct GreedyBound {
  double lhs = 0.0;
  double rhs = 0.0;
  double single_value = 0.0;
  double greedy_value = 0.0;
  double constrained_optimum = 0.0;
  NodeSet greedy_set;

  bool holds() const { return lhs >= rhs - tie_tolerance(rhs); }
};

template <SetObjective F>
GreedyBound greedy_bound_gap(F& f, Node a, std::size_t m,
                             std::uint64_t budget = kDefaultEnumerationBudget) {
  if (m < 1) throw Error(ErrorKind::InvalidInput, "cardinality must be >= 1");
  if (a >= f.ground_size()) throw Error(ErrorKind::InvalidInput, "node out of range");
  GreedyBound out;
  const NodeSet single{a};
  out.single_value = f(single);
  auto trace = greedy_select(f, m, single);
  out.greedy_set = trace.final_set;
  out.greedy_value = trace.final_value;
  out.constrained_optimum = brute_force_optimal(f, m, {budget, a}).value;
  out.lhs = out.single_value - out.greedy_value;
  out.rhs = (1.0 - 1.0 / std::numbers::e) * (out.single_value - out.constrained_optimum);
  return out;
}

struct Matching {
  std::vector<Edge> edges;
  NodeSet vertices;
};

//! Maximal matching by a single scan: take every edge whose endpoints are
//! both still free. The scan uses the sorted edge list, or a permutation of it
//! drawn from order_seed.
inline Matching two_opt_matching(const Graph& g, std::optional<std::uint64_t> order_seed = {}) {
  std::vector<Edge> order = g.edges();
  if (order_seed) {
    std::mt19937_64 rng(*order_seed);
    std::shuffle(order.begin(), order.end(), rng);
  }
  std::vector<char> matched(g.node_count(), 0);
  Matching out;
  std::vector<Node> vertices;
  for (const Edge& e : order) {
    if (matched[e.u] || matched[e.v]) continue;
    matched[e.u] = matched[e.v] = 1;
    out.edges.push_back(e);
    vertices.push_back(e.u);
    vertices.push_back(e.v);
  }
  std::sort(out.edges.begin(), out.edges.end());
  out.vertices = NodeSet(std::move(vertices));
  return out;
}

inline bool is_matching(const Graph& g, const std::vector<Edge>& edges) {
  std::vector<char> used(g.node_count(), 0);
  for (const Edge& e : edges) {
    if (!g.has_edge(e.u, e.v) || used[e.u] || used[e.v]) return false;
    used[e.u] = used[e.v] = 1;
  }
  return true;
}

inline bool is_maximal_matching(const Graph& g, const std::vector<Edge>& edges) {
  if (!is_matching(g, edges)) return false;
  std::vector<char> used(g.node_count(), 0);
  for (const Edge& e : edges) used[e.u] = used[e.v] = 1;
  return std::all_of(g.edges().begin(), g.edges().end(),
                     [&](const Edge& e) { return used[e.u] || used[e.v]; });
}

//! Smallest vertex cover, first in canonical order, by exhaustive search.
inline NodeSet minimum_vertex_cover(const Graph& g,
                                    std::uint64_t budget = kDefaultEnumerationBudget) {
  const std::size_t n = g.node_count();
  std::uint64_t spent = 0;
  for (std::size_t k = 1; k <= n; ++k) {
    spent += binomial_capped(n, k, budget);
    if (spent > budget)
      throw Error(ErrorKind::BudgetExceeded,
                  "minimum vertex cover search exceeds budget " + std::to_string(budget));
    std::optional<NodeSet> found;
    for_each_combination(n, k, [&](const NodeSet& s) {
      if (!found && is_vertex_cover(g, s)) found = s;
    });
    if (found) return *found;
  }
  return NodeSet::range(n);
}

struct CoverRatio {
  std::size_t matched_vertices = 0;  // |M|
  std::size_t optimum = 0;           // OPT

  bool holds() const { return optimum <= matched_vertices && matched_vertices <= 2 * optimum; }
};

inline CoverRatio cover_approximation_ratio(const Graph& g,
                                            std::optional<std::uint64_t> order_seed = {},
                                            std::uint64_t budget = kDefaultEnumerationBudget) {
  return CoverRatio{two_opt_matching(g, order_seed).vertices.size(),
                    minimum_vertex_cover(g, budget).size()};
}

}  // namespace spreadset

#endif  // SPREADSET_BASELINES_HPP_
