#ifndef SPREADSET_GREEDOID_GRAPH_HPP_
#define SPREADSET_GREEDOID_GRAPH_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

#include "spreadset/error.hpp"
#include "spreadset/greedoid.hpp"
#include "spreadset/node_set.hpp"
#include "spreadset/objective.hpp"

namespace spreadset {

enum class MoveKind { Add, Delete, Swap };

inline const char* to_string(MoveKind k) {
  switch (k) {
    case MoveKind::Add: return "add";
    case MoveKind::Delete: return "delete";
    case MoveKind::Swap: return "swap";
  }
  return "?";
}

//! Adjacency on feasible sets: one element added, one removed, or one
//! exchanged between sets of equal size.
inline std::optional<MoveKind> adjacency(const NodeSet& from, const NodeSet& to) {
  if (to.size() == from.size() + 1 && from.is_subset_of(to)) return MoveKind::Add;
  if (from.size() == to.size() + 1 && to.is_subset_of(from)) return MoveKind::Delete;
  if (from.size() == to.size() && set_difference(from, to).size() == 1) return MoveKind::Swap;
  return std::nullopt;
}

struct Neighbor {
  MoveKind kind;
  NodeSet set;
};

//! Feasible sets adjacent to a, in canonical order.
inline std::vector<Neighbor> neighbors(const FeasibleFamily& f, const NodeSet& a) {
  if (!f.contains(a)) throw Error(ErrorKind::Infeasible, a.to_string());
  const auto n = static_cast<Node>(f.ground_size());
  std::vector<Neighbor> out;
  for (Node r = 0; r < n; ++r) {
    if (a.contains(r)) continue;
    if (NodeSet b = a.with(r); f.contains(b)) out.push_back({MoveKind::Add, std::move(b)});
  }
  for (Node v : a) {
    NodeSet d = a.without(v);
    for (Node r = 0; r < n; ++r) {
      if (a.contains(r)) continue;
      if (NodeSet b = d.with(r); f.contains(b)) out.push_back({MoveKind::Swap, std::move(b)});
    }
    if (f.contains(d)) out.push_back({MoveKind::Delete, std::move(d)});
  }
  std::sort(out.begin(), out.end(),
            [](const Neighbor& x, const Neighbor& y) { return x.set < y.set; });
  return out;
}

//! The graph whose nodes are the feasible sets and whose edges join adjacent sets.
class FamilyGraph {
 public:
  explicit FamilyGraph(const FeasibleFamily& f) : nodes_(f.sets()) {
    for (std::size_t i = 0; i < nodes_.size(); ++i) index_.emplace(nodes_[i], i);
    adjacency_.resize(nodes_.size());
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      for (const auto& nb : neighbors(f, nodes_[i])) {
        std::size_t j = index_.at(nb.set);
        adjacency_[i].push_back(j);
        if (i < j) edges_.emplace_back(i, j);
      }
    }
  }

  const std::vector<NodeSet>& nodes() const { return nodes_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  const std::vector<std::size_t>& adjacent_to(std::size_t i) const { return adjacency_.at(i); }

  std::optional<std::size_t> index_of(const NodeSet& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool adjacent(const NodeSet& a, const NodeSet& b) const {
    auto i = index_of(a);
    auto j = index_of(b);
    if (!i || !j) return false;
    const auto& nb = adjacency_[*i];
    return std::find(nb.begin(), nb.end(), *j) != nb.end();
  }

 private:
  std::vector<NodeSet> nodes_;
  std::unordered_map<NodeSet, std::size_t, NodeSetHash> index_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
};

enum class SearchStatus { Reached, DeadEnd };

struct SearchMove {
  MoveKind kind;
  NodeSet set;
  double value;  // F(set); NaN for the empty set
};

struct SearchTrace {
  NodeSet start;
  double start_value = std::numeric_limits<double>::quiet_NaN();
  std::size_t target_cardinality = 0;
  std::vector<SearchMove> moves;
  SearchStatus status = SearchStatus::Reached;
  //! Minimum-F feasible set of the target size met along the way.
  std::optional<NodeSet> best;
  double best_value = std::numeric_limits<double>::infinity();
  //! Set at which a dead end occurred.
  std::optional<NodeSet> stuck;
  //! Feasible sets inspected while choosing moves.
  std::size_t explored = 0;

  const NodeSet& final_set() const { return moves.empty() ? start : moves.back().set; }
};

namespace detail {

template <SetObjective F>
double value_of(F& f, const NodeSet& s) {
  return s.empty() ? std::numeric_limits<double>::quiet_NaN() : static_cast<double>(f(s));
}

//! Smallest-F feasible one-element extension; ties go to the canonical first.
template <SetObjective F>
std::optional<std::pair<NodeSet, double>> best_addition(const FeasibleFamily& fam, F& f,
                                                        const NodeSet& cur, std::size_t& explored) {
  std::optional<std::pair<NodeSet, double>> best;
  for (Node r = 0; r < fam.ground_size(); ++r) {
    if (cur.contains(r)) continue;
    NodeSet b = cur.with(r);
    if (!fam.contains(b)) continue;
    ++explored;
    const double v = f(b);
    if (!best || strictly_less(v, best->second) ||
        (nearly_equal(v, best->second) && b < best->first))
      best = std::make_pair(std::move(b), v);
  }
  return best;
}

template <SetObjective F>
std::optional<std::pair<NodeSet, double>> best_deletion(const FeasibleFamily& fam, F& f,
                                                        const NodeSet& cur, std::size_t& explored) {
  std::optional<std::pair<NodeSet, double>> best;
  for (Node v : cur) {
    NodeSet d = cur.without(v);
    if (!fam.contains(d)) continue;
    ++explored;
    const double val = value_of(f, d);
    if (!best || strictly_less(val, best->second) ||
        (nearly_equal(val, best->second) && d < best->first))
      best = std::make_pair(std::move(d), val);
  }
  return best;
}

inline void record(SearchTrace& t, MoveKind kind, NodeSet s, double value) {
  if (s.size() == t.target_cardinality && (!t.best || strictly_less(value, t.best_value))) {
    t.best = s;
    t.best_value = value;
  }
  t.moves.push_back({kind, std::move(s), value});
}

}  // namespace detail

//! Greedy growth inside the family: repeatedly take the feasible one-element
//! extension with the smallest F until the target size is reached.
template <SetObjective F>
SearchTrace stepwise_extend(const FeasibleFamily& fam, F& f, const NodeSet& base,
                            std::size_t target_cardinality) {
  if (!fam.contains(base)) throw Error(ErrorKind::Infeasible, base.to_string());
  if (base.size() > target_cardinality)
    throw Error(ErrorKind::InvalidInput, "base is larger than the target cardinality");
  SearchTrace t;
  t.start = base;
  t.start_value = detail::value_of(f, base);
  t.target_cardinality = target_cardinality;
  if (base.size() == target_cardinality) {
    t.best = base;
    t.best_value = t.start_value;
  }
  NodeSet cur = base;
  while (cur.size() < target_cardinality) {
    auto next = detail::best_addition(fam, f, cur, t.explored);
    if (!next) {
      t.status = SearchStatus::DeadEnd;
      t.stuck = cur;
      return t;
    }
    cur = next->first;
    detail::record(t, MoveKind::Add, next->first, next->second);
  }
  return t;
}

struct LocalSearchOptions {
  //! Deepest delete-then-add excursion tried once no swap improves.
  std::size_t max_excursion_depth = std::numeric_limits<std::size_t>::max();
};

//! Steepest descent on F over feasible sets of the target size.
//!
//! The start is first brought to the target size by best feasible deletions
//! or additions. At the target size the search takes the best strictly
//! improving swap; when none exists it tries excursions that delete d
//! elements along a feasible chain and greedily add d back, shallowest depth
//! first, and takes the best strictly improving one. It stops when neither
//! kind of move improves F.
template <SetObjective F>
SearchTrace local_search(const FeasibleFamily& fam, F& f, const NodeSet& start,
                         std::size_t target_cardinality, const LocalSearchOptions& opt = {}) {
  if (!fam.contains(start)) throw Error(ErrorKind::Infeasible, start.to_string());
  if (target_cardinality < std::max<std::size_t>(1, fam.m()) ||
      target_cardinality > fam.max_level())
    throw Error(ErrorKind::InvalidInput, "target cardinality " + std::to_string(target_cardinality) +
                                             " outside [m, K]");
  SearchTrace t;
  t.start = start;
  t.start_value = detail::value_of(f, start);
  t.target_cardinality = target_cardinality;
  if (start.size() == target_cardinality) {
    t.best = start;
    t.best_value = t.start_value;
  }

  NodeSet cur = start;
  double cur_value = t.start_value;
  while (cur.size() > target_cardinality) {
    auto next = detail::best_deletion(fam, f, cur, t.explored);
    if (!next) {
      t.status = SearchStatus::DeadEnd;
      t.stuck = cur;
      return t;
    }
    std::tie(cur, cur_value) = *next;
    detail::record(t, MoveKind::Delete, cur, cur_value);
  }
  while (cur.size() < target_cardinality) {
    auto next = detail::best_addition(fam, f, cur, t.explored);
    if (!next) {
      t.status = SearchStatus::DeadEnd;
      t.stuck = cur;
      return t;
    }
    std::tie(cur, cur_value) = *next;
    detail::record(t, MoveKind::Add, cur, cur_value);
  }

  while (true) {
    // Swaps.
    std::optional<std::pair<NodeSet, double>> best_swap;
    for (const auto& nb : neighbors(fam, cur)) {
      if (nb.kind != MoveKind::Swap) continue;
      ++t.explored;
      const double v = f(nb.set);
      if (strictly_less(v, cur_value) && (!best_swap || strictly_less(v, best_swap->second)))
        best_swap = std::make_pair(nb.set, v);
    }
    if (best_swap) {
      std::tie(cur, cur_value) = *best_swap;
      detail::record(t, MoveKind::Swap, cur, cur_value);
      continue;
    }

    // Excursions: breadth-first over feasible subsets of cur reachable by
    // single deletions, then greedy re-growth from each.
    std::map<NodeSet, NodeSet> parent;
    std::vector<NodeSet> layer{cur};
    std::optional<std::vector<SearchMove>> best_path;
    double best_value = cur_value;
    const std::size_t max_depth = std::min(opt.max_excursion_depth, cur.size());
    for (std::size_t depth = 1; depth <= max_depth && !best_path; ++depth) {
      std::vector<NodeSet> next_layer;
      for (const auto& s : layer) {
        for (Node v : s) {
          NodeSet d = s.without(v);
          if (!fam.contains(d) || parent.count(d)) continue;
          parent.emplace(d, s);
          next_layer.push_back(d);
        }
      }
      std::sort(next_layer.begin(), next_layer.end());
      for (const auto& d : next_layer) {
        auto grown = stepwise_extend(fam, f, d, target_cardinality);
        t.explored += grown.explored + 1;
        if (grown.status != SearchStatus::Reached) continue;
        const double v = grown.moves.back().value;
        if (!strictly_less(v, best_value)) continue;
        std::vector<SearchMove> path;
        for (NodeSet x = d; x != cur; x = parent.at(x)) path.push_back({MoveKind::Delete, x, 0.0});
        std::reverse(path.begin(), path.end());
        for (auto& mv : path) mv.value = detail::value_of(f, mv.set);
        for (auto& mv : grown.moves) path.push_back(mv);
        // A regrowth that returns to cur is not an improvement, so the end
        // point always differs from cur here.
        best_path = std::move(path);
        best_value = v;
      }
      layer = std::move(next_layer);
    }
    if (!best_path) break;
    for (auto& mv : *best_path) detail::record(t, mv.kind, mv.set, mv.value);
    cur = t.moves.back().set;
    cur_value = best_value;
  }
  return t;
}

//! One row per base set: its stepwise extension to each size up to the target.
struct ExtensionRow {
  NodeSet base;
  SearchTrace trace;
};

template <SetObjective F>
std::vector<ExtensionRow> extension_table(const FeasibleFamily& fam, F& f,
                                          const std::vector<NodeSet>& bases,
                                          std::size_t target_cardinality) {
  std::vector<ExtensionRow> rows;
  for (const auto& b : bases) rows.push_back({b, stepwise_extend(fam, f, b, target_cardinality)});
  return rows;
}

}  // namespace spreadset

#endif  // SPREADSET_GREEDOID_GRAPH_HPP_
