#ifndef SPREADSET_GRAPH_HPP_
#define SPREADSET_GRAPH_HPP_

#include <Eigen/Dense>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spreadset/error.hpp"
#include "spreadset/node_set.hpp"

namespace spreadset {

struct Edge {
  Node u;
  Node v;  // u < v

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

//! Connected, undirected, simple graph on nodes 0..N-1. Immutable.
class Graph {
 public:
  //! Duplicate edges (in either orientation) collapse. Throws on self-loops,
  //! out-of-range endpoints, isolated nodes and disconnected input.
  Graph(std::size_t node_count, std::vector<std::pair<Node, Node>> edges) : n_(node_count) {
    if (n_ == 0) throw Error(ErrorKind::InvalidInput, "graph has no nodes");
    if (edges.empty()) throw Error(ErrorKind::InvalidInput, "empty edge list");
    edges_.reserve(edges.size());
    for (auto [a, b] : edges) {
      if (a == b) throw Error(ErrorKind::InvalidInput, "self-loop at node " + std::to_string(a));
      if (a >= n_ || b >= n_)
        throw Error(ErrorKind::InvalidInput, "edge endpoint out of range: " + std::to_string(a) +
                                                 " " + std::to_string(b));
      edges_.push_back(Edge{std::min(a, b), std::max(a, b)});
    }
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

    adjacency_.assign(n_, {});
    for (const Edge& e : edges_) {
      adjacency_[e.u].push_back(e.v);
      adjacency_[e.v].push_back(e.u);
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
    if (!is_connected())
      throw Error(ErrorKind::Disconnected, "graph on " + std::to_string(n_) +
                                               " nodes has more than one component");
  }

  std::size_t node_count() const noexcept { return n_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const Node> neighbors(Node v) const { return adjacency_.at(v); }
  std::size_t degree(Node v) const { return adjacency_.at(v).size(); }
  bool has_edge(Node a, Node b) const {
    const auto& nb = adjacency_.at(a);
    return std::binary_search(nb.begin(), nb.end(), b);
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  bool is_connected() const {
    std::vector<char> seen(n_, 0);
    std::queue<Node> frontier;
    frontier.push(0);
    seen[0] = 1;
    std::size_t reached = 1;
    while (!frontier.empty()) {
      Node v = frontier.front();
      frontier.pop();
      for (Node w : adjacency_[v]) {
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          frontier.push(w);
        }
      }
    }
    return reached == n_;
  }

  std::size_t n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<Node>> adjacency_;
};

//! Graph plus the external id of every internal node (labels[i] is the id
//! used in the input file for node i).
struct LabeledGraph {
  Graph graph;
  std::vector<std::uint64_t> labels;

  std::uint64_t label(Node v) const { return labels.at(v); }

  Node node_of(std::uint64_t label) const {
    auto it = std::lower_bound(labels.begin(), labels.end(), label);
    if (it == labels.end() || *it != label)
      throw Error(ErrorKind::InvalidInput, "unknown node id " + std::to_string(label));
    return static_cast<Node>(it - labels.begin());
  }
};

namespace detail {

struct EdgeListDocument {
  std::optional<std::uint64_t> declared_nodes;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> edges;
};

inline std::uint64_t parse_id(std::string_view tok, std::size_t line_no) {
  std::uint64_t value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw Error(ErrorKind::InvalidInput, "line " + std::to_string(line_no) +
                                             ": unparsable token '" + std::string(tok) + "'");
  return value;
}

inline EdgeListDocument read_edge_list(std::string_view text) {
  EdgeListDocument doc;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;
    if (tok[0] == "nodes") {
      if (tok.size() != 2 || doc.declared_nodes || !doc.edges.empty())
        throw Error(ErrorKind::InvalidInput,
                    "line " + std::to_string(line_no) + ": malformed 'nodes N' header");
      doc.declared_nodes = parse_id(tok[1], line_no);
      continue;
    }
    if (tok.size() != 2)
      throw Error(ErrorKind::InvalidInput,
                  "line " + std::to_string(line_no) + ": expected two node ids");
    doc.edges.emplace_back(parse_id(tok[0], line_no), parse_id(tok[1], line_no));
  }
  if (doc.edges.empty()) throw Error(ErrorKind::InvalidInput, "empty edge list");
  for (auto [a, b] : doc.edges)
    if (a == b) throw Error(ErrorKind::InvalidInput, "self-loop at node " + std::to_string(a));
  return doc;
}

inline Node checked_node(std::uint64_t id) {
  if (id > 0xFFFFFFFEull) throw Error(ErrorKind::InvalidInput, "node id too large");
  return static_cast<Node>(id);
}

}  // namespace detail

//! Reads an edge list: one "u v" pair per line, '#' lines ignored, optional
//! leading "nodes N" header. Ids are taken literally as 0-based indices, so
//! N = max id + 1 unless the header says otherwise.
inline Graph parse_graph(std::string_view text) {
  auto doc = detail::read_edge_list(text);
  std::uint64_t max_id = 0;
  for (auto [a, b] : doc.edges) max_id = std::max({max_id, a, b});
  std::uint64_t n = doc.declared_nodes.value_or(max_id + 1);
  if (max_id >= n)
    throw Error(ErrorKind::InvalidInput, "node id " + std::to_string(max_id) +
                                             " exceeds declared node count " + std::to_string(n));
  std::vector<std::pair<Node, Node>> edges;
  edges.reserve(doc.edges.size());
  for (auto [a, b] : doc.edges) edges.emplace_back(detail::checked_node(a), detail::checked_node(b));
  return Graph(detail::checked_node(n), std::move(edges));
}

//! Like parse_graph, but without a "nodes N" header the distinct ids are
//! compacted onto 0..N-1 in increasing order, so 1-based or sparse ids work.
inline LabeledGraph parse_labeled_graph(std::string_view text) {
  auto doc = detail::read_edge_list(text);
  if (doc.declared_nodes) {
    Graph g = parse_graph(text);
    std::vector<std::uint64_t> labels(g.node_count());
    for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = i;
    return LabeledGraph{std::move(g), std::move(labels)};
  }
  std::vector<std::uint64_t> labels;
  for (auto [a, b] : doc.edges) {
    labels.push_back(a);
    labels.push_back(b);
  }
  std::sort(labels.begin(), labels.end());
  labels.erase(std::unique(labels.begin(), labels.end()), labels.end());
  auto index = [&](std::uint64_t id) {
    return static_cast<Node>(std::lower_bound(labels.begin(), labels.end(), id) - labels.begin());
  };
  std::vector<std::pair<Node, Node>> edges;
  for (auto [a, b] : doc.edges) edges.emplace_back(index(a), index(b));
  Graph g(labels.size(), std::move(edges));
  return LabeledGraph{std::move(g), std::move(labels)};
}

//! Canonical edge-list text: optional "nodes N" header, then sorted "u v" lines.
inline std::string serialize_graph(const Graph& g, bool with_header = true) {
  std::ostringstream out;
  if (with_header) out << "nodes " << g.node_count() << "\n";
  for (const Edge& e : g.edges()) out << e.u << " " << e.v << "\n";
  return out.str();
}

inline bool is_vertex_cover(const Graph& g, const NodeSet& a) {
  return std::all_of(g.edges().begin(), g.edges().end(),
                     [&](const Edge& e) { return a.contains(e.u) || a.contains(e.v); });
}

//! True when the random walk is periodic (period 2).
inline bool is_bipartite(const Graph& g) {
  std::vector<int> side(g.node_count(), -1);
  std::queue<Node> frontier;
  side[0] = 0;
  frontier.push(0);
  while (!frontier.empty()) {
    Node v = frontier.front();
    frontier.pop();
    for (Node w : g.neighbors(v)) {
      if (side[w] < 0) {
        side[w] = 1 - side[v];
        frontier.push(w);
      } else if (side[w] == side[v]) {
        return false;
      }
    }
  }
  return true;
}

//! Row-stochastic random-walk matrix whose support is exactly the edge set.
class TransitionMatrix {
 public:
  static constexpr double kRowSumTolerance = 1e-12;

  //! p(i, j) = 1 / deg(i) for every neighbor j.
  static TransitionMatrix uniform(const Graph& g) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    Eigen::MatrixXd p = Eigen::MatrixXd::Zero(n, n);
    for (Node i = 0; i < g.node_count(); ++i) {
      const double w = 1.0 / static_cast<double>(g.degree(i));
      for (Node j : g.neighbors(i)) p(i, j) = w;
    }
    return TransitionMatrix(std::move(p));
  }

  //! Arbitrary chain on g. Rejects matrices whose support differs from the
  //! adjacency pattern or whose rows do not sum to one.
  static TransitionMatrix from_matrix(const Graph& g, Eigen::MatrixXd p) {
    const auto n = static_cast<Eigen::Index>(g.node_count());
    if (p.rows() != n || p.cols() != n)
      throw Error(ErrorKind::InvalidInput, "transition matrix has wrong shape");
    for (Eigen::Index i = 0; i < n; ++i) {
      for (Eigen::Index j = 0; j < n; ++j) {
        const bool edge = i != j && g.has_edge(static_cast<Node>(i), static_cast<Node>(j));
        if (!std::isfinite(p(i, j)) || p(i, j) < 0.0 || (p(i, j) > 0.0) != edge)
          throw Error(ErrorKind::InvalidInput, "transition matrix support differs from edges at (" +
                                                   std::to_string(i) + "," + std::to_string(j) + ")");
      }
      if (std::abs(p.row(i).sum() - 1.0) > kRowSumTolerance)
        throw Error(ErrorKind::InvalidInput, "row " + std::to_string(i) + " does not sum to 1");
    }
    return TransitionMatrix(std::move(p));
  }

  std::size_t size() const noexcept { return static_cast<std::size_t>(p_.rows()); }
  double operator()(Node i, Node j) const { return p_(i, j); }
  const Eigen::MatrixXd& matrix() const noexcept { return p_; }

 private:
  explicit TransitionMatrix(Eigen::MatrixXd p) : p_(std::move(p)) {}
  Eigen::MatrixXd p_;
};

}  // namespace spreadset

#endif  // SPREADSET_GRAPH_HPP_
