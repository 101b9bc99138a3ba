#ifndef SPREADSET_HITTING_HPP_
#define SPREADSET_HITTING_HPP_

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <unordered_map>
#include <vector>

#include "spreadset/error.hpp"
#include "spreadset/graph.hpp"
#include "spreadset/node_set.hpp"
#include "spreadset/objective.hpp"

namespace spreadset {

//! Expected hitting times h(i, A) for every i outside the target A, and
//! their sum F(A).
struct HittingProfile {
  NodeSet target;
  std::vector<Node> sources;  // V \ A, ascending
  std::vector<double> times;  // times[k] = h(sources[k], A)
  double objective = 0.0;

  double time(Node i) const {
    auto it = std::lower_bound(sources.begin(), sources.end(), i);
    if (it == sources.end() || *it != i)
      throw Error(ErrorKind::InvalidInput, "node " + std::to_string(i) + " is in the target set");
    return times[static_cast<std::size_t>(it - sources.begin())];
  }
};

inline constexpr double kResidualTolerance = 1e-9;

namespace detail {

inline void check_target(std::size_t n, const NodeSet& a) {
  if (a.empty()) throw Error(ErrorKind::EmptyTarget, "hitting time to the empty set is infinite");
  if (a.max_member() >= n)
    throw Error(ErrorKind::InvalidInput, "target " + a.to_string() + " is not a subset of V");
}

}  // namespace detail

//! Solves (I - P_A) H = 1, where P_A is P with the rows and columns of A
//! removed.
inline HittingProfile hitting_times(const TransitionMatrix& p, const NodeSet& a) {
  const std::size_t n = p.size();
  detail::check_target(n, a);
  HittingProfile out;
  out.target = a;
  for (Node i = 0; i < n; ++i)
    if (!a.contains(i)) out.sources.push_back(i);
  const auto k = static_cast<Eigen::Index>(out.sources.size());
  if (k == 0) return out;

  Eigen::MatrixXd system(k, k);
  for (Eigen::Index r = 0; r < k; ++r)
    for (Eigen::Index c = 0; c < k; ++c)
      system(r, c) = (r == c ? 1.0 : 0.0) - p(out.sources[r], out.sources[c]);
  const Eigen::VectorXd ones = Eigen::VectorXd::Ones(k);
  Eigen::PartialPivLU<Eigen::MatrixXd> lu(system);
  Eigen::VectorXd h = lu.solve(ones);

  const double scale = std::max(1.0, h.lpNorm<Eigen::Infinity>());
  const double residual = (system * h - ones).lpNorm<Eigen::Infinity>();
  if (!h.allFinite() || !(residual <= kResidualTolerance * scale))
    throw Error(ErrorKind::SolverFailure, "hitting-time system for " + a.to_string() +
                                              " has residual " + std::to_string(residual));

  out.times.assign(h.data(), h.data() + k);
  for (double t : out.times) out.objective += t;
  return out;
}

inline HittingProfile hitting_times(const Graph& g, const NodeSet& a) {
  return hitting_times(TransitionMatrix::uniform(g), a);
}

//! F(A) = sum over i outside A of h(i, A).
inline double objective(const Graph& g, const NodeSet& a) { return hitting_times(g, a).objective; }

//! Memoizing evaluator of F for one chain. Not thread-safe; use one per thread.
class ObjectiveOracle {
 public:
  explicit ObjectiveOracle(const Graph& g) : p_(TransitionMatrix::uniform(g)) {}
  explicit ObjectiveOracle(TransitionMatrix p) : p_(std::move(p)) {}

  double operator()(const NodeSet& a) {
    if (auto it = cache_.find(a); it != cache_.end()) return it->second;
    double f = hitting_times(p_, a).objective;
    ++solves_;
    cache_.emplace(a, f);
    return f;
  }

  std::size_t ground_size() const noexcept { return p_.size(); }
  std::size_t solves() const noexcept { return solves_; }
  const TransitionMatrix& transition() const noexcept { return p_; }

 private:
  TransitionMatrix p_;
  std::unordered_map<NodeSet, double, NodeSetHash> cache_;
  std::size_t solves_ = 0;
};

static_assert(SetObjective<ObjectiveOracle>);

//! SplitMix64: one 64-bit state, usable as a UniformRandomBitGenerator.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix(state_);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  //! Independent stream for one (seed, start node, walk index) triple.
  static SplitMix64 stream(std::uint64_t seed, std::uint64_t start, std::uint64_t walk) {
    std::uint64_t s = mix(seed + 0x632be59bd9b4e019ull);
    s = mix(s ^ (start * 0x9e3779b97f4a7c15ull + 0x8cb92ba72f3d8dd7ull));
    s = mix(s ^ (walk * 0xd1b54a32d192ed03ull + 0xaef17502108ef2d9ull));
    return SplitMix64(s);
  }

 private:
  std::uint64_t state_;
};

struct MonteCarloEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t walks = 0;
  std::uint64_t steps = 0;
};

//! Simulates walks_per_node walks from each node outside A and sums the
//! per-node mean hitting times. Deterministic for a fixed seed.
inline MonteCarloEstimate monte_carlo_objective(const TransitionMatrix& p, const NodeSet& a,
                                                std::uint64_t walks_per_node,
                                                std::uint64_t seed) {
  const std::size_t n = p.size();
  detail::check_target(n, a);
  if (walks_per_node == 0) throw Error(ErrorKind::InvalidInput, "walks_per_node must be >= 1");

  std::vector<std::vector<Node>> next(n);
  std::vector<std::vector<double>> cumulative(n);
  for (Node i = 0; i < n; ++i) {
    double acc = 0.0;
    for (Node j = 0; j < n; ++j) {
      if (p(i, j) > 0.0) {
        acc += p(i, j);
        next[i].push_back(j);
        cumulative[i].push_back(acc);
      }
    }
    cumulative[i].back() = std::numeric_limits<double>::infinity();
  }
  std::vector<char> in_target(n, 0);
  for (Node v : a) in_target[v] = 1;

  MonteCarloEstimate out;
  double variance = 0.0;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (Node start = 0; start < n; ++start) {
    if (in_target[start]) continue;
    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t w = 0; w < walks_per_node; ++w) {
      SplitMix64 rng = SplitMix64::stream(seed, start, w);
      Node at = start;
      std::uint64_t t = 0;
      do {
        const auto& cum = cumulative[at];
        auto k = std::upper_bound(cum.begin(), cum.end(), unit(rng)) - cum.begin();
        at = next[at][static_cast<std::size_t>(k)];
        ++t;
      } while (!in_target[at]);
      sum += static_cast<double>(t);
      sum_sq += static_cast<double>(t) * static_cast<double>(t);
      out.steps += t;
    }
    const double count = static_cast<double>(walks_per_node);
    const double mean = sum / count;
    out.estimate += mean;
    if (walks_per_node > 1) {
      const double sample_var = std::max(0.0, (sum_sq - count * mean * mean) / (count - 1.0));
      variance += sample_var / count;
    }
    out.walks += walks_per_node;
  }
  out.standard_error = std::sqrt(variance);
  return out;
}

inline MonteCarloEstimate monte_carlo_objective(const Graph& g, const NodeSet& a,
                                                std::uint64_t walks_per_node,
                                                std::uint64_t seed) {
  return monte_carlo_objective(TransitionMatrix::uniform(g), a, walks_per_node, seed);
}

}  // namespace spreadset

#endif  // SPREADSET_HITTING_HPP_
