#ifndef SPREADSET_REPORT_HPP_
#define SPREADSET_REPORT_HPP_

// JSON views of the library's results. Sets are written with external node
// labels when a label table is supplied.

#include <cmath>
#include <cstdint>
#include <span>
#include <vector>

#include "json.hpp"
#include "spreadset/baselines.hpp"
#include "spreadset/greedoid.hpp"
#include "spreadset/greedoid_graph.hpp"
#include "spreadset/hitting.hpp"
#include "spreadset/ranking.hpp"

namespace spreadset {

inline constexpr int kReportSchema = 1;

class Labels {
 public:
  Labels() = default;
  explicit Labels(std::span<const std::uint64_t> labels) : labels_(labels) {}

  std::uint64_t operator()(Node v) const { return labels_.empty() ? v : labels_[v]; }

  nlohmann::json set(const NodeSet& s) const {
    auto out = nlohmann::json::array();
    for (Node v : s) out.push_back((*this)(v));
    return out;
  }

 private:
  std::span<const std::uint64_t> labels_;
};

inline nlohmann::json number_or_null(double v) {
  return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr);
}

inline nlohmann::json to_json(const HittingProfile& h, const Labels& L = {}) {
  auto times = nlohmann::json::array();
  for (std::size_t i = 0; i < h.sources.size(); ++i)
    times.push_back({{"node", L(h.sources[i])}, {"h", h.times[i]}});
  return {{"target", L.set(h.target)}, {"times", times}, {"F", h.objective}};
}

inline nlohmann::json to_json(const Optimum& o, const Labels& L = {}) {
  auto sets = nlohmann::json::array();
  for (const auto& s : o.argmin) sets.push_back(L.set(s));
  return {{"F", o.value}, {"argmin", sets}, {"evaluated", o.evaluated}};
}

inline nlohmann::json to_json(const GreedyTrace& t, const Labels& L = {}) {
  auto steps = nlohmann::json::array();
  for (const auto& s : t.steps)
    steps.push_back({{"added", L(s.added)}, {"set", L.set(s.set)}, {"F", s.value}});
  return {{"seed", L.set(t.seed)},
          {"steps", steps},
          {"final", L.set(t.final_set)},
          {"F", t.final_value}};
}

inline nlohmann::json to_json(const GreedyBound& b, const Labels& L = {}) {
  return {{"lhs", b.lhs},
          {"rhs", b.rhs},
          {"F_single", b.single_value},
          {"F_greedy", b.greedy_value},
          {"F_star", b.constrained_optimum},
          {"greedy_set", L.set(b.greedy_set)},
          {"holds", b.holds()}};
}

inline nlohmann::json to_json(const Matching& m, const Labels& L = {}) {
  auto edges = nlohmann::json::array();
  for (const auto& e : m.edges) edges.push_back({L(e.u), L(e.v)});
  return {{"edges", edges}, {"vertices", L.set(m.vertices)}, {"K", m.vertices.size()}};
}

inline nlohmann::json to_json(const RankContext& c, const Labels& L = {}) {
  return {{"K", c.k}, {"cover", L.set(c.cover)}, {"F_min", c.f_min}, {"F_max", c.f_max}};
}

inline nlohmann::json to_json(const RankedFamily& f, const Labels& L = {},
                              std::size_t max_listed = std::numeric_limits<std::size_t>::max()) {
  auto levels = nlohmann::json::array();
  std::size_t listed = 0;
  for (std::size_t n = 1; n <= f.k(); ++n) {
    auto entries = nlohmann::json::array();
    for (const auto& e : f.level(n)) {
      if (listed++ >= max_listed) break;
      entries.push_back({{"set", L.set(e.set)},
                         {"F", e.value},
                         {"rho", e.rho},
                         {"evaluated", e.evaluated}});
    }
    levels.push_back({{"n", n}, {"count", f.level(n).size()}, {"sets", entries}});
  }
  return {{"context", to_json(f.context(), L)},
          {"c", f.c()},
          {"m", f.m()},
          {"size", f.size()},
          {"truncated", listed > max_listed},
          {"levels", levels}};
}

inline nlohmann::json to_json(const AxiomReport& r, const Labels& L = {}) {
  auto g2 = nlohmann::json::array();
  for (const auto& s : r.g2_violations) g2.push_back(L.set(s));
  auto g3 = nlohmann::json::array();
  for (const auto& [x, y] : r.g3_violations) g3.push_back({{"X", L.set(x)}, {"Y", L.set(y)}});
  return {{"G1", r.g1},
          {"G2", {{"violations", r.g2_count}, {"witnesses", g2}}},
          {"G3", {{"violations", r.g3_count}, {"witnesses", g3}}},
          {"ok", r.ok()}};
}

inline nlohmann::json to_json(const LadderReport& r, const Labels& L = {}) {
  auto sets = [&](const std::vector<NodeSet>& v) {
    auto out = nlohmann::json::array();
    for (const auto& s : v) out.push_back(L.set(s));
    return out;
  };
  auto t3 = nlohmann::json::array();
  for (const auto& [b, a] : r.t3_violations) t3.push_back({{"B", L.set(b)}, {"A", L.set(a)}});
  return {{"T1", {{"ok", r.t1()}, {"witnesses", sets(r.t1_violations)}}},
          {"T2", {{"ok", r.t2()}, {"witnesses", sets(r.t2_violations)}}},
          {"T3", {{"ok", r.t3()}, {"witnesses", t3}}},
          {"T4", {{"ok", r.t4()}, {"missing", sets(r.t4_missing)}, {"extra", sets(r.t4_extra)}}},
          {"ok", r.ok()}};
}

inline nlohmann::json to_json(const FeasibleFamily& f, const Labels& L = {}) {
  auto levels = nlohmann::json::array();
  for (std::size_t n = 0; n <= f.max_level(); ++n) {
    auto entries = nlohmann::json::array();
    for (const auto& a : f.level(n)) {
      nlohmann::json e = {{"set", L.set(a.set)}, {"rule", to_string(a.rule)}};
      if (a.via) e["via"] = L.set(*a.via);
      if (!a.partners.empty()) {
        auto p = nlohmann::json::array();
        for (Node v : a.partners) p.push_back(L(v));
        e["partners"] = p;
      }
      entries.push_back(std::move(e));
    }
    levels.push_back({{"n", n}, {"count", f.level(n).size()}, {"sets", entries}});
  }
  nlohmann::json out = {{"case", to_string(f.construction())},
                        {"m", f.m()},
                        {"K", f.k()},
                        {"size", f.size()},
                        {"levels", levels}};
  out["H"] = f.base_set() ? L.set(*f.base_set()) : nlohmann::json(nullptr);
  if (f.construction() == Construction::CaseII)
    out["notes"] = {"sub-base sets must extend a feasible set one level down"};
  return out;
}

inline nlohmann::json to_json(const SearchTrace& t, const Labels& L = {}) {
  auto moves = nlohmann::json::array();
  for (const auto& m : t.moves)
    moves.push_back({{"move", to_string(m.kind)}, {"set", L.set(m.set)}, {"F", number_or_null(m.value)}});
  nlohmann::json out = {{"start", L.set(t.start)},
                        {"start_F", number_or_null(t.start_value)},
                        {"M", t.target_cardinality},
                        {"moves", moves},
                        {"status", t.status == SearchStatus::Reached ? "reached" : "dead_end"},
                        {"explored", t.explored}};
  out["best"] = t.best ? L.set(*t.best) : nlohmann::json(nullptr);
  out["best_F"] = t.best ? number_or_null(t.best_value) : nlohmann::json(nullptr);
  if (t.stuck) out["stuck"] = L.set(*t.stuck);
  return out;
}

}  // namespace spreadset

#endif  // SPREADSET_REPORT_HPP_
