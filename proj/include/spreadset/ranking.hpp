#ifndef SPREADSET_RANKING_HPP_
#define SPREADSET_RANKING_HPP_

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <unordered_map>
#include <vector>

#include "spreadset/baselines.hpp"
#include "spreadset/error.hpp"
#include "spreadset/graph.hpp"
#include "spreadset/node_set.hpp"
#include "spreadset/objective.hpp"

namespace spreadset {

//! Normalization data for the rank: K is the size of the reference vertex
//! cover, F_min its objective value and F_max the worst singleton value.
struct RankContext {
  std::size_t node_count = 0;
  std::size_t k = 0;
  NodeSet cover;
  double f_min = 0.0;
  double f_max = 0.0;

  bool degenerate() const { return !(f_max - f_min > tie_tolerance(f_max)); }
};

//! rho = (F_max - value) / (F_max - F_min): 1 for the best sets, 0 for the
//! worst singleton.
inline double rank(const RankContext& ctx, double value) {
  if (ctx.degenerate())
    throw Error(ErrorKind::Degenerate, "F_max equals F_min; every set is optimal");
  if (value < ctx.f_min - tie_tolerance(ctx.f_min) || value > ctx.f_max + tie_tolerance(ctx.f_max))
    throw Error(ErrorKind::InvalidInput, "objective value " + std::to_string(value) +
                                             " outside [F_min, F_max]");
  return (ctx.f_max - value) / (ctx.f_max - ctx.f_min);
}

template <SetObjective F>
RankContext build_context(const Graph& g, F& f, const NodeSet& cover) {
  if (cover.empty() || cover.max_member() >= g.node_count())
    throw Error(ErrorKind::InvalidInput, "cover " + cover.to_string() + " is not a subset of V");
  if (!is_vertex_cover(g, cover)) throw Error(ErrorKind::NotVertexCover, cover.to_string());
  RankContext ctx;
  ctx.node_count = g.node_count();
  ctx.k = cover.size();
  ctx.cover = cover;
  ctx.f_min = f(cover);
  ctx.f_max = -std::numeric_limits<double>::infinity();
  for (Node v = 0; v < g.node_count(); ++v) ctx.f_max = std::max(ctx.f_max, f(NodeSet{v}));
  if (ctx.degenerate())
    throw Error(ErrorKind::Degenerate, "F_max = F_min = " + std::to_string(ctx.f_min));
  return ctx;
}

//! rho values within this distance below c still count as >= c.
inline constexpr double kRankTolerance = 1e-12;

struct RankedEntry {
  NodeSet set;
  double value = 0.0;  // F(set)
  double rho = 0.0;
  //! False when admitted by superset closure without solving; value is then
  //! an upper bound on F and rho a lower bound.
  bool evaluated = true;
};

//! L_{c,K}: nonempty sets of size <= K with rank >= c, stratified by size.
class RankedFamily {
 public:
  RankedFamily() = default;
  RankedFamily(RankContext ctx, double c) : context_(std::move(ctx)), c_(c) {
    levels_.resize(context_.k + 1);
  }

  void add(RankedEntry e) {
    const std::size_t n = e.set.size();
    if (n == 0 || n > context_.k)
      throw Error(ErrorKind::InvalidInput, "set size outside [1, K]: " + e.set.to_string());
    index_.emplace(e.set, n);
    levels_[n].push_back(std::move(e));
  }

  //! Restores canonical order within each level and recomputes m.
  void finalize() {
    m_ = 0;
    for (std::size_t n = 1; n < levels_.size(); ++n) {
      auto& lvl = levels_[n];
      std::sort(lvl.begin(), lvl.end(),
                [](const RankedEntry& a, const RankedEntry& b) { return a.set < b.set; });
      if (!m_ && !lvl.empty()) m_ = n;
    }
  }

  const RankContext& context() const noexcept { return context_; }
  double c() const noexcept { return c_; }
  std::size_t k() const noexcept { return context_.k; }
  std::size_t m() const noexcept { return m_; }

  std::span<const RankedEntry> level(std::size_t n) const {
    if (n >= levels_.size()) return {};
    return levels_[n];
  }

  bool contains(const NodeSet& s) const { return index_.count(s) > 0; }

  const RankedEntry* find(const NodeSet& s) const {
    auto it = index_.find(s);
    if (it == index_.end()) return nullptr;
    for (const auto& e : levels_[it->second])
      if (e.set == s) return &e;
    return nullptr;
  }

  std::size_t size() const { return index_.size(); }

 private:
  RankContext context_;
  double c_ = 1.0;
  std::size_t m_ = 0;
  std::vector<std::vector<RankedEntry>> levels_;
  std::unordered_map<NodeSet, std::size_t, NodeSetHash> index_;
};

struct EnumerateOptions {
  std::uint64_t budget = kDefaultEnumerationBudget;
  //! When false, a set with an admitted one-smaller subset is admitted
  //! without solving for its F (rank is monotone under adding nodes).
  bool exact = true;
};

inline void check_threshold(double c) {
  if (!(c > 0.0 && c <= 1.0))
    throw Error(ErrorKind::InvalidInput, "threshold c must lie in (0, 1], got " + std::to_string(c));
}

//! Enumerates L_{c,K} in canonical order.
template <SetObjective F>
RankedFamily enumerate_family(F& f, const RankContext& ctx, double c,
                              const EnumerateOptions& opt = {}) {
  check_threshold(c);
  if (ctx.degenerate()) throw Error(ErrorKind::Degenerate, "F_max equals F_min");
  const std::size_t n = f.ground_size();
  if (count_subsets_up_to(n, ctx.k, opt.budget) > opt.budget)
    throw Error(ErrorKind::BudgetExceeded, "L_{c,K} enumeration over sets of size <= " +
                                               std::to_string(ctx.k) + " exceeds budget " +
                                               std::to_string(opt.budget));
  RankedFamily family(ctx, c);
  for_each_subset_up_to(n, ctx.k, [&](const NodeSet& s) {
    if (!opt.exact && s.size() > 1) {
      const RankedEntry* best_sub = nullptr;
      for (Node v : s) {
        const RankedEntry* sub = family.find(s.without(v));
        if (sub && (!best_sub || sub->value < best_sub->value)) best_sub = sub;
      }
      if (best_sub) {
        family.add({s, best_sub->value, best_sub->rho, false});
        return;
      }
    }
    const double value = f(s);
    const double rho = (ctx.f_max - value) / (ctx.f_max - ctx.f_min);
    if (rho >= c - kRankTolerance) family.add({s, value, rho, true});
  });
  family.finalize();
  if (family.size() == 0) throw Error(ErrorKind::InvalidInput, "L_{c,K} is empty");
  return family;
}

}  // namespace spreadset

#endif  // SPREADSET_RANKING_HPP_
