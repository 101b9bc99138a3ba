#ifndef SPREADSET_GREEDOID_HPP_
#define SPREADSET_GREEDOID_HPP_

#include <algorithm>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <variant>
#include <vector>

#include "spreadset/error.hpp"
#include "spreadset/graph.hpp"
#include "spreadset/node_set.hpp"
#include "spreadset/ranking.hpp"

namespace spreadset {

/***
 *** Axiom checking
 ***/

struct AxiomReport {
  //! Witness lists are truncated at this many entries; the counts are exact.
  static constexpr std::size_t kMaxWitnesses = 64;

  bool g1 = false;
  std::size_t g2_count = 0;
  std::size_t g3_count = 0;
  std::vector<NodeSet> g2_violations;                       // A with no feasible A \ {a}
  std::vector<std::pair<NodeSet, NodeSet>> g3_violations;  // (X, Y), |X| > |Y|

  bool ok() const { return g1 && g2_count == 0 && g3_count == 0; }
};

namespace detail {

inline bool intersects(const NodeSet& a, const NodeSet& b) {
  auto i = a.begin();
  auto j = b.begin();
  while (i != a.end() && j != b.end()) {
    if (*i == *j) return true;
    if (*i < *j) ++i; else ++j;
  }
  return false;
}

}  // namespace detail

//! Exhaustive check of G1 (empty set feasible), G2 (accessibility) and G3
//! (exchange) on an explicit family.
inline AxiomReport check_axioms(std::span<const NodeSet> family) {
  std::unordered_set<NodeSet, NodeSetHash> members(family.begin(), family.end());
  std::vector<NodeSet> sets(members.begin(), members.end());
  std::sort(sets.begin(), sets.end());

  AxiomReport report;
  report.g1 = members.count(NodeSet{}) > 0;

  Node ground = 0;
  for (const auto& s : sets)
    if (!s.empty()) ground = std::max<Node>(ground, s.max_member() + 1);

  for (const auto& a : sets) {
    if (a.empty()) continue;
    bool accessible = std::any_of(a.begin(), a.end(),
                                  [&](Node v) { return members.count(a.without(v)) > 0; });
    if (!accessible) {
      ++report.g2_count;
      if (report.g2_violations.size() < AxiomReport::kMaxWitnesses) report.g2_violations.push_back(a);
    }
  }

  // ext[Y] = nodes x outside Y with Y + x feasible; G3 for (X, Y) then asks
  // whether X meets ext[Y].
  std::vector<NodeSet> ext(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    std::vector<Node> xs;
    for (Node x = 0; x < ground; ++x)
      if (!sets[i].contains(x) && members.count(sets[i].with(x))) xs.push_back(x);
    ext[i] = NodeSet(std::move(xs));
  }
  for (std::size_t yi = 0; yi < sets.size(); ++yi) {
    for (std::size_t xi = sets.size(); xi-- > 0;) {
      if (sets[xi].size() <= sets[yi].size()) break;
      if (!detail::intersects(sets[xi], ext[yi])) {
        ++report.g3_count;
        if (report.g3_violations.size() < AxiomReport::kMaxWitnesses)
          report.g3_violations.emplace_back(sets[xi], sets[yi]);
      }
    }
  }
  return report;
}

/***
 *** Feasible families
 ***/

enum class Construction { CaseI, CaseII, Manual };

inline const char* to_string(Construction c) {
  switch (c) {
    case Construction::CaseI: return "case1";
    case Construction::CaseII: return "case2";
    case Construction::Manual: return "manual";
  }
  return "?";
}

//! Why a set is feasible.
enum class AdmissionRule {
  Empty,            // G1
  SubsetOfBase,     // Case I: proper subset of H
  BaseSet,          // Case I: H itself
  PartnerCover,     // Case II: pairwise intersection with the partner-cover property
  BaseLevel,        // Case II: member of G_m extending a feasible (m-1)-set
  SupersetLadder,   // member of G_n extending a feasible (n-1)-set, n > m
  Declared,         // manual family
};

inline const char* to_string(AdmissionRule r) {
  switch (r) {
    case AdmissionRule::Empty: return "empty";
    case AdmissionRule::SubsetOfBase: return "subset_of_base";
    case AdmissionRule::BaseSet: return "base_set";
    case AdmissionRule::PartnerCover: return "partner_cover";
    case AdmissionRule::BaseLevel: return "base_level";
    case AdmissionRule::SupersetLadder: return "superset_ladder";
    case AdmissionRule::Declared: return "declared";
  }
  return "?";
}

struct Admission {
  NodeSet set;
  AdmissionRule rule = AdmissionRule::Declared;
  std::optional<NodeSet> via;  // feasible one-smaller subset that admitted it
  std::vector<Node> partners;  // Case II partner list for sets below m
};

//! Feasible sets of a greedoid built from L_{c,K}: levels 0..m hold the
//! sub-base sets (level m is the base), levels m+1..K the superset ladder.
class FeasibleFamily {
 public:
  FeasibleFamily(std::size_t ground_size, std::size_t m, std::size_t k, Construction construction)
      : ground_(ground_size), m_(m), k_(k), construction_(construction) {
    levels_.resize(std::max(k, m) + 1);
  }

  void add(Admission a) {
    const std::size_t n = a.set.size();
    if (n >= levels_.size()) levels_.resize(n + 1);
    if (!index_.insert(a.set).second) return;
    levels_[n].push_back(std::move(a));
  }

  bool contains(const NodeSet& s) const { return index_.count(s) > 0; }

  std::span<const Admission> level(std::size_t n) const {
    if (n >= levels_.size()) return {};
    return levels_[n];
  }

  const Admission* find(const NodeSet& s) const {
    if (!contains(s)) return nullptr;
    for (const auto& a : levels_[s.size()])
      if (a.set == s) return &a;
    return nullptr;
  }

  //! All feasible sets in canonical order.
  std::vector<NodeSet> sets() const {
    std::vector<NodeSet> out;
    out.reserve(index_.size());
    for (const auto& lvl : levels_)
      for (const auto& a : lvl) out.push_back(a.set);
    std::sort(out.begin(), out.end());
    return out;
  }

  std::size_t size() const { return index_.size(); }
  std::size_t ground_size() const { return ground_; }
  std::size_t m() const { return m_; }
  std::size_t k() const { return k_; }
  std::size_t max_level() const { return levels_.size() - 1; }
  Construction construction() const { return construction_; }
  const std::optional<NodeSet>& base_set() const { return base_set_; }
  void set_base_set(NodeSet h) { base_set_ = std::move(h); }

  void sort_levels() {
    for (auto& lvl : levels_)
      std::sort(lvl.begin(), lvl.end(),
                [](const Admission& a, const Admission& b) { return a.set < b.set; });
  }

 private:
  std::size_t ground_;
  std::size_t m_;
  std::size_t k_;
  Construction construction_;
  std::optional<NodeSet> base_set_;
  std::vector<std::vector<Admission>> levels_;
  std::unordered_set<NodeSet, NodeSetHash> index_;
};

/***
 *** T1-T4 ladder
 ***/

struct LadderReport {
  std::vector<NodeSet> t1_violations;                       // base-level sets outside G_m
  std::vector<NodeSet> t2_violations;                       // A in g_n without a feasible (n-1)-subset
  std::vector<std::pair<NodeSet, NodeSet>> t3_violations;  // (B, A) with no p in A\B, B+p in g_n
  std::vector<NodeSet> t4_missing;                          // should be in G^_n but is not
  std::vector<NodeSet> t4_extra;                            // in G^_n without qualifying

  bool t1() const { return t1_violations.empty(); }
  bool t2() const { return t2_violations.empty(); }
  bool t3() const { return t3_violations.empty(); }
  bool t4() const { return t4_missing.empty() && t4_extra.empty(); }
  bool ok() const { return t1() && t2() && t3() && t4(); }
};

inline LadderReport check_T_ladder(const FeasibleFamily& f, const RankedFamily& ranked) {
  LadderReport r;
  const std::size_t m = f.m();
  auto in_level = [&](const NodeSet& s) { return f.contains(s); };

  for (const auto& a : f.level(m))
    if (!ranked.contains(a.set)) r.t1_violations.push_back(a.set);

  for (std::size_t n = 1; n <= m; ++n) {
    for (const auto& a : f.level(n)) {
      bool has_sub = std::any_of(a.set.begin(), a.set.end(),
                                 [&](Node v) { return in_level(a.set.without(v)); });
      if (!has_sub) r.t2_violations.push_back(a.set);
    }
    std::vector<NodeSet> lower;
    for (const auto& b : f.level(n - 1)) lower.push_back(b.set);
    for (const auto& b : lower) {
      for (const auto& a : f.level(n)) {
        bool extends = false;
        for (Node p : a.set)
          if (!b.contains(p) && in_level(b.with(p))) { extends = true; break; }
        if (!extends) r.t3_violations.emplace_back(b, a.set);
      }
    }
  }

  for (std::size_t n = m + 1; n <= std::max(f.max_level(), ranked.k()); ++n) {
    for (const auto& e : ranked.level(n)) {
      bool qualifies = std::any_of(e.set.begin(), e.set.end(),
                                   [&](Node v) { return in_level(e.set.without(v)); });
      if (qualifies && !f.contains(e.set)) r.t4_missing.push_back(e.set);
    }
    for (const auto& a : f.level(n)) {
      bool qualifies = ranked.contains(a.set) &&
                       std::any_of(a.set.begin(), a.set.end(),
                                   [&](Node v) { return in_level(a.set.without(v)); });
      if (!qualifies) r.t4_extra.push_back(a.set);
    }
  }
  return r;
}

namespace detail {

//! Adds every member of G_n (n = m+1..K) that extends a feasible (n-1)-set.
inline void add_superset_ladder(FeasibleFamily& f, const RankedFamily& ranked) {
  for (std::size_t n = f.m() + 1; n <= ranked.k(); ++n) {
    for (const auto& e : ranked.level(n)) {
      for (Node v : e.set) {
        NodeSet sub = e.set.without(v);
        if (f.contains(sub)) {
          f.add({e.set, AdmissionRule::SupersetLadder, sub, {}});
          break;
        }
      }
    }
  }
}

inline void verify_or_throw(const FeasibleFamily& f, const char* what) {
  auto sets = f.sets();
  if (!check_axioms(sets).ok())
    throw std::logic_error(std::string(what) + " produced a family violating the greedoid axioms");
}

}  // namespace detail

//! Case I: pick H in G_m; feasible sets are the empty set, every subset of H,
//! and the members of G_n (n > m) reached from H by single additions.
inline FeasibleFamily build_case1(const RankedFamily& ranked, std::optional<NodeSet> h = {}) {
  const std::size_t m = ranked.m();
  auto base_level = ranked.level(m);
  if (m == 0 || base_level.empty()) throw Error(ErrorKind::InvalidInput, "G_m is empty");
  NodeSet base = h ? *h : base_level.front().set;
  if (base.size() != m || !ranked.contains(base))
    throw Error(ErrorKind::InvalidInput, "H = " + base.to_string() + " is not a member of G_m");

  FeasibleFamily f(ranked.context().node_count, m, ranked.k(), Construction::CaseI);
  f.set_base_set(base);
  f.add({NodeSet{}, AdmissionRule::Empty, {}, {}});
  for (std::size_t n = 1; n < m; ++n) {
    for_each_combination(m, n, [&](const NodeSet& positions) {
      std::vector<Node> members;
      for (Node i : positions) members.push_back(base[i]);
      NodeSet sub(std::move(members));
      f.add({sub, AdmissionRule::SubsetOfBase, sub.without(sub.max_member()), {}});
    });
  }
  f.add({base, AdmissionRule::BaseSet, base.without(base.max_member()), {}});
  detail::add_superset_ladder(f, ranked);
  f.sort_levels();
  detail::verify_or_throw(f, "Case I");
  return f;
}

/***
 *** Case II
 ***/

//! Sub-base levels g_n for n <= m, built backwards from g_m = G_m: g_n holds
//! the n-sets that are the intersection of two members of g_{n+1}.
//! levels[n] is g_n in canonical order; levels[0] is unused.
inline std::vector<std::vector<NodeSet>> intersection_levels(const RankedFamily& ranked) {
  const std::size_t m = ranked.m();
  std::vector<std::vector<NodeSet>> g(m + 1);
  for (const auto& e : ranked.level(m)) g[m].push_back(e.set);
  for (std::size_t n = m; n-- > 1;) {
    // Two distinct (n+1)-sets meet in an n-set exactly when both contain it.
    std::map<NodeSet, std::size_t> parents;
    for (const auto& a : g[n + 1])
      for (Node v : a) ++parents[a.without(v)];
    for (const auto& [b, count] : parents)
      if (count >= 2) g[n].push_back(b);
    std::sort(g[n].begin(), g[n].end());
  }
  return g;
}

//! X_{p,k}: members of g_k containing p. Y_{p,k}: members W of g_{k-1} with
//! W + p in g_k.
struct PartnerIndex {
  std::size_t k = 0;
  std::map<Node, std::vector<NodeSet>> x;
  std::map<Node, std::vector<NodeSet>> y;
};

inline PartnerIndex build_partner_index(std::span<const NodeSet> lower, std::span<const NodeSet> upper,
                                        std::size_t k) {
  PartnerIndex idx;
  idx.k = k;
  for (const auto& a : upper)
    for (Node p : a) idx.x[p].push_back(a);
  for (const auto& w : lower)
    for (const auto& a : upper)
      if (w.is_subset_of(a)) idx.y[set_difference(a, w)[0]].push_back(w);
  return idx;
}

//! If b has partners p_1..p_l (b + p_i in upper) such that every member of
//! upper contains some p_i, returns such a list, smallest ids first.
inline std::optional<std::vector<Node>> partner_cover(const NodeSet& b,
                                                      std::span<const NodeSet> upper) {
  std::vector<Node> partners;
  for (const auto& a : upper)
    if (b.is_subset_of(a)) partners.push_back(set_difference(a, b)[0]);
  std::sort(partners.begin(), partners.end());
  const NodeSet all(partners);
  std::vector<char> covered(upper.size(), 0);
  for (const auto& a : upper)
    if (!detail::intersects(a, all)) return std::nullopt;
  std::vector<Node> chosen;
  for (Node p : all) {
    bool useful = false;
    for (std::size_t i = 0; i < upper.size(); ++i) {
      if (!covered[i] && upper[i].contains(p)) {
        covered[i] = 1;
        useful = true;
      }
    }
    if (useful) chosen.push_back(p);
  }
  return chosen;
}

struct ConditionsNotMet {
  std::size_t level = 0;
  std::string reason;
};

using Case2Result = std::variant<FeasibleFamily, ConditionsNotMet>;

//! Case II: feasible sub-base sets are pairwise intersections that satisfy
//! the partner-cover property and extend a feasible set one level down; the
//! base level keeps the members of G_m extending a feasible (m-1)-set.
inline Case2Result build_case2(const RankedFamily& ranked) {
  const std::size_t m = ranked.m();
  if (m == 0 || ranked.level(m).empty()) return ConditionsNotMet{m, "G_m is empty"};
  auto g = intersection_levels(ranked);

  FeasibleFamily f(ranked.context().node_count, m, ranked.k(), Construction::CaseII);
  f.add({NodeSet{}, AdmissionRule::Empty, {}, {}});
  for (std::size_t n = 1; n < m; ++n) {
    if (g[n].empty())
      return ConditionsNotMet{n, "no pairwise intersections of size " + std::to_string(n)};
    for (const auto& b : g[n]) {
      std::optional<NodeSet> via;
      if (n == 1) {
        via = NodeSet{};
      } else {
        for (Node v : b)
          if (f.contains(b.without(v))) { via = b.without(v); break; }
      }
      if (!via) continue;
      auto partners = partner_cover(b, g[n + 1]);
      if (!partners) continue;
      f.add({b, AdmissionRule::PartnerCover, via, std::move(*partners)});
    }
    if (f.level(n).empty())
      return ConditionsNotMet{n, "no set of size " + std::to_string(n) +
                                     " has the partner-cover property and a feasible subset"};
  }
  for (const auto& e : ranked.level(m)) {
    for (Node v : e.set) {
      NodeSet sub = e.set.without(v);
      if (f.contains(sub)) {
        f.add({e.set, AdmissionRule::BaseLevel, sub, {}});
        break;
      }
    }
  }
  if (f.level(m).empty())
    return ConditionsNotMet{m, "no member of G_m extends a feasible set"};
  detail::add_superset_ladder(f, ranked);
  f.sort_levels();

  auto sets = f.sets();
  auto axioms = check_axioms(sets);
  if (!axioms.ok()) {
    std::size_t level = 0;
    if (!axioms.g2_violations.empty()) level = axioms.g2_violations.front().size();
    else if (!axioms.g3_violations.empty()) level = axioms.g3_violations.front().second.size() + 1;
    return ConditionsNotMet{level, "constructed family violates the greedoid axioms"};
  }
  auto ladder = check_T_ladder(f, ranked);
  if (!ladder.ok()) {
    std::size_t level = 0;
    if (!ladder.t3_violations.empty()) level = ladder.t3_violations.front().second.size();
    return ConditionsNotMet{level, "constructed family violates the T1-T4 ladder"};
  }
  return f;
}

//! Case II when it succeeds, otherwise Case I with the first base set.
inline FeasibleFamily build_auto(const RankedFamily& ranked) {
  auto r = build_case2(ranked);
  if (auto* f = std::get_if<FeasibleFamily>(&r)) return std::move(*f);
  return build_case1(ranked);
}

/***
 *** Feasible vertex covers
 ***/

struct CoverFeasibility {
  bool feasible = false;
  bool larger_than_m = false;
  //! Feasible subsets of the cover with at least m elements.
  std::vector<NodeSet> subsets;
  //! Every listed subset lies in L_{c,K}.
  bool subsets_near_optimal = true;
};

inline CoverFeasibility cover_feasibility(const Graph& g, const FeasibleFamily& f,
                                          const RankedFamily& ranked, const NodeSet& cover) {
  if (!is_vertex_cover(g, cover)) throw Error(ErrorKind::NotVertexCover, cover.to_string());
  CoverFeasibility r;
  r.feasible = f.contains(cover);
  r.larger_than_m = cover.size() > f.m();
  if (!r.feasible) return r;
  for (const auto& s : f.sets()) {
    if (s.size() < f.m() || !s.is_subset_of(cover)) continue;
    r.subsets.push_back(s);
    if (!ranked.contains(s)) r.subsets_near_optimal = false;
  }
  return r;
}

//! Repeated single-element deletions inside the family, from a down to the
//! empty set. Empty result when a is infeasible or some step gets stuck.
inline std::vector<NodeSet> deletion_chain(const FeasibleFamily& f, const NodeSet& a) {
  if (!f.contains(a)) return {};
  std::vector<NodeSet> chain{a};
  NodeSet cur = a;
  while (!cur.empty()) {
    std::optional<NodeSet> next;
    for (Node v : cur)
      if (f.contains(cur.without(v))) { next = cur.without(v); break; }
    if (!next) return {};
    cur = *next;
    chain.push_back(cur);
  }
  return chain;
}

}  // namespace spreadset

#endif  // SPREADSET_GREEDOID_HPP_
