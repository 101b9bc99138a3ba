#ifndef SPREADSET_NODE_SET_HPP_
#define SPREADSET_NODE_SET_HPP_

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <iterator>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace spreadset {

using Node = std::uint32_t;

//! A finite subset of the node range {0..N-1}.
//! Members are kept sorted and unique, so equality, hashing and ordering are
//! well defined. Ordering is canonical: by cardinality first, then
//! lexicographically on the sorted member list.
class NodeSet {
 public:
  using const_iterator = std::vector<Node>::const_iterator;

  NodeSet() = default;
  NodeSet(std::initializer_list<Node> members) : members_(members) { normalize(); }
  explicit NodeSet(std::vector<Node> members) : members_(std::move(members)) { normalize(); }

  static NodeSet range(std::size_t n) {
    std::vector<Node> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = static_cast<Node>(i);
    NodeSet s;
    s.members_ = std::move(all);
    return s;
  }

  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  const_iterator begin() const noexcept { return members_.begin(); }
  const_iterator end() const noexcept { return members_.end(); }
  Node operator[](std::size_t i) const { return members_[i]; }
  std::span<const Node> members() const noexcept { return members_; }
  Node max_member() const { return members_.back(); }

  bool contains(Node v) const {
    return std::binary_search(members_.begin(), members_.end(), v);
  }

  NodeSet with(Node v) const {
    NodeSet out;
    out.members_.reserve(members_.size() + 1);
    auto pos = std::lower_bound(members_.begin(), members_.end(), v);
    out.members_.assign(members_.begin(), pos);
    if (pos == members_.end() || *pos != v) out.members_.push_back(v);
    out.members_.insert(out.members_.end(), pos, members_.end());
    return out;
  }

  NodeSet without(Node v) const {
    NodeSet out;
    out.members_.reserve(members_.size());
    for (Node u : members_)
      if (u != v) out.members_.push_back(u);
    return out;
  }

  bool is_subset_of(const NodeSet& other) const {
    return std::includes(other.members_.begin(), other.members_.end(), members_.begin(),
                         members_.end());
  }

  friend NodeSet set_union(const NodeSet& a, const NodeSet& b) {
    NodeSet out;
    std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.members_));
    return out;
  }
  friend NodeSet set_intersection(const NodeSet& a, const NodeSet& b) {
    NodeSet out;
    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                          std::back_inserter(out.members_));
    return out;
  }
  friend NodeSet set_difference(const NodeSet& a, const NodeSet& b) {
    NodeSet out;
    std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out.members_));
    return out;
  }

  //! Complement within {0..n-1}.
  NodeSet complement(std::size_t n) const { return set_difference(range(n), *this); }

  friend bool operator==(const NodeSet&, const NodeSet&) = default;
  friend std::strong_ordering operator<=>(const NodeSet& a, const NodeSet& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
  }

  std::string to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < members_.size(); ++i) {
      if (i) s += ",";
      s += std::to_string(members_[i]);
    }
    return s + "}";
  }

  friend std::ostream& operator<<(std::ostream& os, const NodeSet& s) { return os << s.to_string(); }

 private:
  void normalize() {
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  }

  std::vector<Node> members_;
};

struct NodeSetHash {
  std::size_t operator()(const NodeSet& s) const noexcept {
    // FNV-1a over the member list.
    std::uint64_t h = 1469598103934665603ull;
    for (Node v : s) {
      h ^= v + 0x9e3779b9u;
      h *= 1099511628211ull;
    }
    return static_cast<std::size_t>(h ^ s.size());
  }
};

//! Number of k-subsets of an n-set, saturating at `cap` + 1.
inline std::uint64_t binomial_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // r * (n - k + i) / i stays integral at every step.
    unsigned __int128 next = static_cast<unsigned __int128>(r) * (n - k + i) / i;
    if (next > cap) return cap + 1;
    r = static_cast<std::uint64_t>(next);
  }
  return r;
}

//! Calls fn(const NodeSet&) for every k-subset of {0..n-1} in lexicographic order.
template <class Fn>
void for_each_combination(std::size_t n, std::size_t k, Fn&& fn) {
  if (k > n) return;
  std::vector<Node> idx(k);
  for (std::size_t i = 0; i < k; ++i) idx[i] = static_cast<Node>(i);
  while (true) {
    fn(NodeSet(idx));
    if (k == 0) return;
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

//! Every nonempty subset of {0..n-1} with cardinality at most max_size, in canonical order.
template <class Fn>
void for_each_subset_up_to(std::size_t n, std::size_t max_size, Fn&& fn) {
  for (std::size_t k = 1; k <= std::min(n, max_size); ++k) for_each_combination(n, k, fn);
}

//! Number of sets visited by for_each_subset_up_to, saturating at cap + 1.
inline std::uint64_t count_subsets_up_to(std::size_t n, std::size_t max_size, std::uint64_t cap) {
  std::uint64_t total = 0;
  for (std::size_t k = 1; k <= std::min(n, max_size); ++k) {
    total += binomial_capped(n, k, cap);
    if (total > cap) return cap + 1;
  }
  return total;
}

}  // namespace spreadset

template <>
struct std::hash<spreadset::NodeSet> : spreadset::NodeSetHash {};

#endif  // SPREADSET_NODE_SET_HPP_
