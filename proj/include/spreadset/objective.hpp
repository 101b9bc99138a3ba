#ifndef SPREADSET_OBJECTIVE_HPP_
#define SPREADSET_OBJECTIVE_HPP_

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstddef>

#include "spreadset/node_set.hpp"

namespace spreadset {

//! A set function over the ground set {0..ground_size()-1}, defined on
//! nonempty sets. The search algorithms only need this much.
template <class F>
concept SetObjective = requires(F f, const NodeSet& s) {
  { f(s) } -> std::convertible_to<double>;
  { f.ground_size() } -> std::convertible_to<std::size_t>;
};

//! Objective values closer than this (relative) are treated as ties.
inline constexpr double kObjectiveTieTolerance = 1e-9;

inline double tie_tolerance(double reference) {
  return kObjectiveTieTolerance * std::max(1.0, std::abs(reference));
}

//! a < b by more than the tie tolerance.
inline bool strictly_less(double a, double b) { return a < b - tie_tolerance(b); }

inline bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= tie_tolerance(std::max(std::abs(a), std::abs(b)));
}

}  // namespace spreadset

#endif  // SPREADSET_OBJECTIVE_HPP_
