#ifndef SPREADSET_SPREADSET_HPP_
#define SPREADSET_SPREADSET_HPP_

#include "spreadset/baselines.hpp"
#include "spreadset/error.hpp"
#include "spreadset/graph.hpp"
#include "spreadset/greedoid.hpp"
#include "spreadset/greedoid_graph.hpp"
#include "spreadset/hitting.hpp"
#include "spreadset/node_set.hpp"
#include "spreadset/objective.hpp"
#include "spreadset/ranking.hpp"

#endif  // SPREADSET_SPREADSET_HPP_
