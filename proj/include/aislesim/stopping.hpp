#pragma once

#include <algorithm>
#include <span>
#include <vector>

#include "aislesim/types.hpp"

namespace aislesim {

// Optimal stopping boundary for one priority level:
//   g(p, s) = mu(s)/lambda_s * (e^{lambda_s p} - 1 - lambda_s p).
// It is 0 at p = 0 and strictly increasing and convex in p. A trip state
// (p, q) with q >= g(p, s) makes another level-s task not worth attempting.
double stop_boundary(double resource, const PriorityClass& cls);

// Batched curve evaluation (kernel-backed); out[i] = g(resource[i], cls).
void stop_boundary_batch(std::span<const double> resource, const PriorityClass& cls,
                         std::span<double> out);

// A level is feasible iff some resource remains and the trip gain lies
// strictly below the boundary; the boundary itself is a stop.
bool level_feasible(const TripState& state, const PriorityClass& cls);

// Level descent shared by the candidate sampler and the planner. Walks down
// from start_level; an infeasible level drags every lower level with a mean
// cost at least as large down with it. Returns the first feasible level with
// pending tasks, or 0 when returning to base is the optimal action.
template <typename HasPending>
int descend_level(const TripState& state, int start_level, const PriorityClassSet& classes,
                  HasPending&& has_pending) {
  int s = std::min(start_level, classes.max_level());
  while (s > 0) {
    if (level_feasible(state, classes.at(s))) {
      if (has_pending(s)) return s;
      --s;
      continue;
    }
    while (s > 1 && classes.at(s - 1).mean_cost >= classes.at(s).mean_cost) --s;
    --s;
  }
  return 0;
}

// All pending tasks of the level picked by the descent; level 0 and an empty
// set when no level is feasible.
struct CandidateSet {
  std::vector<const Task*> tasks;
  int level = 0;
};
CandidateSet sample_candidates(const TripState& state, int start_level,
                               std::span<const Task> tasks, const PriorityClassSet& classes);

// How the boundary curve of the higher of two levels sits relative to the
// lower one's (requires low.level < high.level, mu(low) < mu(high)).
enum class BoundaryOrder {
  HigherAlwaysAbove,  // the mean-cost rule: the lower level never preempts
  HigherAlwaysBelow,  // the lower level's curve dominates for all p > 0
  CrossesOnce,        // order swaps at a single crossing p0 > 0
};

struct BoundaryRelation {
  BoundaryOrder order = BoundaryOrder::HigherAlwaysAbove;
  double crossing_resource = 0.0;  // p0; meaningful only for CrossesOnce
};

BoundaryRelation classify_boundary_pair(const PriorityClass& low, const PriorityClass& high);

}  // namespace aislesim
