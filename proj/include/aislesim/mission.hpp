#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "aislesim/aisle_graph.hpp"
#include "aislesim/rng.hpp"
#include "aislesim/types.hpp"

namespace aislesim {

// A fully materialized mission: graph, level set, tasks with their hidden
// ground-truth costs, and the per-trip budgets. Actual costs are drawn once
// at generation (or ingested from data) and never change.
struct Mission {
  std::shared_ptr<const AisleGraph> graph;
  PriorityClassSet classes;
  std::vector<Task> tasks;
  double resource_budget = 0.0;
  double energy_budget = 0.0;
  VertexId start{};  // deployment base station

  // Ground-truth obtainable gain, the denominator of the r/v ratio.
  double total_gain() const;
};

// Validates vertices (interior, unique), levels, budgets and the start base.
Mission make_mission(std::shared_ptr<const AisleGraph> graph, PriorityClassSet classes,
                     std::vector<Task> tasks, double resource_budget, double energy_budget,
                     VertexId start);

// Random mission: `count` tasks on distinct interior vertices, levels drawn
// from `level_weights` (index 0 = level 1), costs exponential with the level
// mean. Costs are redrawn while >= max_cost_fraction * resource budget so
// that every task stays completable in one trip; 0 disables the cap.
struct TaskDistribution {
  int count = 0;
  std::vector<double> level_weights;
  double max_cost_fraction = 0.95;
};

Mission generate_mission(std::shared_ptr<const AisleGraph> graph, PriorityClassSet classes,
                         const TaskDistribution& dist, double resource_budget,
                         double energy_budget, VertexId start, const RandomSource& rng,
                         std::uint64_t trial);

}  // namespace aislesim
