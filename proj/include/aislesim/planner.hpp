#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "aislesim/world.hpp"

namespace aislesim {

// --- next-best-action building blocks ---

// Row-level energy test: the remaining energy covers reaching the row's
// entry end, crossing it fully, and the return leg from its far end. If one
// vertex of the row passes, all of them do.
bool energy_feasible(const AisleGraph& graph, const RobotState& robot, int row);

// Keeps the resource-feasible candidates that are also energy-feasible,
// unclaimed by other robots, and reachable this epoch (tasks behind the
// robot in its own row need a fresh entry and are dropped). The robot's own
// row is exempt from the claim filter.
std::vector<const Task*> filter_candidates(const AisleGraph& graph, const RobotState& robot,
                                           std::span<const Task* const> resource_feasible,
                                           const RowClaims& occupied);

// Row with the most expected completions, capped by what the remaining
// resource affords; ties to the cheapest-to-reach row, then the lowest index.
int select_row(std::span<const Task* const> candidates, const RobotState& robot,
               const PriorityClass& cls, const AisleGraph& graph);

// Full next-best-action decision: level descent, energy filtering, row
// selection, and the walk to the first feasible task along that row; returns
// to base when no level yields candidates.
Action next_action(const WorldView& world, const RobotState& robot, const RowClaims& occupied);

// Cheapest legal walk back to a base station (empty when already there).
std::vector<VertexId> plan_return(const AisleGraph& graph, const RobotState& robot);

// One coordinated decision round: robots decide in id order, each seeing the
// rows the earlier deciders and the other robots currently occupy (robots on
// the boundary columns occupy nothing). Returns one action per robot.
std::vector<Action> coordinate_step(const WorldView& world, std::span<const RobotState> robots);

// --- planners ---

enum class PlannerKind {
  NextBestAction,
  NaiveLawnmower,
  InformedLawnmower,
  SeriesGreedyPartialRow,
};

std::string_view to_string(PlannerKind kind);
PlannerKind planner_from_string(std::string_view name);
const std::vector<PlannerKind>& all_planners();

// A planner decides one robot action at a time; implementations may keep
// per-robot cursors or routes. One instance serves a whole mission.
class Planner {
 public:
  virtual ~Planner() = default;
  virtual Action decide(const WorldView& world, const RobotState& robot,
                        const RowClaims& others) = 0;
  // Budgets were restored at a base station.
  virtual void on_reset(int robot_id) { (void)robot_id; }
};

std::unique_ptr<Planner> make_planner(PlannerKind kind, const WorldView& world, int team_size);

}  // namespace aislesim
