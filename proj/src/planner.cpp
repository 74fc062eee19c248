#include "aislesim/planner.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "aislesim/baselines.hpp"
#include "aislesim/stopping.hpp"
#include "route_util.hpp"

namespace aislesim {

namespace {

// Inside its own row the robot can only reach columns ahead of it.
bool col_reachable(const AisleGraph& g, const RobotState& robot, int row, int col) {
  if (!g.is_interior_col(robot.pose.col) || row != robot.pose.row) return true;
  return *robot.heading == Heading::Right ? col >= robot.pose.col : col <= robot.pose.col;
}

Action return_action(const AisleGraph& g, const RobotState& robot) {
  Action a;
  a.kind = Action::Kind::ReturnToBase;
  a.path = g.plan_return_path(robot.pose, robot.heading);
  return a;
}

}  // namespace

bool energy_feasible(const AisleGraph& graph, const RobotState& robot, int row) {
  const double access = graph.row_access_cost(robot.pose, robot.heading, row);
  const double cross = graph.row_traverse_cost(row);
  const Side exit = graph.exit_side_after(robot.pose, robot.heading, row);
  const double back = graph.return_cost_after_row(row, exit);
  return robot.energy >= access + cross + back;
}

std::vector<const Task*> filter_candidates(const AisleGraph& graph, const RobotState& robot,
                                           std::span<const Task* const> resource_feasible,
                                           const RowClaims& occupied) {
  std::vector<const Task*> out;
  const bool mid_row = graph.is_interior_col(robot.pose.col);
  for (const Task* t : resource_feasible) {
    const int row = t->vertex.row;
    const bool own = mid_row && row == robot.pose.row;
    if (!own && occupied.contains(row)) continue;
    if (!col_reachable(graph, robot, row, t->vertex.col)) continue;
    if (!energy_feasible(graph, robot, row)) continue;
    out.push_back(t);
  }
  return out;
}

int select_row(std::span<const Task* const> candidates, const RobotState& robot,
               const PriorityClass& cls, const AisleGraph& graph) {
  if (candidates.empty()) throw std::invalid_argument("select_row: empty candidate set");
  std::map<int, int> counts;
  for (const Task* t : candidates) counts[t->vertex.row]++;
  const double cap = std::floor(robot.trip.resource / cls.mean_cost);

  // Rows iterate in ascending order, so on full ties the lowest index wins.
  int best_row = 0;
  double best_score = -1.0;
  double best_access = 0.0;
  for (const auto& [row, count] : counts) {
    const double score = std::min(static_cast<double>(count), cap);
    const double access = graph.row_access_cost(robot.pose, robot.heading, row);
    if (best_row == 0 || score > best_score || (score == best_score && access < best_access)) {
      best_row = row;
      best_score = score;
      best_access = access;
    }
  }
  return best_row;
}

Action next_action(const WorldView& world, const RobotState& robot, const RowClaims& occupied) {
  const AisleGraph& g = world.graph;
  int start = world.classes.max_level();
  while (true) {
    const int level = descend_level(robot.trip, start, world.classes,
                                    [&](int lv) { return world.pending.any_at_level(lv); });
    if (level == 0) return return_action(g, robot);
    const PriorityClass& cls = world.classes.at(level);

    struct RowCand {
      int row = 0;
      int count = 0;
    };
    std::vector<RowCand> cands;
    const bool mid_row = g.is_interior_col(robot.pose.col);
    for (int row = 1; row <= g.rows(); ++row) {
      const auto& cols = world.pending.level_cols(level, row);
      if (cols.empty()) continue;
      int count = static_cast<int>(cols.size());
      const bool own = mid_row && row == robot.pose.row;
      if (own) {
        count = *robot.heading == Heading::Right
                    ? static_cast<int>(std::distance(cols.lower_bound(robot.pose.col), cols.end()))
                    : static_cast<int>(
                          std::distance(cols.begin(), cols.upper_bound(robot.pose.col)));
      } else if (occupied.contains(row)) {
        continue;
      }
      if (count == 0) continue;
      if (!energy_feasible(g, robot, row)) continue;
      cands.push_back({row, count});
    }

    if (cands.empty()) {
      start = level - 1;
      if (start == 0) return return_action(g, robot);
      continue;
    }

    // Mid-row the robot keeps working its own row while it still offers
    // tasks of the chosen level; rows compete against each other only at
    // row ends (the selection quantifies over the rows it is not on).
    const RowCand* best = nullptr;
    if (mid_row) {
      for (const RowCand& c : cands) {
        if (c.row == robot.pose.row) best = &c;
      }
    }
    if (best == nullptr) {
      const double cap = std::floor(robot.trip.resource / cls.mean_cost);
      double best_score = -1.0;
      double best_access = 0.0;
      for (const RowCand& c : cands) {
        const double score = std::min(static_cast<double>(c.count), cap);
        const double access = g.row_access_cost(robot.pose, robot.heading, c.row);
        if (best == nullptr || score > best_score ||
            (score == best_score && access < best_access)) {
          best = &c;
          best_score = score;
          best_access = access;
        }
      }
    }

    // First feasible task along the row from its entry end (or ahead of the
    // robot when it already works this row).
    const auto& cols = world.pending.level_cols(level, best->row);
    int target_col = 0;
    if (mid_row && best->row == robot.pose.row) {
      target_col = *robot.heading == Heading::Right ? *cols.lower_bound(robot.pose.col)
                                                    : *std::prev(cols.upper_bound(robot.pose.col));
    } else {
      target_col = g.entry_side(robot.pose, robot.heading) == Side::Left ? *cols.begin()
                                                                         : *cols.rbegin();
    }

    Action a;
    a.kind = Action::Kind::Perform;
    a.row = best->row;
    a.target = {best->row, target_col};
    a.path = route::path_to_row_target(g, robot.pose, robot.heading, best->row, target_col);
    return a;
  }
}

std::vector<VertexId> plan_return(const AisleGraph& graph, const RobotState& robot) {
  return graph.plan_return_path(robot.pose, robot.heading);
}

std::vector<Action> coordinate_step(const WorldView& world, std::span<const RobotState> robots) {
  std::vector<Action> actions;
  actions.reserve(robots.size());
  for (size_t i = 0; i < robots.size(); ++i) {
    std::vector<int> rows;
    for (size_t other = 0; other < robots.size(); ++other) {
      if (other == i) continue;
      if (world.graph.is_interior_col(robots[other].pose.col)) {
        rows.push_back(robots[other].pose.row);
      }
    }
    // Earlier deciders hold their selected rows for the rest of the round.
    for (const Action& a : actions) {
      if (a.kind == Action::Kind::Perform) rows.push_back(a.row);
    }
    actions.push_back(next_action(world, robots[i], RowClaims(std::move(rows))));
  }
  return actions;
}

std::string_view to_string(PlannerKind kind) {
  switch (kind) {
    case PlannerKind::NextBestAction: return "nbap";
    case PlannerKind::NaiveLawnmower: return "nlm";
    case PlannerKind::InformedLawnmower: return "ilm";
    case PlannerKind::SeriesGreedyPartialRow: return "sgpr";
  }
  return "unknown";
}

PlannerKind planner_from_string(std::string_view name) {
  for (PlannerKind k : all_planners()) {
    if (to_string(k) == name) return k;
  }
  throw std::invalid_argument("unknown planner: " + std::string(name));
}

const std::vector<PlannerKind>& all_planners() {
  static const std::vector<PlannerKind> kinds = {
      PlannerKind::NextBestAction,
      PlannerKind::NaiveLawnmower,
      PlannerKind::InformedLawnmower,
      PlannerKind::SeriesGreedyPartialRow,
  };
  return kinds;
}

namespace {

class NextBestActionPlanner final : public Planner {
 public:
  Action decide(const WorldView& world, const RobotState& robot, const RowClaims& others) override {
    return next_action(world, robot, others);
  }
};

}  // namespace

std::unique_ptr<Planner> make_planner(PlannerKind kind, const WorldView& world, int team_size) {
  switch (kind) {
    case PlannerKind::NextBestAction: return std::make_unique<NextBestActionPlanner>();
    case PlannerKind::NaiveLawnmower: return make_lawnmower(world, team_size, /*informed=*/false);
    case PlannerKind::InformedLawnmower: return make_lawnmower(world, team_size, /*informed=*/true);
    case PlannerKind::SeriesGreedyPartialRow: return make_series_gpr(world, team_size);
  }
  throw std::invalid_argument("make_planner: unknown planner kind");
}

}  // namespace aislesim
