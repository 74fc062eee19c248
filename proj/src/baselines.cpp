#include "aislesim/baselines.hpp"

#include <algorithm>
#include <cmath>

#include "route_util.hpp"

namespace aislesim {

namespace {

Action return_to_base(const AisleGraph& g, const RobotState& robot) {
  Action a;
  a.kind = Action::Kind::ReturnToBase;
  a.path = g.plan_return_path(robot.pose, robot.heading);
  return a;
}

// Energy gate shared by the surveyors: commit to a walk only if the robot
// can still get home from its end.
bool walk_affordable(const AisleGraph& g, const RobotState& robot,
                     const std::vector<VertexId>& path, VertexId target, Heading in_row) {
  const double cost = route::path_cost(g, robot.pose, path);
  return robot.energy - cost >= g.return_cost(target, in_row);
}

class Lawnmower final : public Planner {
 public:
  Lawnmower(const WorldView& world, int team_size, bool informed) : informed_(informed) {
    // Sweep from the extremal row nearest the deployment base toward the
    // other end; with a team the sweep order is dealt round-robin so each
    // robot owns a disjoint row set.
    const int m = world.graph.rows();
    const bool from_top = world.start.row - 1 <= m - world.start.row;
    rows_.resize(static_cast<size_t>(team_size));
    for (int k = 0; k < m; ++k) {
      const int row = from_top ? 1 + k : m - k;
      rows_[static_cast<size_t>(k % team_size)].push_back(row);
    }
    cursor_.assign(static_cast<size_t>(team_size), 0);
  }

  Action decide(const WorldView& world, const RobotState& robot, const RowClaims& others) override {
    const AisleGraph& g = world.graph;
    if (world.pending.total() == 0) return return_to_base(g, robot);
    const double p = robot.trip.resource;

    // Finish the row in progress first. The naive surveyor stops at every
    // pending vertex on its way out even with the budget at zero; those
    // attempts abort without waste and the vertices are revisited later.
    if (g.is_interior_col(robot.pose.col)) {
      const Heading h = *robot.heading;
      const auto& cols = world.pending.row_cols(robot.pose.row);
      auto it = h == Heading::Right ? cols.upper_bound(robot.pose.col)
                                    : cols.lower_bound(robot.pose.col);
      while (true) {
        if (h == Heading::Right) {
          if (it == cols.end()) break;
        } else {
          if (it == cols.begin()) break;
        }
        const int col = h == Heading::Right ? *it : *std::prev(it);
        if (attemptable(world, robot, {robot.pose.row, col})) {
          return make_perform(world, robot, robot.pose.row, col);
        }
        if (h == Heading::Right) {
          ++it;
        } else {
          --it;
        }
      }
    }

    // A drained budget ends the trip once the current row is out of targets.
    if (!informed_ && p <= 0.0) return return_to_base(g, robot);

    // Then the remaining rows of this robot's share, in sweep order.
    auto& order = rows_[static_cast<size_t>(robot.id)];
    auto& cur = cursor_[static_cast<size_t>(robot.id)];
    const bool mid_row = g.is_interior_col(robot.pose.col);
    const Side side = mid_row ? side_of(*robot.heading)
                              : (robot.pose.col == 0 ? Side::Left : Side::Right);
    for (size_t step = 0; step < order.size(); ++step) {
      const size_t idx = (cur + step) % order.size();
      const int row = order[idx];
      if (mid_row && row == robot.pose.row) continue;
      if (others.contains(row)) continue;
      const auto& cols = world.pending.row_cols(row);
      if (cols.empty()) continue;
      // First target scanning from the side the robot will enter on.
      std::optional<int> col;
      if (side == Side::Left) {
        for (int c : cols) {
          if (attemptable(world, robot, {row, c})) {
            col = c;
            break;
          }
        }
      } else {
        for (auto rit = cols.rbegin(); rit != cols.rend(); ++rit) {
          if (attemptable(world, robot, {row, *rit})) {
            col = *rit;
            break;
          }
        }
      }
      if (!col) continue;
      cur = idx;
      return make_perform(world, robot, row, *col);
    }

    // Nothing this robot can work on right now.
    return return_to_base(g, robot);
  }

 private:
  bool attemptable(const WorldView& world, const RobotState& robot, VertexId v) const {
    if (!informed_) return true;
    const int ti = world.pending.task_at(v);
    const Task& t = world.tasks[static_cast<size_t>(ti)];
    return robot.trip.resource > world.classes.at(t.level).mean_cost;
  }

  Action make_perform(const WorldView& world, const RobotState& robot, int row, int col) const {
    const AisleGraph& g = world.graph;
    Action a;
    a.kind = Action::Kind::Perform;
    a.row = row;
    a.target = {row, col};
    a.path = route::path_to_row_target(g, robot.pose, robot.heading, row, col);
    const Heading in_row =
        (g.is_interior_col(robot.pose.col) && row == robot.pose.row)
            ? *robot.heading
            : heading_from(g.entry_side(robot.pose, robot.heading));
    if (!walk_affordable(g, robot, a.path, a.target, in_row)) {
      return return_to_base(g, robot);
    }
    return a;
  }

  bool informed_;
  std::vector<std::vector<int>> rows_;
  std::vector<size_t> cursor_;
};

class SeriesGpr final : public Planner {
 public:
  SeriesGpr(const WorldView& world, int team_size) : routes_(static_cast<size_t>(team_size)) {
    (void)world;
  }

  Action decide(const WorldView& world, const RobotState& robot, const RowClaims& others) override {
    const AisleGraph& g = world.graph;
    if (world.pending.total() == 0) return return_to_base(g, robot);
    Route& rt = routes_[static_cast<size_t>(robot.id)];
    if (robot.trip.resource <= 0.0) {
      rt.valid = false;
      return return_to_base(g, robot);
    }
    if (!rt.valid) plan(world, robot, others);

    for (int attempt = 0; attempt < 2; ++attempt) {
      while (rt.si < rt.segs.size()) {
        const Segment& seg = rt.segs[rt.si];
        if (rt.ci >= seg.cols.size()) {
          ++rt.si;
          rt.ci = 0;
          continue;
        }
        const int col = seg.cols[rt.ci];
        const int ti = world.pending.task_at({seg.row, col});
        if (ti < 0 || !world.tasks[static_cast<size_t>(ti)].pending()) {
          ++rt.ci;
          continue;
        }
        const bool own =
            g.is_interior_col(robot.pose.col) && seg.row == robot.pose.row;
        if (!own && others.contains(seg.row)) break;  // replan around the conflict
        ++rt.ci;
        Action a;
        a.kind = Action::Kind::Perform;
        a.row = seg.row;
        a.target = {seg.row, col};
        a.path = route::path_to_row_target(g, robot.pose, robot.heading, seg.row, col);
        const Heading in_row = own ? *robot.heading
                                   : heading_from(g.entry_side(robot.pose, robot.heading));
        if (!walk_affordable(g, robot, a.path, a.target, in_row)) {
          rt.valid = false;
          return return_to_base(g, robot);
        }
        return a;
      }
      rt.valid = false;
      if (attempt == 0) plan(world, robot, others);
      if (!rt.valid || rt.segs.empty()) break;
    }
    rt.valid = false;
    return return_to_base(g, robot);
  }

  void on_reset(int robot_id) override { routes_[static_cast<size_t>(robot_id)].valid = false; }

 private:
  struct Segment {
    int row = 0;
    Side entry = Side::Left;
    std::vector<int> cols;
  };
  struct Route {
    std::vector<Segment> segs;
    size_t si = 0;
    size_t ci = 0;
    bool valid = false;
  };

  void plan(const WorldView& world, const RobotState& robot, const RowClaims& others) {
    const AisleGraph& g = world.graph;
    Route& rt = routes_[static_cast<size_t>(robot.id)];
    rt = Route{};

    std::vector<bool> excluded(static_cast<size_t>(g.rows() + 1), false);
    for (int r : others.rows()) excluded[static_cast<size_t>(r)] = true;
    // A mid-row replan cannot re-enter the row it is walking; a later replan
    // from the base station picks its leftovers up.
    if (g.is_interior_col(robot.pose.col)) excluded[static_cast<size_t>(robot.pose.row)] = true;
    for (size_t other = 0; other < routes_.size(); ++other) {
      if (other == static_cast<size_t>(robot.id) || !routes_[other].valid) continue;
      const Route& orr = routes_[other];
      for (size_t si = orr.si; si < orr.segs.size(); ++si) {
        excluded[static_cast<size_t>(orr.segs[si].row)] = true;
      }
    }

    // Local copy of pending columns we can consume while planning.
    std::vector<std::vector<int>> local(static_cast<size_t>(g.rows() + 1));
    for (int row = 1; row <= g.rows(); ++row) {
      if (excluded[static_cast<size_t>(row)]) continue;
      const auto& cols = world.pending.row_cols(row);
      local[static_cast<size_t>(row)].assign(cols.begin(), cols.end());
    }

    double p_hat = robot.trip.resource;
    double t_hat = robot.energy;
    int at_row = robot.pose.row;
    Side at_side;
    if (g.is_interior_col(robot.pose.col)) {
      at_side = side_of(*robot.heading);
      t_hat -= g.forward_exit_cost(robot.pose, *robot.heading);
    } else {
      at_side = robot.pose.col == 0 ? Side::Left : Side::Right;
    }

    while (true) {
      int best_row = 0;
      double best_ratio = 0.0;
      size_t best_k = 0;
      double best_move = 0.0;
      double best_res = 0.0;
      for (int row = 1; row <= g.rows(); ++row) {
        auto& cols = local[static_cast<size_t>(row)];
        if (cols.empty()) continue;
        // A row cannot directly follow itself: the robot would still be
        // inside it, and the new segment expects a fresh opposite-end entry.
        if (!rt.segs.empty() && row == at_row) continue;
        const double move = g.vertical_span_cost(at_side, at_row, row) + g.row_traverse_cost(row);
        if (t_hat - move < g.return_cost_after_row(row, opposite(at_side))) continue;
        double cum = 0.0;
        double gain = 0.0;
        for (size_t k = 0; k < cols.size(); ++k) {
          const int col = at_side == Side::Left ? cols[k] : cols[cols.size() - 1 - k];
          const Task& t = world.tasks[static_cast<size_t>(world.pending.task_at({row, col}))];
          const PriorityClass& cls = world.classes.at(t.level);
          if (cum + cls.mean_cost >= p_hat) break;
          cum += cls.mean_cost;
          gain += cls.gain_ratio * cls.mean_cost;
          const double ratio = gain / (move + cum);
          if (ratio > best_ratio) {
            best_ratio = ratio;
            best_row = row;
            best_k = k + 1;
            best_move = move;
            best_res = cum;
          }
        }
      }
      if (best_row == 0) break;

      Segment seg;
      seg.row = best_row;
      seg.entry = at_side;
      auto& cols = local[static_cast<size_t>(best_row)];
      for (size_t k = 0; k < best_k; ++k) {
        seg.cols.push_back(at_side == Side::Left ? cols[k] : cols[cols.size() - 1 - k]);
      }
      if (at_side == Side::Left) {
        cols.erase(cols.begin(), cols.begin() + static_cast<long>(best_k));
      } else {
        cols.erase(cols.end() - static_cast<long>(best_k), cols.end());
      }
      rt.segs.push_back(std::move(seg));
      p_hat -= best_res;
      t_hat -= best_move;
      at_row = best_row;
      at_side = opposite(at_side);
    }
    rt.valid = true;
  }

  std::vector<Route> routes_;
};

}  // namespace

std::unique_ptr<Planner> make_lawnmower(const WorldView& world, int team_size, bool informed) {
  return std::make_unique<Lawnmower>(world, team_size, informed);
}

std::unique_ptr<Planner> make_series_gpr(const WorldView& world, int team_size) {
  return std::make_unique<SeriesGpr>(world, team_size);
}

}  // namespace aislesim
