#include "aislesim/engine.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "aislesim/world.hpp"
#include "route_util.hpp"

namespace aislesim {

namespace {

constexpr double kEnergyTolerance = 1e-9;

[[noreturn]] void violation(const std::string& msg) {
  throw std::runtime_error("execution invariant violated: " + msg);
}

}  // namespace

MissionTrace execute(const Mission& mission, PlannerKind kind, int team_size) {
  if (team_size < 1) throw std::invalid_argument("execute: team size must be >= 1");
  const AisleGraph& g = *mission.graph;
  for (const Task& t : mission.tasks) {
    if (t.actual_cost >= mission.resource_budget) {
      throw std::invalid_argument("execute: a task costs at least the full resource budget");
    }
  }

  std::vector<Task> tasks = mission.tasks;
  PendingIndex pending(g, tasks, mission.classes.max_level());
  WorldView world{g,
                  mission.classes,
                  tasks,
                  pending,
                  mission.resource_budget,
                  mission.energy_budget,
                  mission.start};

  MissionTrace trace;
  trace.planner = std::string(to_string(kind));
  trace.team_size = team_size;
  trace.rows = g.rows();
  trace.cols = g.interior_cols();
  trace.resource_budget = mission.resource_budget;
  trace.energy_budget = mission.energy_budget;
  trace.task_count = tasks.size();
  trace.total_gain = mission.total_gain();

  std::unique_ptr<Planner> planner = make_planner(kind, world, team_size);

  std::vector<RobotState> robots(static_cast<size_t>(team_size));
  std::vector<bool> parked(static_cast<size_t>(team_size), false);
  for (int i = 0; i < team_size; ++i) {
    robots[static_cast<size_t>(i)] =
        RobotState{i, mission.start, std::nullopt,
                   TripState{mission.resource_budget, 0.0}, mission.energy_budget};
  }

  const auto walk = [&](RobotState& r, const std::vector<VertexId>& path) {
    for (VertexId v : path) {
      if (!g.is_legal_move(r.pose, r.heading, v)) violation("illegal move in planned path");
      const double c = route::edge_cost(g, r.pose, v);
      r.energy -= c;
      if (r.energy < -kEnergyTolerance) violation("energy budget exhausted mid-walk");
      trace.events.push_back({TraceEvent::Kind::Move, r.id, r.pose, v, c, 0.0});
      if (v.row == r.pose.row) {
        r.heading = v.col > r.pose.col ? Heading::Right : Heading::Left;
      } else {
        r.heading.reset();
      }
      r.pose = v;
    }
  };

  std::size_t idle_guard = 0;
  bool any_active = true;
  while (any_active) {
    any_active = false;
    for (int id = 0; id < team_size; ++id) {
      RobotState& r = robots[static_cast<size_t>(id)];
      if (parked[static_cast<size_t>(id)]) continue;
      any_active = true;

      std::vector<int> claimed;
      for (int other = 0; other < team_size; ++other) {
        if (other == id || parked[static_cast<size_t>(other)]) continue;
        const VertexId pose = robots[static_cast<size_t>(other)].pose;
        if (g.is_interior_col(pose.col)) claimed.push_back(pose.row);
      }

      const Action action = planner->decide(world, r, RowClaims(std::move(claimed)));
      if (action.kind == Action::Kind::Perform) {
        walk(r, action.path);
        if (r.pose != action.target) violation("perform path does not end at its target");
        const int ti = pending.task_at(r.pose);
        if (ti < 0 || !tasks[static_cast<size_t>(ti)].pending()) {
          violation("perform targets a vertex without a pending task");
        }
        Task& task = tasks[static_cast<size_t>(ti)];
        if (r.trip.resource < 0.0) violation("attempt with negative resource");
        trace.events.push_back({TraceEvent::Kind::Attempt, id, {}, r.pose, 0.0, 0.0});
        if (task.actual_cost <= r.trip.resource) {
          const double gain = mission.classes.at(task.level).gain_ratio * task.actual_cost;
          r.trip.resource -= task.actual_cost;
          r.trip.gain += gain;
          pending.mark_completed(ti, tasks);
          task.status = TaskStatus::Completed;
          trace.events.push_back(
              {TraceEvent::Kind::Complete, id, {}, r.pose, task.actual_cost, gain});
        } else {
          const double wasted = r.trip.resource;
          r.trip.resource = 0.0;
          trace.events.push_back({TraceEvent::Kind::Abort, id, {}, r.pose, 0.0, wasted});
        }
      } else {
        if (action.path.empty()) {
          if (!g.is_base(r.pose)) violation("return action with no path away from a base");
          parked[static_cast<size_t>(id)] = true;
          continue;
        }
        walk(r, action.path);
        if (!g.is_base(r.pose)) violation("return path does not end at a base station");
        r.trip = TripState{mission.resource_budget, 0.0};
        r.energy = mission.energy_budget;
        r.heading.reset();  // docked; the robot leaves the station fresh
        trace.events.push_back({TraceEvent::Kind::Reset, id, {}, r.pose, 0.0, 0.0});
        planner->on_reset(id);
      }

      if (++idle_guard > 200'000'000) violation("mission failed to terminate");
    }
  }

  trace.completed = pending.total() == 0;
  return trace;
}

Metrics compute_metrics(const MissionTrace& trace) {
  Metrics m;
  for (const TraceEvent& e : trace.events) {
    switch (e.kind) {
      case TraceEvent::Kind::Move: m.path_length += e.cost; break;
      case TraceEvent::Kind::Attempt: m.visited++; break;
      case TraceEvent::Kind::Complete:
        m.completed++;
        m.gain += e.amount;
        break;
      case TraceEvent::Kind::Abort:
        m.aborted++;
        m.waste += e.amount;
        break;
      case TraceEvent::Kind::Reset: break;
    }
  }
  m.gain_fraction = trace.total_gain > 0.0 ? m.gain / trace.total_gain : 0.0;
  if (m.visited > 0) {
    m.rv = m.gain_fraction / static_cast<double>(m.visited);
    m.wv = m.waste / static_cast<double>(m.visited);
  }
  return m;
}

namespace {

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

void write_trace(std::ostream& os, const MissionTrace& trace) {
  os << "# aislesim-trace v1\n";
  os << "planner " << trace.planner << '\n';
  os << "team " << trace.team_size << '\n';
  os << "graph " << trace.rows << ' ' << trace.cols << '\n';
  os << "budgets " << fmt_double(trace.resource_budget) << ' ' << fmt_double(trace.energy_budget)
     << '\n';
  os << "tasks " << trace.task_count << ' ' << fmt_double(trace.total_gain) << '\n';
  os << "completed " << (trace.completed ? 1 : 0) << '\n';
  for (const TraceEvent& e : trace.events) {
    switch (e.kind) {
      case TraceEvent::Kind::Move:
        os << "move " << e.robot << ' ' << e.from.row << ' ' << e.from.col << ' ' << e.at.row
           << ' ' << e.at.col << ' ' << fmt_double(e.cost) << '\n';
        break;
      case TraceEvent::Kind::Attempt:
        os << "attempt " << e.robot << ' ' << e.at.row << ' ' << e.at.col << '\n';
        break;
      case TraceEvent::Kind::Complete:
        os << "complete " << e.robot << ' ' << e.at.row << ' ' << e.at.col << ' '
           << fmt_double(e.cost) << ' ' << fmt_double(e.amount) << '\n';
        break;
      case TraceEvent::Kind::Abort:
        os << "abort " << e.robot << ' ' << e.at.row << ' ' << e.at.col << ' '
           << fmt_double(e.amount) << '\n';
        break;
      case TraceEvent::Kind::Reset:
        os << "reset " << e.robot << ' ' << e.at.row << ' ' << e.at.col << '\n';
        break;
    }
  }
}

MissionTrace read_trace(std::istream& is) {
  MissionTrace trace;
  std::string line;
  if (!std::getline(is, line) || line != "# aislesim-trace v1") {
    throw std::runtime_error("trace: unrecognized header");
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    TraceEvent e;
    if (tag == "planner") {
      ls >> trace.planner;
    } else if (tag == "team") {
      ls >> trace.team_size;
    } else if (tag == "graph") {
      ls >> trace.rows >> trace.cols;
    } else if (tag == "budgets") {
      ls >> trace.resource_budget >> trace.energy_budget;
    } else if (tag == "tasks") {
      ls >> trace.task_count >> trace.total_gain;
    } else if (tag == "completed") {
      int c = 0;
      ls >> c;
      trace.completed = c != 0;
    } else if (tag == "move") {
      e.kind = TraceEvent::Kind::Move;
      ls >> e.robot >> e.from.row >> e.from.col >> e.at.row >> e.at.col >> e.cost;
      trace.events.push_back(e);
    } else if (tag == "attempt") {
      e.kind = TraceEvent::Kind::Attempt;
      ls >> e.robot >> e.at.row >> e.at.col;
      trace.events.push_back(e);
    } else if (tag == "complete") {
      e.kind = TraceEvent::Kind::Complete;
      ls >> e.robot >> e.at.row >> e.at.col >> e.cost >> e.amount;
      trace.events.push_back(e);
    } else if (tag == "abort") {
      e.kind = TraceEvent::Kind::Abort;
      ls >> e.robot >> e.at.row >> e.at.col >> e.amount;
      trace.events.push_back(e);
    } else if (tag == "reset") {
      e.kind = TraceEvent::Kind::Reset;
      ls >> e.robot >> e.at.row >> e.at.col;
      trace.events.push_back(e);
    } else {
      throw std::runtime_error("trace: unknown record '" + tag + "'");
    }
    if (ls.fail()) throw std::runtime_error("trace: malformed record '" + line + "'");
  }
  return trace;
}

}  // namespace aislesim
