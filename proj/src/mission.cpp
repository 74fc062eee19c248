#include "aislesim/mission.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "aislesim/kernels.hpp"

namespace aislesim {

double Mission::total_gain() const {
  double total = 0.0;
  for (const Task& t : tasks) total += classes.at(t.level).gain_ratio * t.actual_cost;
  return total;
}

Mission make_mission(std::shared_ptr<const AisleGraph> graph, PriorityClassSet classes,
                     std::vector<Task> tasks, double resource_budget, double energy_budget,
                     VertexId start) {
  if (!graph) throw std::invalid_argument("mission: missing graph");
  if (classes.empty()) throw std::invalid_argument("mission: no priority classes");
  if (!(resource_budget > 0.0)) throw std::invalid_argument("mission: resource budget must be positive");
  if (!(energy_budget >= 0.0)) throw std::invalid_argument("mission: energy budget must be nonnegative");
  if (!graph->is_base(start)) throw std::invalid_argument("mission: start must be a base station");

  std::vector<bool> used(static_cast<size_t>(graph->rows()) * (graph->interior_cols() + 2), false);
  for (const Task& t : tasks) {
    if (!graph->contains(t.vertex) || !graph->is_interior_col(t.vertex.col)) {
      throw std::invalid_argument("mission: task vertex must be an interior vertex");
    }
    if (t.level < 1 || t.level > classes.max_level()) {
      throw std::invalid_argument("mission: task level not in the class set");
    }
    if (!(t.actual_cost >= 0.0)) throw std::invalid_argument("mission: negative task cost");
    const size_t idx = static_cast<size_t>(t.vertex.row - 1) * (graph->interior_cols() + 2) + t.vertex.col;
    if (used[idx]) throw std::invalid_argument("mission: duplicate task vertex");
    used[idx] = true;
  }

  Mission m;
  m.graph = std::move(graph);
  m.classes = std::move(classes);
  m.tasks = std::move(tasks);
  m.resource_budget = resource_budget;
  m.energy_budget = energy_budget;
  m.start = start;
  return m;
}

Mission generate_mission(std::shared_ptr<const AisleGraph> graph, PriorityClassSet classes,
                         const TaskDistribution& dist, double resource_budget,
                         double energy_budget, VertexId start, const RandomSource& rng,
                         std::uint64_t trial) {
  if (!graph) throw std::invalid_argument("mission: missing graph");
  const int m = graph->rows();
  const int n = graph->interior_cols();
  if (dist.count < 0 || dist.count > m * n) {
    throw std::invalid_argument("mission: more tasks than interior vertices");
  }
  if (dist.level_weights.empty() ||
      dist.level_weights.size() != static_cast<size_t>(classes.max_level())) {
    throw std::invalid_argument("mission: level weights must cover every class");
  }
  const double weight_sum =
      std::accumulate(dist.level_weights.begin(), dist.level_weights.end(), 0.0);
  if (!(weight_sum > 0.0)) throw std::invalid_argument("mission: level weights must sum > 0");

  // Distinct interior vertices via a partial shuffle.
  RngStream place = rng.stream(trial, 0, stream_purpose::kTaskPlacement);
  std::vector<int> cells(static_cast<size_t>(m) * n);
  std::iota(cells.begin(), cells.end(), 0);
  std::vector<Task> tasks(static_cast<size_t>(dist.count));
  for (int t = 0; t < dist.count; ++t) {
    const size_t pick = t + static_cast<size_t>(place.next_below(cells.size() - t));
    std::swap(cells[t], cells[pick]);
    tasks[t].vertex = {cells[t] / n + 1, cells[t] % n + 1};
  }

  RngStream level = rng.stream(trial, 0, stream_purpose::kTaskLevel);
  for (Task& t : tasks) {
    double u = level.next_unit() * weight_sum;
    int lv = 1;
    for (size_t i = 0; i < dist.level_weights.size(); ++i) {
      u -= dist.level_weights[i];
      if (u < 0.0) {
        lv = static_cast<int>(i) + 1;
        break;
      }
    }
    t.level = lv;
  }

  // Costs: one batch draw per task in task order, then the inverse CDF per
  // level; capped draws are replaced from the same stream.
  RngStream cost = rng.stream(trial, 0, stream_purpose::kTaskCost);
  std::vector<double> u(tasks.size());
  for (double& v : u) v = cost.next_unit();
  const double cap =
      dist.max_cost_fraction > 0.0 ? dist.max_cost_fraction * resource_budget : 0.0;
  for (int lv = 1; lv <= classes.max_level(); ++lv) {
    std::vector<double> us;
    std::vector<size_t> lvl_idx;  // indices of this level
    for (size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].level == lv) {
        us.push_back(u[i]);
        lvl_idx.push_back(i);
      }
    }
    if (us.empty()) continue;
    std::vector<double> costs(us.size());
    kernels::exp_icdf(us, classes.at(lv).mean_cost, costs);
    for (size_t k = 0; k < costs.size(); ++k) {
      double c = costs[k];
      while (cap > 0.0 && c >= cap) c = cost.exponential(classes.at(lv).mean_cost);
      tasks[lvl_idx[k]].actual_cost = c;
    }
  }

  return make_mission(std::move(graph), std::move(classes), std::move(tasks), resource_budget,
                      energy_budget, start);
}

}  // namespace aislesim
