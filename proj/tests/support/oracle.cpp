#include "support/oracle.hpp"

#include <limits>
#include <queue>
#include <stdexcept>

namespace testsupport {

using aislesim::AisleGraph;
using aislesim::Heading;
using aislesim::MaybeHeading;
using aislesim::Side;
using aislesim::VertexId;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

StateGraph StateGraph::from(const AisleGraph& g) {
  StateGraph sg;
  sg.rows = g.rows();
  sg.cols = g.interior_cols();
  sg.adj.assign(static_cast<size_t>(sg.size()), {});
  const int m = sg.rows;
  const int n = sg.cols;

  for (int i = 1; i <= m; ++i) {
    // In-row motion: one edge forward, never backward.
    for (int j = 1; j <= n; ++j) {
      sg.adj[sg.index(i, j, 1)].push_back({sg.index(i, j + 1, 1), g.horizontal_cost(i, j)});
      sg.adj[sg.index(i, j, 2)].push_back({sg.index(i, j - 1, 2), g.horizontal_cost(i, j - 1)});
    }
    // Boundary columns: vertical moves always allowed, row entry only for a
    // fresh state (an immediate turnaround would reverse the exit move).
    for (int dir : {0, 2}) {
      if (i > 1) sg.adj[sg.index(i, 0, dir)].push_back(
          {sg.index(i - 1, 0, 0), g.vertical_cost(Side::Left, i - 1)});
      if (i < m) sg.adj[sg.index(i, 0, dir)].push_back(
          {sg.index(i + 1, 0, 0), g.vertical_cost(Side::Left, i)});
    }
    sg.adj[sg.index(i, 0, 0)].push_back({sg.index(i, 1, 1), g.horizontal_cost(i, 0)});
    for (int dir : {0, 1}) {
      if (i > 1) sg.adj[sg.index(i, n + 1, dir)].push_back(
          {sg.index(i - 1, n + 1, 0), g.vertical_cost(Side::Right, i - 1)});
      if (i < m) sg.adj[sg.index(i, n + 1, dir)].push_back(
          {sg.index(i + 1, n + 1, 0), g.vertical_cost(Side::Right, i)});
    }
    sg.adj[sg.index(i, n + 1, 0)].push_back({sg.index(i, n, 2), g.horizontal_cost(i, n)});
  }
  return sg;
}

std::vector<double> dijkstra(const StateGraph& sg, int start_state) {
  std::vector<double> dist(static_cast<size_t>(sg.size()), kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[static_cast<size_t>(start_state)] = 0.0;
  heap.push({0.0, start_state});
  while (!heap.empty()) {
    const auto [d, s] = heap.top();
    heap.pop();
    if (d > dist[static_cast<size_t>(s)]) continue;
    for (const auto& [to, c] : sg.adj[static_cast<size_t>(s)]) {
      if (d + c < dist[static_cast<size_t>(to)]) {
        dist[static_cast<size_t>(to)] = d + c;
        heap.push({d + c, to});
      }
    }
  }
  return dist;
}

int state_of(const StateGraph& sg, VertexId pose, MaybeHeading heading) {
  int dir = 0;
  if (heading) dir = *heading == Heading::Right ? 1 : 2;
  if (pose.col >= 1 && pose.col <= sg.cols && !heading) {
    throw std::invalid_argument("oracle: heading required inside a row");
  }
  return sg.index(pose.row, pose.col, dir);
}

namespace {

double best_base_distance(const AisleGraph& g, const StateGraph& sg,
                          const std::vector<double>& dist) {
  double best = kInf;
  for (VertexId b : g.base_stations()) {
    for (int dir = 0; dir < 3; ++dir) {
      best = std::min(best, dist[static_cast<size_t>(sg.index(b.row, b.col, dir))]);
    }
  }
  return best;
}

}  // namespace

double min_return_cost(const AisleGraph& g, VertexId pose, MaybeHeading heading) {
  const StateGraph sg = StateGraph::from(g);
  const auto dist = dijkstra(sg, state_of(sg, pose, heading));
  return best_base_distance(g, sg, dist);
}

double through_row_return_cost_from(const AisleGraph& g, VertexId pose, MaybeHeading heading,
                                    int row, Side entry) {
  const StateGraph sg = StateGraph::from(g);
  const auto from_start = dijkstra(sg, state_of(sg, pose, heading));
  const int n = sg.cols;

  double cross = 0.0;
  for (int j = 0; j <= n; ++j) cross += g.horizontal_cost(row, j);

  const int entry_col = entry == Side::Left ? 0 : n + 1;
  const int exit_col = entry == Side::Left ? n + 1 : 0;
  const int exit_dir = entry == Side::Left ? 1 : 2;
  const double reach = from_start[static_cast<size_t>(sg.index(row, entry_col, 0))];
  if (!(reach < kInf)) return kInf;
  const auto back = dijkstra(sg, sg.index(row, exit_col, exit_dir));
  return reach + cross + best_base_distance(g, sg, back);
}

double through_row_return_cost(const AisleGraph& g, VertexId pose, MaybeHeading heading, int row) {
  return std::min(through_row_return_cost_from(g, pose, heading, row, Side::Left),
                  through_row_return_cost_from(g, pose, heading, row, Side::Right));
}

}  // namespace testsupport
