#include "route_util.hpp"

#include <cstdlib>
#include <stdexcept>

namespace aislesim::route {

double edge_cost(const AisleGraph& g, VertexId a, VertexId b) {
  if (a.row == b.row && std::abs(a.col - b.col) == 1) {
    return g.horizontal_cost(a.row, std::min(a.col, b.col));
  }
  if (a.col == b.col && std::abs(a.row - b.row) == 1 && g.is_boundary_col(a.col)) {
    return g.vertical_cost(a.col == 0 ? Side::Left : Side::Right, std::min(a.row, b.row));
  }
  throw std::logic_error("route: vertices are not adjacent");
}

void append_row_exit(const AisleGraph& g, VertexId pose, Heading h, std::vector<VertexId>& out) {
  const int step = h == Heading::Right ? 1 : -1;
  const int end = h == Heading::Right ? g.right_col() : 0;
  for (int c = pose.col + step; c != end + step; c += step) {
    out.push_back({pose.row, c});
  }
}

void append_vertical(VertexId from_boundary, int target_row, std::vector<VertexId>& out) {
  const int step = target_row > from_boundary.row ? 1 : -1;
  for (int r = from_boundary.row + step; r != target_row + step; r += step) {
    out.push_back({r, from_boundary.col});
  }
}

void append_row_advance(const AisleGraph& g, int row, Side entry, int target_col,
                        std::vector<VertexId>& out) {
  const int step = entry == Side::Left ? 1 : -1;
  const int start = entry == Side::Left ? 1 : g.interior_cols();
  for (int c = start; c != target_col + step; c += step) {
    out.push_back({row, c});
  }
}

std::vector<VertexId> path_to_row_target(const AisleGraph& g, VertexId pose, MaybeHeading heading,
                                         int target_row, int target_col) {
  if (!g.is_interior_col(target_col)) throw std::logic_error("route: target must be interior");
  std::vector<VertexId> path;
  if (g.is_interior_col(pose.col)) {
    if (!heading) throw std::logic_error("route: heading required inside a row");
    if (target_row == pose.row) {
      const int step = *heading == Heading::Right ? 1 : -1;
      if ((target_col - pose.col) * step < 0) {
        throw std::logic_error("route: own-row target lies behind the robot");
      }
      for (int c = pose.col + step; c != target_col + step; c += step) {
        path.push_back({pose.row, c});
      }
      return path;
    }
    append_row_exit(g, pose, *heading, path);
    const VertexId exit{pose.row, g.boundary_col(side_of(*heading))};
    if (target_row != exit.row) append_vertical(exit, target_row, path);
    append_row_advance(g, target_row, side_of(*heading), target_col, path);
    return path;
  }
  const Side side = pose.col == 0 ? Side::Left : Side::Right;
  if (target_row != pose.row) {
    append_vertical(pose, target_row, path);
  } else if (heading && side_of(*heading) == side) {
    // Straight turnaround at the row end is a reversal; detour over the
    // cheaper adjacent column vertex.
    double up = -1.0, down = -1.0;
    if (pose.row > 1) up = g.vertical_cost(side, pose.row - 1);
    if (pose.row < g.rows()) down = g.vertical_cost(side, pose.row);
    if (up < 0.0 && down < 0.0) throw std::logic_error("route: no detour available to re-enter row");
    const int via = (down < 0.0 || (up >= 0.0 && up <= down)) ? pose.row - 1 : pose.row + 1;
    path.push_back({via, pose.col});
    path.push_back({pose.row, pose.col});
  }
  append_row_advance(g, target_row, side, target_col, path);
  return path;
}

double path_cost(const AisleGraph& g, VertexId pose, std::span<const VertexId> path) {
  double total = 0.0;
  VertexId at = pose;
  for (VertexId v : path) {
    total += edge_cost(g, at, v);
    at = v;
  }
  return total;
}

}  // namespace aislesim::route
