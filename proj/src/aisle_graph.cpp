#include "aislesim/aisle_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

namespace aislesim {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument("aisle graph: " + msg); }

}  // namespace

AisleGraph::Costs AisleGraph::Costs::uniform(int rows, int interior_cols, double cost) {
  Costs c;
  c.horizontal.assign(static_cast<size_t>(rows), std::vector<double>(interior_cols + 1, cost));
  for (auto& row : c.horizontal) {
    row.front() = 0.0;
    row.back() = 0.0;
  }
  const size_t spans = rows > 1 ? static_cast<size_t>(rows - 1) : 0;
  c.vertical_left.assign(spans, cost);
  c.vertical_right.assign(spans, cost);
  return c;
}

AisleGraph AisleGraph::build(int rows, int interior_cols, Costs costs, std::vector<VertexId> bases) {
  if (rows < 1 || interior_cols < 1) fail("need at least one row and one interior column");
  if (costs.horizontal.size() != static_cast<size_t>(rows)) fail("horizontal cost rows mismatch");
  for (const auto& hr : costs.horizontal) {
    if (hr.size() != static_cast<size_t>(interior_cols + 1)) fail("horizontal cost cols mismatch");
    if (hr.front() != 0.0 || hr.back() != 0.0) fail("connector edges into virtual columns must cost 0");
    for (double c : hr) {
      if (!(c >= 0.0)) fail("negative or non-finite horizontal edge cost");
    }
  }
  const size_t spans = rows > 1 ? static_cast<size_t>(rows - 1) : 0;
  if (costs.vertical_left.size() != spans || costs.vertical_right.size() != spans) {
    fail("vertical cost span mismatch");
  }
  for (double c : costs.vertical_left) {
    if (!(c >= 0.0)) fail("negative or non-finite vertical edge cost");
  }
  for (double c : costs.vertical_right) {
    if (!(c >= 0.0)) fail("negative or non-finite vertical edge cost");
  }
  if (bases.empty()) fail("at least one base station required");

  AisleGraph g;
  g.rows_ = rows;
  g.cols_ = interior_cols;
  g.costs_ = std::move(costs);

  std::sort(bases.begin(), bases.end());
  bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
  g.base_mask_.assign(static_cast<size_t>(rows) * (interior_cols + 2), false);
  for (VertexId b : bases) {
    if (!g.contains(b)) fail("base station outside the graph");
    if (!g.is_boundary_col(b.col)) fail("base station must sit on a virtual boundary column");
    g.base_mask_[static_cast<size_t>(b.row - 1) * (interior_cols + 2) + b.col] = true;
  }
  g.bases_ = std::move(bases);

  g.hprefix_.assign(static_cast<size_t>(rows), std::vector<double>(interior_cols + 2, 0.0));
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j <= interior_cols; ++j) {
      g.hprefix_[i][j + 1] = g.hprefix_[i][j] + g.costs_.horizontal[i][j];
    }
  }
  g.vprefix_left_.assign(static_cast<size_t>(rows), 0.0);
  g.vprefix_right_.assign(static_cast<size_t>(rows), 0.0);
  for (int i = 1; i < rows; ++i) {
    g.vprefix_left_[i] = g.vprefix_left_[i - 1] + g.costs_.vertical_left[i - 1];
    g.vprefix_right_[i] = g.vprefix_right_[i - 1] + g.costs_.vertical_right[i - 1];
  }

  g.compute_return_table();
  return g;
}

double AisleGraph::horizontal_cost(int row, int j) const {
  return costs_.horizontal[static_cast<size_t>(row - 1)][static_cast<size_t>(j)];
}

double AisleGraph::vertical_cost(Side side, int lower) const {
  const auto& v = side == Side::Left ? costs_.vertical_left : costs_.vertical_right;
  return v[static_cast<size_t>(lower - 1)];
}

bool AisleGraph::is_base(VertexId v) const {
  if (!contains(v)) return false;
  return base_mask_[static_cast<size_t>(v.row - 1) * (cols_ + 2) + v.col];
}

bool AisleGraph::has_base_on(Side side) const {
  const int col = boundary_col(side);
  for (VertexId b : bases_) {
    if (b.col == col) return true;
  }
  return false;
}

std::vector<VertexId> AisleGraph::legal_moves(VertexId pose, MaybeHeading heading) const {
  if (!contains(pose)) fail("pose outside the graph");
  std::vector<VertexId> out;
  if (is_interior_col(pose.col)) {
    if (!heading) fail("a robot inside a row always has a heading");
    out.push_back({pose.row, pose.col + (*heading == Heading::Right ? 1 : -1)});
    return out;
  }
  if (pose.row > 1) out.push_back({pose.row - 1, pose.col});
  if (pose.row < rows_) out.push_back({pose.row + 1, pose.col});
  if (pose.col == 0) {
    // Entering the row is a fresh start unless it undoes the exit move.
    if (!(heading && *heading == Heading::Left)) out.push_back({pose.row, 1});
  } else {
    if (!(heading && *heading == Heading::Right)) out.push_back({pose.row, cols_});
  }
  return out;
}

bool AisleGraph::is_legal_move(VertexId from, MaybeHeading heading, VertexId to) const {
  if (!contains(from) || !contains(to)) return false;
  if (is_interior_col(from.col)) {
    if (!heading) return false;
    return to.row == from.row && to.col == from.col + (*heading == Heading::Right ? 1 : -1);
  }
  if (to.col == from.col && std::abs(to.row - from.row) == 1) return true;
  if (to.row != from.row) return false;
  if (from.col == 0) {
    return to.col == 1 && !(heading && *heading == Heading::Left);
  }
  return to.col == cols_ && !(heading && *heading == Heading::Right);
}

double AisleGraph::row_traverse_cost(int row) const {
  if (row < 1 || row > rows_) fail("row out of range");
  return hprefix_[row - 1][cols_] - hprefix_[row - 1][1];
}

double AisleGraph::vertical_span_cost(Side side, int row_a, int row_b) const {
  const auto& pre = side == Side::Left ? vprefix_left_ : vprefix_right_;
  return std::abs(pre[static_cast<size_t>(row_a - 1)] - pre[static_cast<size_t>(row_b - 1)]);
}

std::optional<double> AisleGraph::base_return_vertical_opt(int row, Side exit_col) const {
  const int col = boundary_col(exit_col);
  std::optional<double> best;
  for (VertexId b : bases_) {
    if (b.col != col) continue;
    const double c = vertical_span_cost(exit_col, row, b.row);
    if (!best || c < *best) best = c;
  }
  return best;
}

double AisleGraph::base_return_vertical(int row, Heading heading_in_row) const {
  if (row < 1 || row > rows_) fail("row out of range");
  // Heading Left ends the row on column 0.
  const Side side = heading_in_row == Heading::Left ? Side::Left : Side::Right;
  const auto c = base_return_vertical_opt(row, side);
  if (!c) fail("no base station on the required column");
  return *c;
}

Side AisleGraph::entry_side(VertexId pose, MaybeHeading heading) const {
  if (is_boundary_col(pose.col)) return pose.col == 0 ? Side::Left : Side::Right;
  if (!heading) fail("a robot inside a row always has a heading");
  return side_of(*heading);
}

Side AisleGraph::exit_side_after(VertexId pose, MaybeHeading heading, int target_row) const {
  if (is_interior_col(pose.col) && target_row == pose.row) {
    // Continuing the current row: it is left at the end ahead.
    return side_of(*heading);
  }
  return opposite(entry_side(pose, heading));
}

double AisleGraph::forward_exit_cost(VertexId pose, Heading heading) const {
  const auto& pre = hprefix_[static_cast<size_t>(pose.row - 1)];
  if (heading == Heading::Right) return pre[static_cast<size_t>(cols_ + 1)] - pre[pose.col];
  return pre[static_cast<size_t>(pose.col)];
}

double AisleGraph::row_access_cost(VertexId pose, MaybeHeading heading, int target_row) const {
  if (!contains(pose)) fail("pose outside the graph");
  if (target_row < 1 || target_row > rows_) fail("row out of range");
  if (is_boundary_col(pose.col)) {
    const Side side = pose.col == 0 ? Side::Left : Side::Right;
    // A robot that just exited this very row cannot turn straight around; it
    // must detour over an adjacent row vertex first.
    if (target_row == pose.row && heading && side_of(*heading) == side) {
      double detour = kInf;
      if (pose.row > 1) detour = std::min(detour, 2.0 * vertical_cost(side, pose.row - 1));
      if (pose.row < rows_) detour = std::min(detour, 2.0 * vertical_cost(side, pose.row));
      return detour;
    }
    return vertical_span_cost(side, pose.row, target_row);
  }
  if (!heading) fail("a robot inside a row always has a heading");
  const double forward = forward_exit_cost(pose, *heading);
  if (target_row == pose.row) return forward;
  return forward + vertical_span_cost(side_of(*heading), pose.row, target_row);
}

// --- directed return table ---

int AisleGraph::state_index(int row, int col, Arrival a) const {
  return ((row - 1) * (cols_ + 2) + col) * 3 + static_cast<int>(a);
}

AisleGraph::Arrival AisleGraph::arrival_of(VertexId pose, MaybeHeading heading) const {
  if (!heading) {
    if (is_interior_col(pose.col)) fail("a robot inside a row always has a heading");
    return kNeutral;
  }
  return *heading == Heading::Right ? kMovedRight : kMovedLeft;
}

template <typename Fn>
void AisleGraph::for_each_successor(int row, int col, Arrival a, Fn&& fn) const {
  if (is_interior_col(col)) {
    if (a == kMovedRight) {
      fn(row, col + 1, kMovedRight, horizontal_cost(row, col));
    } else if (a == kMovedLeft) {
      fn(row, col - 1, kMovedLeft, horizontal_cost(row, col - 1));
    }
    return;
  }
  const Side side = col == 0 ? Side::Left : Side::Right;
  if (row > 1) fn(row - 1, col, kNeutral, vertical_cost(side, row - 1));
  if (row < rows_) fn(row + 1, col, kNeutral, vertical_cost(side, row));
  if (a == kNeutral) {
    if (col == 0) {
      fn(row, 1, kMovedRight, horizontal_cost(row, 0));
    } else {
      fn(row, cols_, kMovedLeft, horizontal_cost(row, cols_));
    }
  }
}

void AisleGraph::compute_return_table() {
  const int n_states = rows_ * (cols_ + 2) * 3;
  return_table_.assign(static_cast<size_t>(n_states), kInf);

  // Reverse adjacency of the directed state graph.
  struct Edge {
    int to;
    double cost;
  };
  std::vector<std::vector<Edge>> rev(static_cast<size_t>(n_states));
  for (int row = 1; row <= rows_; ++row) {
    for (int col = 0; col <= right_col(); ++col) {
      for (int a = 0; a < 3; ++a) {
        const Arrival arr = static_cast<Arrival>(a);
        if (is_interior_col(col) && arr == kNeutral) continue;
        if (col == 0 && arr == kMovedRight) continue;
        if (col == right_col() && arr == kMovedLeft) continue;
        const int from = state_index(row, col, arr);
        for_each_successor(row, col, arr, [&](int r2, int c2, Arrival a2, double cost) {
          rev[static_cast<size_t>(state_index(r2, c2, a2))].push_back({from, cost});
        });
      }
    }
  }

  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  for (VertexId b : bases_) {
    for (int a = 0; a < 3; ++a) {
      const Arrival arr = static_cast<Arrival>(a);
      if (b.col == 0 && arr == kMovedRight) continue;
      if (b.col == right_col() && arr == kMovedLeft) continue;
      const int s = state_index(b.row, b.col, arr);
      return_table_[static_cast<size_t>(s)] = 0.0;
      heap.push({0.0, s});
    }
  }
  while (!heap.empty()) {
    const auto [d, s] = heap.top();
    heap.pop();
    if (d > return_table_[static_cast<size_t>(s)]) continue;
    for (const Edge& e : rev[static_cast<size_t>(s)]) {
      const double nd = d + e.cost;
      if (nd < return_table_[static_cast<size_t>(e.to)]) {
        return_table_[static_cast<size_t>(e.to)] = nd;
        heap.push({nd, e.to});
      }
    }
  }
}

double AisleGraph::return_cost(VertexId pose, MaybeHeading heading) const {
  if (!contains(pose)) fail("pose outside the graph");
  return return_table_[static_cast<size_t>(state_index(pose.row, pose.col, arrival_of(pose, heading)))];
}

double AisleGraph::return_cost_after_row(int row, Side exit_col) const {
  const Arrival a = exit_col == Side::Left ? kMovedLeft : kMovedRight;
  return return_table_[static_cast<size_t>(state_index(row, boundary_col(exit_col), a))];
}

std::vector<VertexId> AisleGraph::plan_return_path(VertexId pose, MaybeHeading heading) const {
  if (!contains(pose)) fail("pose outside the graph");
  std::vector<VertexId> path;
  int row = pose.row;
  int col = pose.col;
  Arrival arr = arrival_of(pose, heading);
  while (!is_base({row, col})) {
    const double here = return_table_[static_cast<size_t>(state_index(row, col, arr))];
    if (!std::isfinite(here)) fail("no legal walk to a base station from this state");
    int best_r = -1, best_c = -1;
    Arrival best_a = kNeutral;
    bool found = false;
    for_each_successor(row, col, arr, [&](int r2, int c2, Arrival a2, double cost) {
      if (found) return;
      const double via = cost + return_table_[static_cast<size_t>(state_index(r2, c2, a2))];
      if (via == here) {
        best_r = r2;
        best_c = c2;
        best_a = a2;
        found = true;
      }
    });
    if (!found) fail("return table inconsistent");
    row = best_r;
    col = best_c;
    arr = best_a;
    path.push_back({row, col});
  }
  return path;
}

}  // namespace aislesim
