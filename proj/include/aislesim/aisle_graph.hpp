#pragma once

#include <optional>
#include <vector>

#include "aislesim/types.hpp"

namespace aislesim {

// Aisle graph with stochastic vertex costs layered on top by Mission. Rows
// are connected only through the two virtual boundary columns; inside a row
// the robot cannot reverse, so reachability and all cost terms below are
// heading-aware.
//
// Immutable after build(); safe to share across threads.
class AisleGraph {
 public:
  struct Costs {
    // horizontal[i-1][j]: cost of the edge between (i, j) and (i, j+1),
    // j in [0, n]. The connector edges j = 0 and j = n must be 0.
    std::vector<std::vector<double>> horizontal;
    // vertical_left[i-1] / vertical_right[i-1]: cost of the column edge
    // between rows i and i+1 on column 0 / n+1, i in [1, m-1].
    std::vector<double> vertical_left;
    std::vector<double> vertical_right;

    static Costs uniform(int rows, int interior_cols, double cost);
  };

  AisleGraph() = default;

  // Validates the topology rules: boundary-only bases, nonnegative costs,
  // zero-cost connectors. Throws std::invalid_argument on violations.
  static AisleGraph build(int rows, int interior_cols, Costs costs, std::vector<VertexId> bases);

  int rows() const { return rows_; }
  int interior_cols() const { return cols_; }
  int right_col() const { return cols_ + 1; }
  int boundary_col(Side s) const { return s == Side::Left ? 0 : right_col(); }

  bool contains(VertexId v) const {
    return v.row >= 1 && v.row <= rows_ && v.col >= 0 && v.col <= right_col();
  }
  bool is_boundary_col(int col) const { return col == 0 || col == right_col(); }
  bool is_interior_col(int col) const { return col >= 1 && col <= cols_; }

  // Edge e_{row, j^+} between (row, j) and (row, j+1).
  double horizontal_cost(int row, int j) const;
  // Column edge between rows `lower` and `lower + 1` on the given side.
  double vertical_cost(Side side, int lower) const;

  const std::vector<VertexId>& base_stations() const { return bases_; }
  bool is_base(VertexId v) const;
  bool has_base_on(Side side) const;

  // Moves permitted from `pose` given the last horizontal motion. At interior
  // vertices that is the single forward vertex; at a boundary vertex the
  // vertical neighbours plus, unless it would undo the motion that brought
  // the robot there, the fresh entry into the adjacent row.
  std::vector<VertexId> legal_moves(VertexId pose, MaybeHeading heading) const;
  bool is_legal_move(VertexId from, MaybeHeading heading, VertexId to) const;

  // --- movement-cost terms used by the energy-feasibility test ---

  // Cost to cross a row between its two end vertices (interior edges only).
  // Pose-independent; precomputed.
  double row_traverse_cost(int row) const;

  // Sum of the column edges between two rows on one side.
  double vertical_span_cost(Side side, int row_a, int row_b) const;

  // Vertical cost from `row` to the closest base station on the column the
  // robot stands on after finishing the row with `heading_in_row` (Left ends
  // on column 0). Throws if that column has no base.
  double base_return_vertical(int row, Heading heading_in_row) const;
  std::optional<double> base_return_vertical_opt(int row, Side exit_col) const;

  // Run-time cost to reach the entry end of `target_row`: exit the current
  // row at the end ahead (never reversing), then travel the boundary column.
  // For the robot's own row this is just the remaining in-row distance ahead.
  double row_access_cost(VertexId pose, MaybeHeading heading, int target_row) const;

  // Side from which `target_row` would be entered / left under the rule above.
  Side entry_side(VertexId pose, MaybeHeading heading) const;
  Side exit_side_after(VertexId pose, MaybeHeading heading, int target_row) const;

  // In-row cost from pose to the boundary vertex ahead.
  double forward_exit_cost(VertexId pose, Heading heading) const;

  // --- exact return legs (directed-state shortest paths, precomputed) ---

  // Minimum cost of a legal walk from the given state to any base station.
  double return_cost(VertexId pose, MaybeHeading heading) const;

  // Return cost from the end of `row` on `exit_col`, having just crossed the
  // row. Equals the vertical term when a base exists on that column (or
  // cheaper, if a zero-cost row offers a shortcut).
  double return_cost_after_row(int row, Side exit_col) const;

  // Cheapest legal walk to a base station; empty when already at one.
  std::vector<VertexId> plan_return_path(VertexId pose, MaybeHeading heading) const;

 private:
  enum Arrival : int { kNeutral = 0, kMovedRight = 1, kMovedLeft = 2 };

  int state_index(int row, int col, Arrival a) const;
  Arrival arrival_of(VertexId pose, MaybeHeading heading) const;
  void compute_return_table();
  template <typename Fn>
  void for_each_successor(int row, int col, Arrival a, Fn&& fn) const;

  int rows_ = 0;
  int cols_ = 0;
  Costs costs_;
  std::vector<VertexId> bases_;
  std::vector<bool> base_mask_;
  // hprefix_[i-1][j] = sum of horizontal edges of row i left of column j.
  std::vector<std::vector<double>> hprefix_;
  // vprefix_[side][i-1] = sum of column edges below row i.
  std::vector<double> vprefix_left_;
  std::vector<double> vprefix_right_;
  std::vector<double> return_table_;
};

}  // namespace aislesim
