#pragma once

#include <set>
#include <vector>

#include "aislesim/aisle_graph.hpp"
#include "aislesim/mission.hpp"
#include "aislesim/types.hpp"

namespace aislesim {

// Mutable pending-task index the executor maintains and planners query.
// Pending columns are kept per (level, row) and per row overall so planners
// work in O(rows) per decision instead of O(tasks).
class PendingIndex {
 public:
  PendingIndex() = default;
  PendingIndex(const AisleGraph& graph, const std::vector<Task>& tasks, int max_level);

  int total() const { return total_; }
  int at_level(int level) const { return levels_[static_cast<size_t>(level - 1)].total; }
  bool any_at_level(int level) const { return at_level(level) > 0; }

  // Pending columns of one level in one row, ascending.
  const std::set<int>& level_cols(int level, int row) const {
    return levels_[static_cast<size_t>(level - 1)].cols[static_cast<size_t>(row - 1)];
  }
  // Pending columns of any level in one row, ascending.
  const std::set<int>& row_cols(int row) const { return any_[static_cast<size_t>(row - 1)]; }

  // Index into the mission task vector, or -1.
  int task_at(VertexId v) const { return vertex_task_[vertex_slot(v)]; }

  void mark_completed(int task_index, const std::vector<Task>& tasks);

 private:
  size_t vertex_slot(VertexId v) const {
    return static_cast<size_t>(v.row - 1) * static_cast<size_t>(stride_) + v.col;
  }

  struct LevelIndex {
    int total = 0;
    std::vector<std::set<int>> cols;
  };

  int stride_ = 0;
  int total_ = 0;
  std::vector<LevelIndex> levels_;
  std::vector<std::set<int>> any_;
  std::vector<int> vertex_task_;
};

// Read-only view planners decide from.
struct WorldView {
  const AisleGraph& graph;
  const PriorityClassSet& classes;
  const std::vector<Task>& tasks;
  const PendingIndex& pending;
  double initial_resource = 0.0;
  double initial_energy = 0.0;
  VertexId start{};  // deployment base station
};

struct RobotState {
  int id = 0;
  VertexId pose{};
  MaybeHeading heading{};
  TripState trip{};
  double energy = 0.0;
};

// Rows occupied by the other robots at decision time.
class RowClaims {
 public:
  RowClaims() = default;
  explicit RowClaims(std::vector<int> rows) : rows_(std::move(rows)) {}
  bool contains(int row) const {
    for (int r : rows_) {
      if (r == row) return true;
    }
    return false;
  }
  const std::vector<int>& rows() const { return rows_; }

 private:
  std::vector<int> rows_;
};

struct Action {
  enum class Kind { Perform, ReturnToBase };
  Kind kind = Kind::ReturnToBase;
  int row = 0;                  // Perform: the selected row
  VertexId target{};            // Perform: vertex of the task to attempt
  std::vector<VertexId> path;   // legal walk from the pose (excluded) to the end vertex
};

}  // namespace aislesim
