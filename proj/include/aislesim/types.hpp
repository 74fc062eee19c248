#pragma once

#include <compare>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace aislesim {

// Grid vertex. Rows are 1-based in [1, m]; columns run over [0, n+1] where
// columns 0 and n+1 are the virtual boundary columns that connect rows and
// never carry tasks.
struct VertexId {
  int row = 0;
  int col = 0;
  friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

// In-row travel direction. Left moves toward column 0, Right toward n+1.
enum class Heading { Left, Right };

inline Heading opposite(Heading h) { return h == Heading::Left ? Heading::Right : Heading::Left; }

// Boundary side of the graph; which virtual column a row end sits on.
enum class Side { Left, Right };

inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }
inline Side side_of(Heading h) { return h == Heading::Left ? Side::Left : Side::Right; }
inline Heading heading_from(Side entry) {
  return entry == Side::Left ? Heading::Right : Heading::Left;
}

// Last horizontal motion, if any. Empty after a vertical move, a reset, or at
// mission start; a robot with no heading may enter any adjacent row.
using MaybeHeading = std::optional<Heading>;

// One priority level: gain-to-cost ratio and the mean of the exponential
// task-cost distribution at that level.
struct PriorityClass {
  int level = 1;
  double gain_ratio = 1.0;  // mu(s)
  double mean_cost = 1.0;   // w_bar(s)
  double rate() const { return 1.0 / mean_cost; }
};

// The full level set of a mission. Levels must be contiguous from 1 and the
// gain ratio strictly increasing with the level.
class PriorityClassSet {
 public:
  PriorityClassSet() = default;
  explicit PriorityClassSet(std::vector<PriorityClass> classes);

  int max_level() const { return static_cast<int>(classes_.size()); }
  const PriorityClass& at(int level) const { return classes_.at(static_cast<size_t>(level - 1)); }
  const std::vector<PriorityClass>& all() const { return classes_; }
  bool empty() const { return classes_.empty(); }

 private:
  std::vector<PriorityClass> classes_;
};

enum class TaskStatus { Pending, Completed };

// A vertex-bound job. The actual cost is ground truth: planners never read
// it, only the executor does when resolving an attempt.
struct Task {
  VertexId vertex;
  int level = 1;
  double actual_cost = 0.0;
  TaskStatus status = TaskStatus::Pending;

  bool pending() const { return status == TaskStatus::Pending; }
  // Completed tasks drop to level 0.
  int effective_level() const { return pending() ? level : 0; }
};

// Per-trip resource state: remaining budget p and accumulated gain q.
struct TripState {
  double resource = 0.0;
  double gain = 0.0;
};

}  // namespace aislesim
