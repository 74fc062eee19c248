#include "aislesim/world.hpp"

#include <stdexcept>

namespace aislesim {

PendingIndex::PendingIndex(const AisleGraph& graph, const std::vector<Task>& tasks, int max_level) {
  stride_ = graph.interior_cols() + 2;
  vertex_task_.assign(static_cast<size_t>(graph.rows()) * stride_, -1);
  any_.assign(static_cast<size_t>(graph.rows()), {});
  for (const Task& t : tasks) {
    if (t.level > max_level) throw std::invalid_argument("pending index: task level above class set");
  }
  levels_.resize(static_cast<size_t>(max_level));
  for (auto& l : levels_) l.cols.assign(static_cast<size_t>(graph.rows()), {});

  for (size_t i = 0; i < tasks.size(); ++i) {
    const Task& t = tasks[i];
    vertex_task_[vertex_slot(t.vertex)] = static_cast<int>(i);
    if (!t.pending()) continue;
    levels_[static_cast<size_t>(t.level - 1)].cols[static_cast<size_t>(t.vertex.row - 1)].insert(
        t.vertex.col);
    levels_[static_cast<size_t>(t.level - 1)].total++;
    any_[static_cast<size_t>(t.vertex.row - 1)].insert(t.vertex.col);
    total_++;
  }
}

void PendingIndex::mark_completed(int task_index, const std::vector<Task>& tasks) {
  const Task& t = tasks[static_cast<size_t>(task_index)];
  auto& lvl = levels_[static_cast<size_t>(t.level - 1)];
  if (lvl.cols[static_cast<size_t>(t.vertex.row - 1)].erase(t.vertex.col) != 1) {
    throw std::logic_error("pending index: completing a task that was not pending");
  }
  lvl.total--;
  any_[static_cast<size_t>(t.vertex.row - 1)].erase(t.vertex.col);
  total_--;
}

}  // namespace aislesim
