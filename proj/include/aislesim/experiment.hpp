#pragma once

#include <filesystem>
#include <vector>

#include "aislesim/engine.hpp"
#include "aislesim/scenario.hpp"

namespace aislesim {

struct RunOptions {
  std::filesystem::path out_dir;
  int jobs = 0;  // 0 = hardware concurrency
  bool write_traces = false;
  bool write_curves = true;
};

struct TrialRecord {
  int trial = 0;
  PlannerKind planner = PlannerKind::NextBestAction;
  Metrics metrics;
  bool completed = false;
};

struct ExperimentResult {
  std::vector<TrialRecord> records;  // trial-major, planners in scenario order
  bool all_completed = true;
};

// Runs every (trial, planner) pair of the scenario — each trial's mission is
// generated once and shared across planners — and writes metrics.csv,
// aggregate.csv and (optionally) curves.csv / per-run trace logs into
// out_dir. Trials may run concurrently; outputs are byte-stable regardless.
ExperimentResult run_experiment(const ScenarioSpec& spec, const RunOptions& options);

// Fig-6-style study tables (abort rates under unlimited tasks).
void run_fig6_left(const Fig6LeftSpec& spec, std::uint64_t seed,
                   const std::filesystem::path& out_dir);
void run_fig6_right(const Fig6RightSpec& spec, std::uint64_t seed,
                    const std::filesystem::path& out_dir);

}  // namespace aislesim
