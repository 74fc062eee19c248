#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "aislesim/mission.hpp"
#include "aislesim/planner.hpp"

namespace aislesim {

// Declarative experiment description, loadable from a key-value scenario
// file (see README for the grammar). Exactly one task source is active:
// a random distribution, an explicit task list, or a field grid.
struct ScenarioSpec {
  std::string name = "scenario";

  // [graph]
  int rows = 0;
  int cols = 0;  // interior columns
  double edge_cost = 1.0;
  std::vector<VertexId> bases;
  VertexId start{};

  // [budgets]
  double resource_budget = 0.0;
  double energy_budget = 0.0;

  // [classes] — empty when the field grid derives them
  std::vector<PriorityClass> classes;

  // [tasks]
  TaskDistribution distribution;      // active when distribution.count > 0
  std::vector<Task> explicit_tasks;   // active when non-empty
  std::string grid_path;              // active when non-empty
  bool synth_grid = false;            // active when set: generated grid
  double desired_level = 0.0;
  std::vector<double> bands;          // deficit thresholds, strictly increasing

  // [run]
  std::vector<PlannerKind> planners;
  int team_size = 1;
  int trials = 1;
  std::uint64_t seed = 0;
};

ScenarioSpec load_scenario(const std::filesystem::path& path);
void write_scenario(const ScenarioSpec& spec, const std::filesystem::path& path);

// Graph shared by every trial of a scenario.
std::shared_ptr<const AisleGraph> build_graph(const ScenarioSpec& spec);

// Resolves the task source into a concrete mission for one trial. Explicit
// and grid-derived tasks ignore the trial number (no randomness).
Mission build_mission(const ScenarioSpec& spec, std::shared_ptr<const AisleGraph> graph,
                      const RandomSource& rng, std::uint64_t trial);

// --- field grids ---

struct FieldGrid {
  int rows = 0;
  int cols = 0;
  std::vector<double> values;
  std::vector<bool> present;  // false for empty cells

  double at(int r, int c) const { return values[static_cast<size_t>(r) * cols + c]; }
  bool has(int r, int c) const { return present[static_cast<size_t>(r) * cols + c]; }
};

// Comma-separated numeric matrix, one grid row per line; empty cells allowed.
FieldGrid load_field_grid(const std::filesystem::path& path);
void write_field_grid(const FieldGrid& grid, const std::filesystem::path& path);

// Spatially correlated synthetic sensor field (low-frequency mixture plus
// mild noise), value range roughly [desired-8, desired+8] around 30.
FieldGrid synthesize_field_grid(int rows, int cols, std::uint64_t seed);

// Cells below the desired level become tasks costing their deficit; bands
// split deficits into priority levels (higher deficit = higher level) with
// the per-band mean deficit as the planner-visible expected cost. Bands that
// catch no task are dropped and levels renumbered.
struct FieldIngest {
  std::vector<Task> tasks;
  std::vector<PriorityClass> classes;
};
FieldIngest ingest_field_grid(const FieldGrid& grid, double desired_level,
                              std::span<const double> bands);

// --- named presets ---

struct Fig6LeftSpec {
  std::vector<double> ratios;
  std::vector<double> gain_ratios;
  double mean_cost = 2.0;
  int trials = 1000;
};

struct Fig6RightSpec {
  std::vector<double> ratios1;
  std::vector<double> ratios2;
  double mu1 = 1.0;
  double mu2 = 2.0;
  double budget = 40.0;
  int trials = 1000;
};

struct PresetSpec {
  std::string name;
  std::optional<ScenarioSpec> scenario;
  std::optional<Fig6LeftSpec> fig6_left;
  std::optional<Fig6RightSpec> fig6_right;
};

// table1_s1, table1_s2, fig6_left, fig6_right, field.
PresetSpec preset(std::string_view name);
std::vector<std::string> preset_names();

}  // namespace aislesim
