#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "aislesim/experiment.hpp"

namespace fs = std::filesystem;
using namespace aislesim;

namespace {

fs::path default_out() {
  if (const char* env = std::getenv("AISLESIM_OUT")) return fs::path(env);
  return fs::path("results");
}

struct CommonFlags {
  std::uint64_t seed = 0;
  bool seed_set = false;
  int trials = 0;
  bool trials_set = false;
  std::string planner;
  int robots = 0;
  std::string out;
  int jobs = 0;
  bool traces = false;
};

void add_common(CLI::App* cmd, CommonFlags& f) {
  cmd->add_option("--seed", f.seed, "Random seed override")->each([&](const std::string&) {
    f.seed_set = true;
  });
  cmd->add_option("--trials", f.trials, "Trial count override")->each([&](const std::string&) {
    f.trials_set = true;
  });
  cmd->add_option("--planner", f.planner, "Run a single planner (nbap|nlm|ilm|sgpr)");
  cmd->add_option("--robots", f.robots, "Team size override");
  cmd->add_option("--out", f.out, "Output directory (default $AISLESIM_OUT or ./results)");
  cmd->add_option("--jobs", f.jobs, "Concurrent trials (default: hardware)");
  cmd->add_flag("--traces", f.traces, "Write per-run trace logs");
}

void apply_overrides(ScenarioSpec& spec, const CommonFlags& f) {
  if (f.seed_set) spec.seed = f.seed;
  if (f.trials_set) spec.trials = std::max(0, f.trials);
  if (f.robots > 0) spec.team_size = f.robots;
  if (!f.planner.empty()) spec.planners = {planner_from_string(f.planner)};
}

int run_scenario(ScenarioSpec spec, const CommonFlags& f, const std::string& dir_name) {
  RunOptions opts;
  opts.out_dir = (f.out.empty() ? default_out() : fs::path(f.out)) / dir_name;
  opts.jobs = f.jobs;
  opts.write_traces = f.traces;
  const ExperimentResult result = run_experiment(spec, opts);
  std::cout << "wrote " << (opts.out_dir / "metrics.csv").string() << " ("
            << result.records.size() << " runs)\n";
  if (!result.all_completed) {
    std::cerr << "warning: some runs ended with pending tasks\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stochastic task-allocation simulator on aisle graphs"};
  app.require_subcommand(1);

  // run <scenario-file>
  std::string scenario_path;
  CommonFlags run_flags;
  CLI::App* run = app.add_subcommand("run", "Run a scenario file");
  run->add_option("scenario", scenario_path, "Scenario file")->required();
  add_common(run, run_flags);

  // preset <name>
  std::string preset_name;
  CommonFlags preset_flags;
  CLI::App* pre = app.add_subcommand("preset", "Run a named preset");
  std::string names;
  for (const std::string& n : preset_names()) names += n + " ";
  pre->add_option("name", preset_name, "One of: " + names)->required();
  add_common(pre, preset_flags);

  // ingest <grid.csv>
  std::string grid_path, ingest_out;
  double desired = 0.0;
  std::vector<double> bands;
  double ing_resource = 400.0, ing_energy = 800.0;
  CLI::App* ingest = app.add_subcommand("ingest", "Turn a field grid into a mission scenario");
  ingest->add_option("grid", grid_path, "CSV sensor grid")->required();
  ingest->add_option("--desired", desired, "Desired sensor level")->required();
  ingest->add_option("--bands", bands, "Deficit thresholds separating priority levels")->delimiter(',');
  ingest->add_option("--resource", ing_resource, "Per-trip resource budget");
  ingest->add_option("--energy", ing_energy, "Per-trip energy budget");
  ingest->add_option("--out", ingest_out, "Output scenario file (default <grid>.scenario)");

  // replay <trace.log>
  std::string trace_path;
  CLI::App* replay = app.add_subcommand("replay", "Recompute metrics from a trace log");
  replay->add_option("trace", trace_path, "Trace log file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      ScenarioSpec spec = load_scenario(scenario_path);
      apply_overrides(spec, run_flags);
      const std::string name = spec.name;
      return run_scenario(std::move(spec), run_flags, name);
    }

    if (*pre) {
      PresetSpec p = preset(preset_name);
      const fs::path base =
          (preset_flags.out.empty() ? default_out() : fs::path(preset_flags.out)) / p.name;
      if (p.fig6_left) {
        if (preset_flags.trials_set) p.fig6_left->trials = std::max(0, preset_flags.trials);
        run_fig6_left(*p.fig6_left, preset_flags.seed_set ? preset_flags.seed : 20240101,
                      base);
        std::cout << "wrote " << (base / "fig6_left.csv").string() << "\n";
        return 0;
      }
      if (p.fig6_right) {
        if (preset_flags.trials_set) p.fig6_right->trials = std::max(0, preset_flags.trials);
        run_fig6_right(*p.fig6_right, preset_flags.seed_set ? preset_flags.seed : 20240101,
                       base);
        std::cout << "wrote " << (base / "fig6_right.csv").string() << "\n";
        return 0;
      }
      ScenarioSpec spec = *p.scenario;
      apply_overrides(spec, preset_flags);
      return run_scenario(std::move(spec), preset_flags, p.name);
    }

    if (*ingest) {
      const FieldGrid grid = load_field_grid(grid_path);
      const FieldIngest result = ingest_field_grid(grid, desired, bands);
      ScenarioSpec spec;
      spec.name = fs::path(grid_path).stem().string();
      spec.rows = grid.rows;
      spec.cols = grid.cols;
      spec.edge_cost = 1.0;
      spec.bases = {{(grid.rows + 1) / 2, 0}, {(grid.rows + 1) / 2, grid.cols + 1}};
      spec.start = spec.bases.front();
      spec.resource_budget = ing_resource;
      spec.energy_budget = ing_energy;
      spec.classes = result.classes;
      spec.explicit_tasks = result.tasks;
      spec.planners = all_planners();
      spec.trials = 1;
      const fs::path out =
          ingest_out.empty() ? fs::path(grid_path + ".scenario") : fs::path(ingest_out);
      write_scenario(spec, out);
      std::cout << "wrote " << out.string() << " (" << result.tasks.size() << " tasks, "
                << result.classes.size() << " levels)\n";
      return 0;
    }

    if (*replay) {
      std::ifstream in(trace_path);
      if (!in) throw std::runtime_error("cannot open trace: " + trace_path);
      const MissionTrace trace = read_trace(in);
      const Metrics m = compute_metrics(trace);
      std::cout << "planner " << trace.planner << "\n"
                << "robots " << trace.team_size << "\n"
                << "visited " << m.visited << "\n"
                << "completed " << m.completed << "\n"
                << "aborted " << m.aborted << "\n"
                << "gain_fraction " << m.gain_fraction << "\n"
                << "rv " << m.rv << "\n"
                << "wv " << m.wv << "\n"
                << "waste " << m.waste << "\n"
                << "path_length " << m.path_length << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
