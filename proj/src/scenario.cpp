#include "aislesim/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace aislesim {

namespace {

[[noreturn]] void parse_fail(const std::filesystem::path& path, int line, const std::string& msg) {
  throw std::runtime_error(path.string() + ":" + std::to_string(line) + ": " + msg);
}

VertexId parse_vertex(const std::string& token) {
  const auto colon = token.find(':');
  if (colon == std::string::npos) throw std::runtime_error("expected row:col, got '" + token + "'");
  return {std::stoi(token.substr(0, colon)), std::stoi(token.substr(colon + 1))};
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

ScenarioSpec load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path.string());

  ScenarioSpec spec;
  spec.name = path.stem().string();
  spec.classes.clear();
  std::string section;
  std::string line;
  int lineno = 0;
  bool have_resource = false;
  bool have_energy = false;

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first.front() == '[') {
      section = first.substr(1, first.size() - 2);
      continue;
    }
    std::string eq;
    ls >> eq;
    if (eq != "=") parse_fail(path, lineno, "expected 'key = value'");

    const std::string& key = first;
    try {
      if (section == "graph") {
        if (key == "rows") {
          ls >> spec.rows;
        } else if (key == "cols") {
          ls >> spec.cols;
        } else if (key == "edge_cost") {
          ls >> spec.edge_cost;
        } else if (key == "bases") {
          std::string tok;
          while (ls >> tok) spec.bases.push_back(parse_vertex(tok));
        } else if (key == "start") {
          std::string tok;
          ls >> tok;
          spec.start = parse_vertex(tok);
        } else {
          parse_fail(path, lineno, "unknown graph key '" + key + "'");
        }
      } else if (section == "budgets") {
        if (key == "resource") {
          ls >> spec.resource_budget;
          have_resource = true;
        } else if (key == "energy") {
          ls >> spec.energy_budget;
          have_energy = true;
        } else {
          parse_fail(path, lineno, "unknown budgets key '" + key + "'");
        }
      } else if (section == "classes") {
        if (key == "class") {
          PriorityClass c;
          ls >> c.level >> c.gain_ratio >> c.mean_cost;
          spec.classes.push_back(c);
        } else {
          parse_fail(path, lineno, "unknown classes key '" + key + "'");
        }
      } else if (section == "tasks") {
        if (key == "count") {
          ls >> spec.distribution.count;
        } else if (key == "weights") {
          double w = 0.0;
          while (ls >> w) spec.distribution.level_weights.push_back(w);
        } else if (key == "max_cost_fraction") {
          ls >> spec.distribution.max_cost_fraction;
        } else if (key == "task") {
          Task t;
          ls >> t.vertex.row >> t.vertex.col >> t.level >> t.actual_cost;
          spec.explicit_tasks.push_back(t);
        } else if (key == "grid") {
          ls >> spec.grid_path;
        } else if (key == "synth_grid") {
          int v = 0;
          ls >> v;
          spec.synth_grid = v != 0;
        } else if (key == "desired") {
          ls >> spec.desired_level;
        } else if (key == "bands") {
          double b = 0.0;
          while (ls >> b) spec.bands.push_back(b);
        } else {
          parse_fail(path, lineno, "unknown tasks key '" + key + "'");
        }
      } else if (section == "run") {
        if (key == "planners") {
          std::string tok;
          while (ls >> tok) spec.planners.push_back(planner_from_string(tok));
        } else if (key == "robots") {
          ls >> spec.team_size;
        } else if (key == "trials") {
          ls >> spec.trials;
        } else if (key == "seed") {
          ls >> spec.seed;
        } else {
          parse_fail(path, lineno, "unknown run key '" + key + "'");
        }
      } else {
        parse_fail(path, lineno, "key outside a known section");
      }
    } catch (const std::runtime_error&) {
      throw;
    } catch (const std::exception& e) {
      parse_fail(path, lineno, e.what());
    }
    if (ls.fail() && !ls.eof()) parse_fail(path, lineno, "malformed value for '" + key + "'");
  }

  // Semantic validation with field names.
  if (spec.rows < 1) throw std::runtime_error(path.string() + ": graph.rows missing or < 1");
  if (spec.cols < 1) throw std::runtime_error(path.string() + ": graph.cols missing or < 1");
  if (spec.bases.empty()) throw std::runtime_error(path.string() + ": graph.bases missing");
  if (!have_resource) throw std::runtime_error(path.string() + ": budgets.resource missing");
  if (!have_energy) throw std::runtime_error(path.string() + ": budgets.energy missing");
  if (spec.start == VertexId{}) spec.start = spec.bases.front();
  if (spec.planners.empty()) spec.planners = {PlannerKind::NextBestAction};
  const bool grid_source = !spec.grid_path.empty() || spec.synth_grid;
  if (spec.classes.empty() && !grid_source) {
    spec.classes = {PriorityClass{1, 1.0, 1.0}};
  }
  if (spec.distribution.count > 0 && spec.distribution.level_weights.empty()) {
    spec.distribution.level_weights.assign(spec.classes.size(), 1.0);
  }
  const int sources = (spec.distribution.count > 0 ? 1 : 0) +
                      (!spec.explicit_tasks.empty() ? 1 : 0) + (grid_source ? 1 : 0);
  if (sources != 1) {
    throw std::runtime_error(path.string() + ": exactly one task source required (count, task list, or grid)");
  }
  return spec;
}

void write_scenario(const ScenarioSpec& spec, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write scenario file: " + path.string());
  out << "[graph]\n";
  out << "rows = " << spec.rows << "\n";
  out << "cols = " << spec.cols << "\n";
  out << "edge_cost = " << fmt(spec.edge_cost) << "\n";
  out << "bases =";
  for (VertexId b : spec.bases) out << ' ' << b.row << ':' << b.col;
  out << "\n";
  out << "start = " << spec.start.row << ':' << spec.start.col << "\n";
  out << "\n[budgets]\n";
  out << "resource = " << fmt(spec.resource_budget) << "\n";
  out << "energy = " << fmt(spec.energy_budget) << "\n";
  if (!spec.classes.empty()) {
    out << "\n[classes]\n";
    for (const PriorityClass& c : spec.classes) {
      out << "class = " << c.level << ' ' << fmt(c.gain_ratio) << ' ' << fmt(c.mean_cost) << "\n";
    }
  }
  out << "\n[tasks]\n";
  if (spec.distribution.count > 0) {
    out << "count = " << spec.distribution.count << "\n";
    out << "weights =";
    for (double w : spec.distribution.level_weights) out << ' ' << fmt(w);
    out << "\n";
    out << "max_cost_fraction = " << fmt(spec.distribution.max_cost_fraction) << "\n";
  }
  for (const Task& t : spec.explicit_tasks) {
    out << "task = " << t.vertex.row << ' ' << t.vertex.col << ' ' << t.level << ' '
        << fmt(t.actual_cost) << "\n";
  }
  if (!spec.grid_path.empty()) out << "grid = " << spec.grid_path << "\n";
  if (spec.synth_grid) out << "synth_grid = 1\n";
  if (spec.desired_level != 0.0) out << "desired = " << fmt(spec.desired_level) << "\n";
  if (!spec.bands.empty()) {
    out << "bands =";
    for (double b : spec.bands) out << ' ' << fmt(b);
    out << "\n";
  }
  out << "\n[run]\n";
  out << "planners =";
  for (PlannerKind k : spec.planners) out << ' ' << to_string(k);
  out << "\n";
  out << "robots = " << spec.team_size << "\n";
  out << "trials = " << spec.trials << "\n";
  out << "seed = " << spec.seed << "\n";
}

std::shared_ptr<const AisleGraph> build_graph(const ScenarioSpec& spec) {
  auto costs = AisleGraph::Costs::uniform(spec.rows, spec.cols, spec.edge_cost);
  return std::make_shared<const AisleGraph>(
      AisleGraph::build(spec.rows, spec.cols, std::move(costs), spec.bases));
}

Mission build_mission(const ScenarioSpec& spec, std::shared_ptr<const AisleGraph> graph,
                      const RandomSource& rng, std::uint64_t trial) {
  if (!spec.grid_path.empty() || spec.synth_grid) {
    FieldGrid grid = spec.synth_grid
                         ? synthesize_field_grid(spec.rows, spec.cols, rng.seed())
                         : load_field_grid(spec.grid_path);
    if (grid.rows != spec.rows || grid.cols != spec.cols) {
      throw std::runtime_error("field grid dimensions do not match the scenario graph");
    }
    FieldIngest ingest = ingest_field_grid(grid, spec.desired_level, spec.bands);
    return make_mission(std::move(graph), PriorityClassSet(std::move(ingest.classes)),
                        std::move(ingest.tasks), spec.resource_budget, spec.energy_budget,
                        spec.start);
  }
  PriorityClassSet classes(spec.classes);
  if (!spec.explicit_tasks.empty()) {
    return make_mission(std::move(graph), std::move(classes), spec.explicit_tasks,
                        spec.resource_budget, spec.energy_budget, spec.start);
  }
  return generate_mission(std::move(graph), std::move(classes), spec.distribution,
                          spec.resource_budget, spec.energy_budget, spec.start, rng, trial);
}

FieldGrid load_field_grid(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open field grid: " + path.string());
  FieldGrid grid;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() && in.peek() == EOF) break;
    std::vector<double> row_values;
    std::vector<bool> row_present;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) {
      const auto from = cell.find_first_not_of(" \t\r");
      if (from == std::string::npos) {
        row_values.push_back(0.0);
        row_present.push_back(false);
        continue;
      }
      const auto to = cell.find_last_not_of(" \t\r");
      size_t used = 0;
      const std::string body = cell.substr(from, to - from + 1);
      double v = 0.0;
      try {
        v = std::stod(body, &used);
      } catch (const std::exception&) {
        parse_fail(path, lineno, "non-numeric cell '" + body + "'");
      }
      if (used != body.size()) parse_fail(path, lineno, "non-numeric cell '" + body + "'");
      row_values.push_back(v);
      row_present.push_back(true);
    }
    if (!line.empty() && line.back() == ',') {
      row_values.push_back(0.0);
      row_present.push_back(false);
    }
    if (grid.cols == 0) {
      grid.cols = static_cast<int>(row_values.size());
    } else if (static_cast<int>(row_values.size()) != grid.cols) {
      parse_fail(path, lineno, "ragged row: expected " + std::to_string(grid.cols) + " cells");
    }
    grid.values.insert(grid.values.end(), row_values.begin(), row_values.end());
    grid.present.insert(grid.present.end(), row_present.begin(), row_present.end());
    grid.rows++;
  }
  if (grid.rows == 0 || grid.cols == 0) throw std::runtime_error("empty field grid: " + path.string());
  return grid;
}

void write_field_grid(const FieldGrid& grid, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write field grid: " + path.string());
  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      if (c) out << ',';
      if (grid.has(r, c)) out << fmt(grid.at(r, c));
    }
    out << '\n';
  }
}

FieldGrid synthesize_field_grid(int rows, int cols, std::uint64_t seed) {
  RandomSource rng(seed);
  RngStream noise = rng.stream(0, 0, stream_purpose::kFieldNoise);
  FieldGrid grid;
  grid.rows = rows;
  grid.cols = cols;
  grid.values.resize(static_cast<size_t>(rows) * cols);
  grid.present.assign(static_cast<size_t>(rows) * cols, true);

  // Low-frequency mixture gives moisture patches; jitter keeps cells distinct.
  constexpr double kTau = 6.283185307179586;
  const double ph1 = noise.next_unit() * kTau;
  const double ph2 = noise.next_unit() * kTau;
  const double ph3 = noise.next_unit() * kTau;
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      double v = 30.0;
      v += 4.5 * std::sin(kTau * r / 90.0 + ph1);
      v += 3.5 * std::sin(kTau * c / 70.0 + ph2);
      v += 2.5 * std::sin(kTau * (r / 55.0 + c / 40.0) + ph3);
      v += (noise.next_unit() - 0.5) * 1.5;
      grid.values[static_cast<size_t>(r) * cols + c] = v;
    }
  }
  return grid;
}

FieldIngest ingest_field_grid(const FieldGrid& grid, double desired_level,
                              std::span<const double> bands) {
  for (size_t i = 1; i < bands.size(); ++i) {
    if (!(bands[i - 1] < bands[i])) {
      throw std::invalid_argument("field ingest: band thresholds must be strictly increasing");
    }
  }
  const int band_count = static_cast<int>(bands.size()) + 1;
  std::vector<double> sum(static_cast<size_t>(band_count), 0.0);
  std::vector<int> count(static_cast<size_t>(band_count), 0);
  std::vector<std::pair<Task, int>> raw;  // task with its band index

  for (int r = 0; r < grid.rows; ++r) {
    for (int c = 0; c < grid.cols; ++c) {
      if (!grid.has(r, c)) continue;
      const double deficit = desired_level - grid.at(r, c);
      if (!(deficit > 0.0)) continue;
      int band = 0;
      while (band < static_cast<int>(bands.size()) && deficit > bands[static_cast<size_t>(band)]) {
        ++band;
      }
      Task t;
      t.vertex = {r + 1, c + 1};
      t.actual_cost = deficit;
      raw.push_back({t, band});
      sum[static_cast<size_t>(band)] += deficit;
      count[static_cast<size_t>(band)]++;
    }
  }

  // Drop empty bands and renumber the rest as contiguous levels.
  std::vector<int> level_of_band(static_cast<size_t>(band_count), 0);
  FieldIngest out;
  int next_level = 1;
  for (int b = 0; b < band_count; ++b) {
    if (count[static_cast<size_t>(b)] == 0) continue;
    level_of_band[static_cast<size_t>(b)] = next_level;
    out.classes.push_back(PriorityClass{next_level, static_cast<double>(next_level),
                                        sum[static_cast<size_t>(b)] / count[static_cast<size_t>(b)]});
    ++next_level;
  }
  out.tasks.reserve(raw.size());
  for (auto& [task, band] : raw) {
    task.level = level_of_band[static_cast<size_t>(band)];
    out.tasks.push_back(task);
  }
  return out;
}

namespace {

ScenarioSpec table1_base() {
  ScenarioSpec s;
  s.rows = 20;
  s.cols = 15;
  s.edge_cost = 1.0;
  s.bases = {{10, 0}, {10, 16}};
  s.start = {10, 0};
  s.resource_budget = 40.0;
  s.energy_budget = 80.0;
  s.distribution.count = 225;
  s.planners = {PlannerKind::NextBestAction, PlannerKind::NaiveLawnmower};
  s.team_size = 2;
  s.trials = 10;
  s.seed = 1;
  return s;
}

}  // namespace

PresetSpec preset(std::string_view name) {
  PresetSpec p;
  p.name = std::string(name);
  if (name == "table1_s1") {
    ScenarioSpec s = table1_base();
    s.name = p.name;
    s.classes = {PriorityClass{1, 1.0, 2.0}};
    s.distribution.level_weights = {1.0};
    p.scenario = std::move(s);
  } else if (name == "table1_s2") {
    ScenarioSpec s = table1_base();
    s.name = p.name;
    s.classes = {PriorityClass{1, 1.0, 1.5}, PriorityClass{2, 2.0, 2.0}};
    s.distribution.level_weights = {0.5, 0.5};
    p.scenario = std::move(s);
  } else if (name == "fig6_left") {
    Fig6LeftSpec f;
    f.ratios = {1, 1.5, 2, 3, 4, 6, 8, 12, 16, 24, 32, 40, 50, 60};
    f.gain_ratios = {0.5, 1.0, 2.0};
    f.mean_cost = 2.0;
    f.trials = 1000;
    p.fig6_left = f;
  } else if (name == "fig6_right") {
    Fig6RightSpec f;
    f.ratios1 = {2, 4, 8, 16, 32};
    f.ratios2 = {2, 4, 8, 16, 32};
    f.trials = 1000;
    p.fig6_right = f;
  } else if (name == "field") {
    ScenarioSpec s;
    s.name = p.name;
    s.rows = 275;
    s.cols = 214;
    s.edge_cost = 1.0;
    s.bases = {{137, 0}, {137, 215}};
    s.start = {137, 0};
    s.resource_budget = 400.0;
    s.energy_budget = 800.0;
    s.synth_grid = true;
    s.desired_level = 30.0;
    s.planners = {PlannerKind::NextBestAction, PlannerKind::NaiveLawnmower,
                  PlannerKind::InformedLawnmower, PlannerKind::SeriesGreedyPartialRow};
    s.team_size = 1;
    s.trials = 1;
    s.seed = 20240101;
    p.scenario = std::move(s);
  } else {
    throw std::invalid_argument("unknown preset: " + p.name);
  }
  return p;
}

std::vector<std::string> preset_names() {
  return {"table1_s1", "table1_s2", "fig6_left", "fig6_right", "field"};
}

}  // namespace aislesim
