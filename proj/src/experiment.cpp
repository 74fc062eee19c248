#include "aislesim/experiment.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "aislesim/study.hpp"

namespace aislesim {

namespace {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

struct CurveSample {
  std::size_t visited;
  double gain_fraction;
  double waste;
};

std::vector<CurveSample> curve_of(const MissionTrace& trace) {
  std::vector<CurveSample> out;
  double gain = 0.0;
  double waste = 0.0;
  std::size_t visited = 0;
  for (const TraceEvent& e : trace.events) {
    switch (e.kind) {
      case TraceEvent::Kind::Attempt: ++visited; break;
      case TraceEvent::Kind::Complete:
        gain += e.amount;
        out.push_back({visited, trace.total_gain > 0 ? gain / trace.total_gain : 0.0, waste});
        break;
      case TraceEvent::Kind::Abort:
        waste += e.amount;
        out.push_back({visited, trace.total_gain > 0 ? gain / trace.total_gain : 0.0, waste});
        break;
      default: break;
    }
  }
  return out;
}

struct TrialOutput {
  std::vector<TrialRecord> records;
  std::vector<std::string> curves;  // one CSV block per planner
  std::vector<std::string> traces;  // serialized traces (optional)
};

void append_stats(std::ostream& os, const std::vector<double>& xs) {
  double mean = 0.0;
  for (double x : xs) mean += x;
  mean /= xs.empty() ? 1.0 : static_cast<double>(xs.size());
  double var = 0.0;
  for (double x : xs) var += (x - mean) * (x - mean);
  const double sd = xs.size() > 1 ? std::sqrt(var / static_cast<double>(xs.size() - 1)) : 0.0;
  os << ',' << fmt(mean) << ',' << fmt(sd);
}

}  // namespace

ExperimentResult run_experiment(const ScenarioSpec& spec, const RunOptions& options) {
  std::filesystem::create_directories(options.out_dir);
  if (options.write_traces) std::filesystem::create_directories(options.out_dir / "traces");

  const RandomSource rng(spec.seed);
  const auto graph = build_graph(spec);
  const int trials = spec.trials;

  std::vector<TrialOutput> outputs(static_cast<size_t>(std::max(trials, 0)));
  std::atomic<int> next{0};
  const auto worker = [&]() {
    while (true) {
      const int t = next.fetch_add(1);
      if (t >= trials) return;
      const Mission mission = build_mission(spec, graph, rng, static_cast<std::uint64_t>(t));
      TrialOutput& out = outputs[static_cast<size_t>(t)];
      for (PlannerKind kind : spec.planners) {
        const MissionTrace trace = execute(mission, kind, spec.team_size);
        TrialRecord rec;
        rec.trial = t;
        rec.planner = kind;
        rec.metrics = compute_metrics(trace);
        rec.completed = trace.completed;
        out.records.push_back(rec);
        if (options.write_curves) {
          std::ostringstream block;
          for (const CurveSample& s : curve_of(trace)) {
            block << to_string(kind) << ',' << t << ',' << s.visited << ','
                  << fmt(s.gain_fraction) << ',' << fmt(s.waste) << '\n';
          }
          out.curves.push_back(block.str());
        }
        if (options.write_traces) {
          std::ostringstream ts;
          write_trace(ts, trace);
          out.traces.push_back(ts.str());
        }
      }
    }
  };

  int jobs = options.jobs > 0 ? options.jobs
                              : static_cast<int>(std::thread::hardware_concurrency());
  jobs = std::max(1, std::min(jobs, std::max(trials, 1)));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<size_t>(jobs));
    for (int i = 0; i < jobs; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  ExperimentResult result;
  for (const TrialOutput& out : outputs) {
    for (const TrialRecord& rec : out.records) {
      result.records.push_back(rec);
      result.all_completed = result.all_completed && rec.completed;
    }
  }

  // metrics.csv: one row per (trial, planner).
  {
    std::ofstream os(options.out_dir / "metrics.csv");
    os << "trial,planner,rv,wv,visited,waste,path_length\n";
    for (const TrialRecord& r : result.records) {
      os << r.trial << ',' << to_string(r.planner) << ',' << fmt(r.metrics.rv) << ','
         << fmt(r.metrics.wv) << ',' << r.metrics.visited << ',' << fmt(r.metrics.waste) << ','
         << fmt(r.metrics.path_length) << '\n';
    }
  }

  // aggregate.csv: mean and sample standard deviation per planner.
  {
    std::ofstream os(options.out_dir / "aggregate.csv");
    os << "planner,trials,rv_mean,rv_std,wv_mean,wv_std,visited_mean,visited_std,"
          "waste_mean,waste_std,path_mean,path_std,all_completed\n";
    for (PlannerKind kind : spec.planners) {
      std::vector<double> rv, wv, visited, waste, path;
      bool completed = true;
      for (const TrialRecord& r : result.records) {
        if (r.planner != kind) continue;
        rv.push_back(r.metrics.rv);
        wv.push_back(r.metrics.wv);
        visited.push_back(static_cast<double>(r.metrics.visited));
        waste.push_back(r.metrics.waste);
        path.push_back(r.metrics.path_length);
        completed = completed && r.completed;
      }
      os << to_string(kind) << ',' << rv.size();
      append_stats(os, rv);
      append_stats(os, wv);
      append_stats(os, visited);
      append_stats(os, waste);
      append_stats(os, path);
      os << ',' << (completed ? 1 : 0) << '\n';
    }
  }

  if (options.write_curves) {
    std::ofstream os(options.out_dir / "curves.csv");
    os << "planner,trial,visited,gain_fraction,waste\n";
    for (const TrialOutput& out : outputs) {
      for (const std::string& block : out.curves) os << block;
    }
  }

  if (options.write_traces) {
    for (int t = 0; t < trials; ++t) {
      const TrialOutput& out = outputs[static_cast<size_t>(t)];
      for (size_t k = 0; k < out.traces.size(); ++k) {
        const std::string name = "trace_" + std::string(to_string(spec.planners[k])) + "_" +
                                 std::to_string(t) + ".log";
        std::ofstream os(options.out_dir / "traces" / name);
        os << out.traces[k];
      }
    }
  }

  return result;
}

void run_fig6_left(const Fig6LeftSpec& spec, std::uint64_t seed,
                   const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const RandomSource rng(seed);
  std::ofstream os(out_dir / "fig6_left.csv");
  os << "ratio,mu,abort_rate\n";
  std::uint64_t series = 0;
  for (double mu : spec.gain_ratios) {
    const PriorityClassSet classes({PriorityClass{1, mu, spec.mean_cost}});
    const auto rates = abort_rate_study(classes, spec.ratios, spec.trials, rng, ++series);
    for (const AbortRatePoint& pt : rates) {
      os << fmt(pt.ratio) << ',' << fmt(mu) << ',' << fmt(pt.rate) << '\n';
    }
  }
}

void run_fig6_right(const Fig6RightSpec& spec, std::uint64_t seed,
                    const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  const RandomSource rng(seed);
  std::ofstream os(out_dir / "fig6_right.csv");
  os << "ratio1,ratio2,abort_rate\n";
  std::uint64_t series = 0;
  for (double r1 : spec.ratios1) {
    for (double r2 : spec.ratios2) {
      const PriorityClassSet classes({PriorityClass{1, spec.mu1, spec.budget / r1},
                                      PriorityClass{2, spec.mu2, spec.budget / r2}});
      const double rate = abort_rate(classes, spec.budget, spec.trials, rng, ++series);
      os << fmt(r1) << ',' << fmt(r2) << ',' << fmt(rate) << '\n';
    }
  }
}

}  // namespace aislesim
