#include "aislesim/study.hpp"

#include <stdexcept>

#include "aislesim/stopping.hpp"

namespace aislesim {

TripOutcome simulate_resource_trip(const PriorityClassSet& classes, double budget,
                                   RngStream& rng) {
  TripOutcome out;
  TripState state{budget, 0.0};
  for (long guard = 0; guard < 100'000'000; ++guard) {
    const int level =
        descend_level(state, classes.max_level(), classes, [](int) { return true; });
    if (level == 0) return out;
    const PriorityClass& cls = classes.at(level);
    const double cost = rng.exponential(cls.mean_cost);
    ++out.attempts;
    if (cost > state.resource) {
      out.aborted = true;
      return out;
    }
    state.resource -= cost;
    state.gain += cls.gain_ratio * cost;
  }
  throw std::runtime_error("abort-rate trip failed to terminate");
}

double abort_rate(const PriorityClassSet& classes, double budget, int trials,
                  const RandomSource& rng, std::uint64_t series) {
  double total = 0.0;
  for (int t = 0; t < trials; ++t) {
    RngStream stream = rng.stream(static_cast<std::uint64_t>(t), series, stream_purpose::kStudy);
    const TripOutcome out = simulate_resource_trip(classes, budget, stream);
    if (out.aborted && out.attempts > 0) total += 1.0 / static_cast<double>(out.attempts);
  }
  return trials > 0 ? total / static_cast<double>(trials) : 0.0;
}

std::vector<AbortRatePoint> abort_rate_study(const PriorityClassSet& classes,
                                             std::span<const double> budget_ratios, int trials,
                                             const RandomSource& rng, std::uint64_t series) {
  std::vector<AbortRatePoint> out;
  out.reserve(budget_ratios.size());
  const double w1 = classes.at(1).mean_cost;
  for (size_t i = 0; i < budget_ratios.size(); ++i) {
    const double budget = budget_ratios[i] * w1;
    out.push_back({budget_ratios[i],
                   abort_rate(classes, budget, trials, rng, series * 1000 + i)});
  }
  return out;
}

}  // namespace aislesim
