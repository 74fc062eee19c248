#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aislesim/rng.hpp"
#include "aislesim/types.hpp"

namespace aislesim {

// Resource-only trip simulation under unlimited task supply: every level
// always has a task, energy is ignored. Attempts follow the level descent;
// the trip ends either at a boundary stop or with an abort.
struct TripOutcome {
  int attempts = 0;
  bool aborted = false;
};
TripOutcome simulate_resource_trip(const PriorityClassSet& classes, double budget, RngStream& rng);

// Rate of aborted tasks: the per-trip fraction of attempted tasks that ended
// in an abort (0 or 1/attempts, since an abort ends the trip), averaged over
// `trials` independent trips.
double abort_rate(const PriorityClassSet& classes, double budget, int trials,
                  const RandomSource& rng, std::uint64_t series);

struct AbortRatePoint {
  double ratio = 0.0;  // budget / mean cost of level 1
  double rate = 0.0;
};

// Abort rate across budget ratios for a fixed class set; budget = ratio * w1.
std::vector<AbortRatePoint> abort_rate_study(const PriorityClassSet& classes,
                                             std::span<const double> budget_ratios, int trials,
                                             const RandomSource& rng, std::uint64_t series = 0);

}  // namespace aislesim
