#pragma once

#include <memory>

#include "aislesim/planner.hpp"

namespace aislesim {

// Serpentine surveyors. The naive variant attempts every pending task it
// reaches while any resource remains; the informed variant skips a task
// whenever the remaining resource is not above its expected cost. With a
// team, rows are interleaved by robot id so sweeps never collide.
std::unique_ptr<Planner> make_lawnmower(const WorldView& world, int team_size, bool informed);

// Greedy partial-row routes built from expected costs: repeatedly commit the
// row prefix with the best expected gain per combined expected cost, within
// both budgets; robots plan sequentially with each other's rows excluded.
std::unique_ptr<Planner> make_series_gpr(const WorldView& world, int team_size);

}  // namespace aislesim
