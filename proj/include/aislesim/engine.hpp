#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "aislesim/mission.hpp"
#include "aislesim/planner.hpp"

namespace aislesim {

struct TraceEvent {
  enum class Kind { Move, Attempt, Complete, Abort, Reset };
  Kind kind = Kind::Move;
  int robot = 0;
  VertexId from{};  // Move only
  VertexId at{};    // Move: destination; otherwise the event vertex
  double cost = 0.0;    // Move: edge cost; Complete: actual task cost
  double amount = 0.0;  // Complete: gain; Abort: wasted resource
};

// Fully ordered, replayable event log of one mission execution, with enough
// header data to recompute metrics standalone.
struct MissionTrace {
  std::string planner;
  int team_size = 1;
  int rows = 0;
  int cols = 0;  // interior columns
  double resource_budget = 0.0;
  double energy_budget = 0.0;
  std::size_t task_count = 0;
  double total_gain = 0.0;
  bool completed = false;
  std::vector<TraceEvent> events;
};

struct Metrics {
  double rv = 0.0;  // gain fraction per visited vertex
  double wv = 0.0;  // wasted resource per visited vertex
  std::size_t visited = 0;
  double waste = 0.0;
  double gain = 0.0;
  double gain_fraction = 0.0;
  double path_length = 0.0;
  std::size_t completed = 0;
  std::size_t aborted = 0;
};

// Runs the mission to termination: robots act in id order, one decision
// epoch per turn, each seeing the rows the others currently occupy. Task
// attempts resolve against the hidden actual cost; exceeding the remaining
// resource aborts the task, wasting what is left of the trip budget. Base
// arrival restores both budgets. Violated motion or energy invariants throw.
MissionTrace execute(const Mission& mission, PlannerKind planner, int team_size);

Metrics compute_metrics(const MissionTrace& trace);

// Line-delimited text round trip.
void write_trace(std::ostream& os, const MissionTrace& trace);
MissionTrace read_trace(std::istream& is);

}  // namespace aislesim
