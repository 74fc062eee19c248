#pragma once

#include <span>
#include <vector>

#include "aislesim/aisle_graph.hpp"

// Walk construction helpers shared by the planners and the executor. Paths
// list every vertex after the starting pose.
namespace aislesim::route {

// Cost of the edge between two adjacent vertices.
double edge_cost(const AisleGraph& g, VertexId a, VertexId b);

// In-row walk from an interior pose to the boundary vertex ahead.
void append_row_exit(const AisleGraph& g, VertexId pose, Heading h, std::vector<VertexId>& out);

// Column walk from a boundary vertex to the same column in target_row.
void append_vertical(VertexId from_boundary, int target_row, std::vector<VertexId>& out);

// Walk from the boundary vertex of `row` on `entry` into the row, up to and
// including target_col.
void append_row_advance(const AisleGraph& g, int row, Side entry, int target_col,
                        std::vector<VertexId>& out);

// Composite legal walk from (pose, heading) to the interior vertex
// (target_row, target_col), entering rows only from their ends. A target in
// the robot's own row must lie ahead.
std::vector<VertexId> path_to_row_target(const AisleGraph& g, VertexId pose, MaybeHeading heading,
                                         int target_row, int target_col);

double path_cost(const AisleGraph& g, VertexId pose, std::span<const VertexId> path);

}  // namespace aislesim::route
