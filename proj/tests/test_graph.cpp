#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "aislesim/aisle_graph.hpp"
#include "aislesim/rng.hpp"
#include "support/oracle.hpp"

using namespace aislesim;

namespace {

AisleGraph unit_graph(int m, int n, std::vector<VertexId> bases) {
  return AisleGraph::build(m, n, AisleGraph::Costs::uniform(m, n, 1.0), std::move(bases));
}

AisleGraph random_graph(int m, int n, RngStream& rng, bool unit_costs) {
  auto costs = AisleGraph::Costs::uniform(m, n, 1.0);
  if (!unit_costs) {
    for (auto& row : costs.horizontal) {
      for (size_t j = 1; j + 1 < row.size(); ++j) row[j] = 0.25 + 2.0 * rng.next_unit();
    }
    for (auto& c : costs.vertical_left) c = 0.25 + 2.0 * rng.next_unit();
    for (auto& c : costs.vertical_right) c = 0.25 + 2.0 * rng.next_unit();
  }
  std::vector<VertexId> bases;
  const int b = 1 + static_cast<int>(rng.next_below(2));
  for (int i = 0; i < b; ++i) {
    bases.push_back({1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m))),
                     rng.next_below(2) == 0 ? 0 : n + 1});
  }
  return AisleGraph::build(m, n, std::move(costs), std::move(bases));
}

}  // namespace

TEST_CASE("construction enforces the topology rules") {
  CHECK_NOTHROW(unit_graph(3, 3, {{2, 0}}));
  CHECK_NOTHROW(unit_graph(1, 1, {{1, 0}}));
  CHECK_NOTHROW(unit_graph(20, 15, {{10, 0}, {10, 16}}));

  // base on an interior column
  CHECK_THROWS_AS(unit_graph(3, 3, {{2, 1}}), std::invalid_argument);
  // no bases
  CHECK_THROWS_AS(unit_graph(3, 3, {}), std::invalid_argument);
  // negative edge cost
  {
    auto costs = AisleGraph::Costs::uniform(3, 3, 1.0);
    costs.vertical_left[0] = -1.0;
    CHECK_THROWS_AS(AisleGraph::build(3, 3, std::move(costs), {{2, 0}}), std::invalid_argument);
  }
  // connector edge with nonzero cost
  {
    auto costs = AisleGraph::Costs::uniform(3, 3, 1.0);
    costs.horizontal[0][0] = 0.5;
    CHECK_THROWS_AS(AisleGraph::build(3, 3, std::move(costs), {{2, 0}}), std::invalid_argument);
  }
}

TEST_CASE("legal moves") {
  const AisleGraph g = unit_graph(3, 3, {{2, 0}});

  // forced forward move inside a row
  CHECK(g.legal_moves({1, 2}, Heading::Right) == std::vector<VertexId>{{1, 3}});
  // three-edge boundary vertex, fresh heading
  {
    const auto moves = g.legal_moves({2, 0}, std::nullopt);
    const std::set<VertexId> want{{1, 0}, {3, 0}, {2, 1}};
    CHECK(std::set<VertexId>(moves.begin(), moves.end()) == want);
  }
  // corner reached moving right: only the vertical neighbour
  CHECK(g.legal_moves({1, 4}, Heading::Right) == std::vector<VertexId>{{2, 4}});
  // same corner reached vertically may enter the row
  {
    const auto moves = g.legal_moves({1, 4}, std::nullopt);
    const std::set<VertexId> want{{2, 4}, {1, 3}};
    CHECK(std::set<VertexId>(moves.begin(), moves.end()) == want);
  }
}

TEST_CASE("degree rules match the three-bullet edge construction") {
  RngStream rng(99);
  for (int iter = 0; iter < 30; ++iter) {
    const int m = 1 + static_cast<int>(rng.next_below(7));
    const int n = 1 + static_cast<int>(rng.next_below(7));
    const AisleGraph g = unit_graph(m, n, {{1, 0}});
    for (int i = 1; i <= m; ++i) {
      for (int j = 0; j <= n + 1; ++j) {
        // union of moves over every arrival state = undirected neighbours
        std::set<VertexId> nbrs;
        if (g.is_interior_col(j)) {
          for (Heading h : {Heading::Left, Heading::Right}) {
            for (VertexId v : g.legal_moves({i, j}, h)) nbrs.insert(v);
          }
        } else {
          for (VertexId v : g.legal_moves({i, j}, std::nullopt)) nbrs.insert(v);
        }
        size_t want = 0;
        if (g.is_interior_col(j)) {
          want = 2;  // e_{i,(j-1)+} and e_{i,j+}
        } else {
          const bool corner = (i == 1 || i == m);
          want = corner ? (m == 1 ? 1 : 2) : 3;
        }
        CHECK(nbrs.size() == want);
      }
    }
  }
}

TEST_CASE("row traverse cost") {
  const AisleGraph g3 = unit_graph(3, 3, {{2, 0}});
  CHECK(g3.row_traverse_cost(1) == doctest::Approx(2.0));

  auto zero = AisleGraph::Costs::uniform(3, 3, 0.0);
  const AisleGraph gz = AisleGraph::build(3, 3, std::move(zero), {{2, 0}});
  CHECK(gz.row_traverse_cost(2) == 0.0);

  const AisleGraph g20 = unit_graph(20, 15, {{10, 0}, {10, 16}});
  CHECK(g20.row_traverse_cost(5) == doctest::Approx(14.0));

  CHECK_THROWS_AS(g3.row_traverse_cost(0), std::invalid_argument);
  CHECK_THROWS_AS(g3.row_traverse_cost(4), std::invalid_argument);
}

TEST_CASE("vertical return cost to the closest base") {
  const AisleGraph g3 = unit_graph(3, 3, {{2, 0}});
  // ending the row on column 0, from row 3 to the base row 2
  CHECK(g3.base_return_vertical(3, Heading::Left) == doctest::Approx(1.0));
  CHECK(g3.base_return_vertical(2, Heading::Left) == 0.0);
  // no base on the right column
  CHECK_THROWS_AS(g3.base_return_vertical(1, Heading::Right), std::invalid_argument);

  const AisleGraph g20 = unit_graph(20, 15, {{10, 0}, {10, 16}});
  CHECK(g20.base_return_vertical(1, Heading::Right) == doctest::Approx(9.0));

  // two bases on one column: the closer one wins
  const AisleGraph g2 = unit_graph(9, 3, {{1, 0}, {8, 0}});
  CHECK(g2.base_return_vertical(7, Heading::Left) == doctest::Approx(1.0));
}

TEST_CASE("row access cost") {
  const AisleGraph g3 = unit_graph(3, 3, {{2, 0}});
  // mid-row, heading right, to row 3: 2 ahead + 2 vertical on the right column
  CHECK(g3.row_access_cost({1, 1}, Heading::Right, 3) == doctest::Approx(4.0));
  // already at the boundary vertex of the target row
  CHECK(g3.row_access_cost({3, 0}, std::nullopt, 3) == 0.0);

  const AisleGraph g20 = unit_graph(20, 15, {{10, 0}, {10, 16}});
  CHECK(g20.row_access_cost({10, 0}, std::nullopt, 10) == 0.0);

  // own row counts only the forward edges
  CHECK(g3.row_access_cost({1, 2}, Heading::Right, 1) == doctest::Approx(1.0));
  // boundary turnaround needs the adjacent-row detour
  CHECK(g3.row_access_cost({1, 0}, Heading::Left, 1) == doctest::Approx(2.0));
}

TEST_CASE("movement terms are pose-independent where required") {
  RngStream rng(7);
  const AisleGraph g = random_graph(5, 4, rng, false);
  // row_traverse_cost and base_return_vertical take no pose; row_access_cost
  // must not depend on anything but pose, heading and row: exhaustively check
  // that repeated evaluation is stable and matches a fresh graph copy.
  const AisleGraph g2 = g;
  for (int row = 1; row <= 5; ++row) {
    CHECK(g.row_traverse_cost(row) == g2.row_traverse_cost(row));
    for (int j = 1; j <= 4; ++j) {
      for (Heading h : {Heading::Left, Heading::Right}) {
        CHECK(g.row_access_cost({row, j}, h, 3) == g2.row_access_cost({row, j}, h, 3));
      }
    }
  }
}

TEST_CASE("access+traverse+return bounds the directed through-row oracle") {
  RngStream rng(4242);
  int equality_checked = 0;
  for (int iter = 0; iter < 60; ++iter) {
    const int m = 2 + static_cast<int>(rng.next_below(5));
    const int n = 2 + static_cast<int>(rng.next_below(5));
    const bool unit = iter % 2 == 0;
    const AisleGraph g = random_graph(m, n, rng, unit);
    for (int trial = 0; trial < 8; ++trial) {
      const int row = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m)));
      VertexId pose;
      MaybeHeading heading;
      if (rng.next_below(2) == 0) {
        pose = {1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m))),
                rng.next_below(2) == 0 ? 0 : n + 1};
      } else {
        pose = {1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m))),
                1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)))};
        if (pose.row == row) continue;  // own-row sums are not through-row walks
        heading = rng.next_below(2) == 0 ? Heading::Left : Heading::Right;
      }
      const double sum = g.row_access_cost(pose, heading, row) + g.row_traverse_cost(row) +
                         g.return_cost_after_row(row, g.exit_side_after(pose, heading, row));
      const double oracle = testsupport::through_row_return_cost(g, pose, heading, row);
      CHECK(sum >= oracle - 1e-9);
      // The sum prices one specific full traversal: entering on the side the
      // heading dictates. With unit costs that walk is optimal for its side.
      const Side entry = g.entry_side(pose, heading);
      const double side_oracle =
          testsupport::through_row_return_cost_from(g, pose, heading, row, entry);
      if (unit && n >= 2 && !(g.is_boundary_col(pose.col) && heading)) {
        CHECK(sum == doctest::Approx(side_oracle));
        ++equality_checked;
      }
    }
  }
  CHECK(equality_checked > 50);
}

TEST_CASE("return table matches the oracle and paths replay to their cost") {
  RngStream rng(31337);
  for (int iter = 0; iter < 25; ++iter) {
    const int m = 2 + static_cast<int>(rng.next_below(5));
    const int n = 2 + static_cast<int>(rng.next_below(5));
    const AisleGraph g = random_graph(m, n, rng, iter % 2 == 0);
    for (int trial = 0; trial < 6; ++trial) {
      VertexId pose;
      MaybeHeading heading;
      if (rng.next_below(2) == 0) {
        pose = {1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m))),
                rng.next_below(2) == 0 ? 0 : n + 1};
      } else {
        pose = {1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(m))),
                1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(n)))};
        heading = rng.next_below(2) == 0 ? Heading::Left : Heading::Right;
      }
      const double want = testsupport::min_return_cost(g, pose, heading);
      CHECK(g.return_cost(pose, heading) == doctest::Approx(want));

      const auto path = g.plan_return_path(pose, heading);
      if (g.is_base(pose)) {
        CHECK(path.empty());
      } else {
        REQUIRE(!path.empty());
        CHECK(g.is_base(path.back()));
        // path edges sum to the table value and are all legal
        double cost = 0.0;
        VertexId at = pose;
        MaybeHeading h = heading;
        for (VertexId v : path) {
          CHECK(g.is_legal_move(at, h, v));
          if (v.row == at.row) {
            cost += g.horizontal_cost(at.row, std::min(at.col, v.col));
            h = v.col > at.col ? Heading::Right : Heading::Left;
          } else {
            cost += g.vertical_cost(at.col == 0 ? Side::Left : Side::Right, std::min(at.row, v.row));
            h.reset();
          }
          at = v;
        }
        CHECK(cost == doctest::Approx(want));
      }
    }
  }
}
