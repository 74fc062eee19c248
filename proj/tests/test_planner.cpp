#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "aislesim/planner.hpp"
#include "aislesim/rng.hpp"
#include "aislesim/stopping.hpp"
#include "support/oracle.hpp"

using namespace aislesim;

namespace {

AisleGraph unit_graph(int m, int n, std::vector<VertexId> bases) {
  return AisleGraph::build(m, n, AisleGraph::Costs::uniform(m, n, 1.0), std::move(bases));
}

struct World {
  const AisleGraph& graph;
  PriorityClassSet classes;
  std::vector<Task> tasks;
  PendingIndex pending;

  World(const AisleGraph& g, PriorityClassSet cls, std::vector<Task> ts, double p0, double t0)
      : graph(g),
        classes(std::move(cls)),
        tasks(std::move(ts)),
        pending(g, tasks, classes.max_level()),
        view{g, classes, tasks, pending, p0, t0, g.base_stations().front()} {}

  WorldView view;
};

std::vector<const Task*> refs(const std::vector<Task>& tasks) {
  std::vector<const Task*> out;
  for (const Task& t : tasks) out.push_back(&t);
  return out;
}

}  // namespace

TEST_CASE("row-level energy feasibility") {
  const AisleGraph g = unit_graph(3, 3, {{2, 0}});
  RobotState r{0, {1, 1}, Heading::Right, {40.0, 0.0}, 7.0};
  // 4 to reach row 3's right end, 2 across, 1 back up to the base row
  CHECK(energy_feasible(g, r, 3));
  r.energy = 6.0;
  CHECK_FALSE(energy_feasible(g, r, 3));
  // no energy at all
  RobotState at_base{0, {2, 0}, std::nullopt, {40.0, 0.0}, 0.0};
  CHECK_FALSE(energy_feasible(g, at_base, 1));
}

TEST_CASE("candidate filtering") {
  const AisleGraph g = unit_graph(4, 3, {{2, 0}, {2, 4}});
  std::vector<Task> tasks = {
      {{1, 1}, 1, 1.0, TaskStatus::Pending},
      {{1, 3}, 1, 1.0, TaskStatus::Pending},
      {{3, 2}, 1, 1.0, TaskStatus::Pending},
  };
  const auto q1 = refs(tasks);
  RobotState r{0, {2, 0}, std::nullopt, {40.0, 0.0}, 100.0};

  SUBCASE("nothing filtered with ample energy and no claims") {
    CHECK(filter_candidates(g, r, q1, RowClaims{}).size() == 3);
  }

  SUBCASE("an occupied row drops out") {
    const auto got = filter_candidates(g, r, q1, RowClaims{{3}});
    REQUIRE(got.size() == 2);
    CHECK(got[0]->vertex.row == 1);
    CHECK(got[1]->vertex.row == 1);
  }

  SUBCASE("the robot's own row is exempt from claims") {
    RobotState mid{0, {3, 1}, Heading::Right, {40.0, 0.0}, 100.0};
    const auto got = filter_candidates(g, mid, q1, RowClaims{{3}});
    CHECK(std::any_of(got.begin(), got.end(),
                      [](const Task* t) { return t->vertex.row == 3; }));
  }

  SUBCASE("own-row tasks behind the heading are unreachable this epoch") {
    RobotState mid{0, {1, 2}, Heading::Right, {40.0, 0.0}, 100.0};
    const auto got = filter_candidates(g, mid, q1, RowClaims{});
    for (const Task* t : got) {
      if (t->vertex.row == 1) CHECK(t->vertex.col >= 2);
    }
    CHECK(std::none_of(got.begin(), got.end(),
                       [](const Task* t) { return t->vertex == VertexId{1, 1}; }));
  }

  SUBCASE("energy starvation empties the set") {
    RobotState weak{0, {2, 0}, std::nullopt, {40.0, 0.0}, 1.0};
    CHECK(filter_candidates(g, weak, q1, RowClaims{}).empty());
  }
}

TEST_CASE("row selection") {
  const AisleGraph g = unit_graph(4, 6, {{4, 0}});
  const PriorityClass cls{1, 1.0, 2.0};
  std::vector<Task> tasks;
  for (int c = 1; c <= 3; ++c) tasks.push_back({{1, c}, 1, 1.0, TaskStatus::Pending});
  for (int c = 1; c <= 5; ++c) tasks.push_back({{2, c}, 1, 1.0, TaskStatus::Pending});
  const auto q2 = refs(tasks);

  SUBCASE("more expected completions win") {
    RobotState r{0, {4, 0}, std::nullopt, {20.0, 0.0}, 1000.0};
    CHECK(select_row(q2, r, cls, g) == 2);  // 5 > 3, cap is 10
  }

  SUBCASE("a binding cap ties the rows and distance decides") {
    RobotState r{0, {4, 0}, std::nullopt, {4.0, 0.0}, 1000.0};
    // cap = 2 clamps both rows; row 2 is closer to the base row 4
    CHECK(select_row(q2, r, cls, g) == 2);
    // from the top, row 1 is closer
    RobotState top{0, {1, 0}, std::nullopt, {4.0, 0.0}, 1000.0};
    CHECK(select_row(q2, top, cls, g) == 1);
  }

  SUBCASE("a single candidate row is returned") {
    std::vector<Task> only = {{{3, 2}, 1, 1.0, TaskStatus::Pending}};
    const auto q = refs(only);
    RobotState r{0, {4, 0}, std::nullopt, {20.0, 0.0}, 1000.0};
    CHECK(select_row(q, r, cls, g) == 3);
  }

  SUBCASE("full tie breaks to the lowest row index") {
    std::vector<Task> sym = {{{1, 3}, 1, 1.0, TaskStatus::Pending},
                             {{3, 3}, 1, 1.0, TaskStatus::Pending}};
    const auto q = refs(sym);
    RobotState r{0, {2, 0}, std::nullopt, {20.0, 0.0}, 1000.0};
    CHECK(select_row(q, r, cls, g) == 1);
  }

  CHECK_THROWS_AS(select_row({}, RobotState{}, cls, g), std::invalid_argument);
}

TEST_CASE("row selection ignores task order inside rows") {
  const AisleGraph g = unit_graph(5, 6, {{3, 0}});
  const PriorityClass cls{1, 1.0, 2.0};
  std::vector<Task> tasks;
  for (int c : {2, 5, 3}) tasks.push_back({{1, c}, 1, 1.0, TaskStatus::Pending});
  for (int c : {4, 1}) tasks.push_back({{4, c}, 1, 1.0, TaskStatus::Pending});
  RobotState r{0, {3, 0}, std::nullopt, {20.0, 0.0}, 1000.0};
  auto q = refs(tasks);
  const int base = select_row(q, r, cls, g);
  std::sort(q.begin(), q.end());
  do {
    CHECK(select_row(q, r, cls, g) == base);
  } while (std::next_permutation(q.begin(), q.end()));
}

TEST_CASE("next action") {
  const AisleGraph g = unit_graph(3, 3, {{2, 0}});

  SUBCASE("no pending tasks anywhere returns to base") {
    World w(g, PriorityClassSet({{1, 1.0, 2.0}}), {}, 40.0, 80.0);
    RobotState r{0, {1, 2}, Heading::Right, {40.0, 0.0}, 80.0};
    const Action a = next_action(w.view, r, RowClaims{});
    CHECK(a.kind == Action::Kind::ReturnToBase);
    REQUIRE(!a.path.empty());
    CHECK(g.is_base(a.path.back()));
  }

  SUBCASE("a state on or above every boundary returns to base") {
    World w(g, PriorityClassSet({{1, 1.0, 2.0}}),
            {{{1, 1}, 1, 1.0, TaskStatus::Pending}}, 40.0, 80.0);
    const double q = stop_boundary(5.0, w.classes.at(1)) + 0.1;
    RobotState r{0, {2, 0}, std::nullopt, {5.0, q}, 80.0};
    CHECK(next_action(w.view, r, RowClaims{}).kind == Action::Kind::ReturnToBase);
  }

  SUBCASE("an energy-infeasible higher level falls through to a feasible lower one") {
    // bases on both ends of row 2; level-2 task in row 3, level-1 on row 2
    const AisleGraph g2 = unit_graph(3, 3, {{2, 0}, {2, 4}});
    World w(g2, PriorityClassSet({{1, 1.0, 1.5}, {2, 2.0, 2.0}}),
            {{{3, 2}, 2, 1.0, TaskStatus::Pending}, {{2, 2}, 1, 1.0, TaskStatus::Pending}},
            40.0, 80.0);
    // row 3 costs 1 down + 2 across + 1 up = 4; row 2 costs 0 + 2 + 0 = 2
    RobotState r{0, {2, 0}, std::nullopt, {40.0, 0.0}, 3.0};
    REQUIRE_FALSE(energy_feasible(g2, r, 3));
    const Action a = next_action(w.view, r, RowClaims{});
    REQUIRE(a.kind == Action::Kind::Perform);
    CHECK(a.row == 2);
    CHECK(a.target == VertexId{2, 2});
  }

  SUBCASE("performs the first pending task from the entry side") {
    World w(g, PriorityClassSet({{1, 1.0, 2.0}}),
            {{{1, 3}, 1, 1.0, TaskStatus::Pending}, {{1, 2}, 1, 1.0, TaskStatus::Pending}},
            40.0, 80.0);
    RobotState r{0, {2, 0}, std::nullopt, {40.0, 0.0}, 80.0};
    const Action a = next_action(w.view, r, RowClaims{});
    REQUIRE(a.kind == Action::Kind::Perform);
    CHECK(a.row == 1);
    CHECK(a.target == VertexId{1, 2});
    // walk is legal step by step
    VertexId at = r.pose;
    MaybeHeading h = r.heading;
    for (VertexId v : a.path) {
      CHECK(g.is_legal_move(at, h, v));
      h = v.row == at.row ? MaybeHeading(v.col > at.col ? Heading::Right : Heading::Left)
                          : std::nullopt;
      at = v;
    }
    CHECK(at == a.target);
  }

  SUBCASE("claimed rows are avoided") {
    World w(g, PriorityClassSet({{1, 1.0, 2.0}}),
            {{{1, 2}, 1, 1.0, TaskStatus::Pending}, {{3, 2}, 1, 1.0, TaskStatus::Pending}},
            40.0, 80.0);
    RobotState r{0, {2, 0}, std::nullopt, {40.0, 0.0}, 80.0};
    const Action a = next_action(w.view, r, RowClaims{{1}});
    REQUIRE(a.kind == Action::Kind::Perform);
    CHECK(a.row == 3);
  }
}

TEST_CASE("the op pipeline and the planner decision agree") {
  // sample -> filter -> select, run by hand, must reproduce next_action for
  // robots deciding at a row end (mid-row decisions add the own-row
  // continuation preference on top).
  RngStream rng(8080);
  for (int iter = 0; iter < 150; ++iter) {
    const int m = 3 + static_cast<int>(rng.next_below(5));
    const int n = 3 + static_cast<int>(rng.next_below(5));
    const AisleGraph g = unit_graph(m, n, {{1 + static_cast<int>(rng.next_below(m)), 0},
                                           {1 + static_cast<int>(rng.next_below(m)), n + 1}});
    const int k = 1 + static_cast<int>(rng.next_below(2));
    std::vector<PriorityClass> cls;
    for (int lv = 1; lv <= k; ++lv) cls.push_back({lv, double(lv), 0.5 + 2.0 * rng.next_unit()});
    std::vector<Task> tasks;
    for (int r = 1; r <= m; ++r) {
      for (int c = 1; c <= n; ++c) {
        if (rng.next_below(3) == 0) {
          tasks.push_back({{r, c}, 1 + static_cast<int>(rng.next_below(k)), 1.0,
                           TaskStatus::Pending});
        }
      }
    }
    World w(g, PriorityClassSet(cls), std::move(tasks), 40.0, 80.0);
    RobotState robot{0,
                     {1 + static_cast<int>(rng.next_below(m)), rng.next_below(2) ? 0 : n + 1},
                     std::nullopt,
                     {rng.next_unit() * 12.0, rng.next_unit() * 4.0},
                     4.0 + rng.next_unit() * 40.0};
    RowClaims claims(rng.next_below(3) == 0
                         ? std::vector<int>{1 + static_cast<int>(rng.next_below(m))}
                         : std::vector<int>{});

    const Action got = next_action(w.view, robot, claims);

    // reference composition of the public operations
    Action want;
    want.kind = Action::Kind::ReturnToBase;
    int s = w.classes.max_level();
    while (s > 0) {
      const CandidateSet cand = sample_candidates(robot.trip, s, w.tasks, w.classes);
      if (cand.level == 0) break;
      const auto q2 = filter_candidates(g, robot, cand.tasks, claims);
      if (q2.empty()) {
        s = cand.level - 1;
        continue;
      }
      want.kind = Action::Kind::Perform;
      want.row = select_row(q2, robot, w.classes.at(cand.level), g);
      const Side entry = g.entry_side(robot.pose, robot.heading);
      int best_col = entry == Side::Left ? n + 1 : 0;
      for (const Task* t : q2) {
        if (t->vertex.row != want.row) continue;
        best_col = entry == Side::Left ? std::min(best_col, t->vertex.col)
                                       : std::max(best_col, t->vertex.col);
      }
      want.target = {want.row, best_col};
      break;
    }

    CHECK(got.kind == want.kind);
    if (got.kind == Action::Kind::Perform) {
      CHECK(got.row == want.row);
      CHECK(got.target == want.target);
    }
  }
}

TEST_CASE("coordinated decisions") {
  const AisleGraph g = unit_graph(5, 3, {{3, 0}, {3, 4}});

  SUBCASE("one robot behaves exactly like the solo decision") {
    World w(g, PriorityClassSet({{1, 1.0, 2.0}}),
            {{{2, 1}, 1, 1.0, TaskStatus::Pending}}, 40.0, 80.0);
    const RobotState r{0, {3, 0}, std::nullopt, {40.0, 0.0}, 80.0};
    const auto actions = coordinate_step(w.view, std::vector<RobotState>{r});
    const Action solo = next_action(w.view, r, RowClaims{});
    REQUIRE(actions.size() == 1);
    CHECK(actions[0].kind == solo.kind);
    CHECK(actions[0].row == solo.row);
    CHECK(actions[0].target == solo.target);
  }

  SUBCASE("the second robot yields the contested row and takes its next best") {
    // row 2 has two tasks, row 4 has one: both robots would prefer row 2
    World w(g, PriorityClassSet({{1, 1.0, 2.0}}),
            {{{2, 1}, 1, 1.0, TaskStatus::Pending},
             {{2, 3}, 1, 1.0, TaskStatus::Pending},
             {{4, 2}, 1, 1.0, TaskStatus::Pending}},
            40.0, 80.0);
    const std::vector<RobotState> robots = {
        {0, {3, 0}, std::nullopt, {40.0, 0.0}, 80.0},
        {1, {3, 0}, std::nullopt, {40.0, 0.0}, 80.0},
    };
    const auto actions = coordinate_step(w.view, robots);
    REQUIRE(actions.size() == 2);
    REQUIRE(actions[0].kind == Action::Kind::Perform);
    REQUIRE(actions[1].kind == Action::Kind::Perform);
    CHECK(actions[0].row == 2);
    CHECK(actions[1].row == 4);
  }

  SUBCASE("a robot working a row keeps later deciders out of it") {
    World w(g, PriorityClassSet({{1, 1.0, 2.0}}),
            {{{2, 3}, 1, 1.0, TaskStatus::Pending},
             {{4, 2}, 1, 1.0, TaskStatus::Pending}},
            40.0, 80.0);
    const std::vector<RobotState> robots = {
        {0, {2, 1}, Heading::Right, {39.0, 1.0}, 70.0},  // mid-row 2
        {1, {3, 0}, std::nullopt, {40.0, 0.0}, 80.0},
    };
    const auto actions = coordinate_step(w.view, robots);
    REQUIRE(actions[1].kind == Action::Kind::Perform);
    CHECK(actions[1].row == 4);
  }
}

TEST_CASE("return planning") {
  const AisleGraph g = unit_graph(3, 3, {{2, 0}});

  SUBCASE("already at a base") {
    RobotState r{0, {2, 0}, std::nullopt, {0.0, 0.0}, 0.0};
    CHECK(plan_return(g, r).empty());
  }

  SUBCASE("cost matches the directed oracle") {
    RngStream rng(5);
    for (int iter = 0; iter < 40; ++iter) {
      RobotState r;
      r.pose = {1 + static_cast<int>(rng.next_below(3)), 1 + static_cast<int>(rng.next_below(3))};
      r.heading = rng.next_below(2) == 0 ? Heading::Left : Heading::Right;
      const auto path = plan_return(g, r);
      REQUIRE(!path.empty());
      CHECK(g.is_base(path.back()));
      double cost = 0.0;
      VertexId at = r.pose;
      for (VertexId v : path) {
        cost += v.row == at.row ? g.horizontal_cost(at.row, std::min(at.col, v.col))
                                : g.vertical_cost(at.col == 0 ? Side::Left : Side::Right,
                                                  std::min(at.row, v.row));
        at = v;
      }
      CHECK(cost == doctest::Approx(testsupport::min_return_cost(g, r.pose, r.heading)));
    }
  }

  SUBCASE("a mid-row return exits ahead, never reversing") {
    RobotState r{0, {1, 2}, Heading::Right, {0.0, 0.0}, 10.0};
    const auto path = plan_return(g, r);
    REQUIRE(path.size() >= 2);
    CHECK(path.front() == VertexId{1, 3});  // forced forward
  }
}
