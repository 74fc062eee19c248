#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "aislesim/dp_oracle.hpp"
#include "aislesim/stopping.hpp"

using namespace aislesim;

TEST_CASE("no resource left means the banked gain") {
  const PriorityClassSet classes({{1, 1.0, 2.0}});
  const ExpectedReturnGrid grid(classes, 0.01, 1.0, 6.0);
  CHECK(grid.value(0.0, 5.0) == 5.0);
  CHECK(grid.value(0.0, 0.0) == 0.0);
}

TEST_CASE("the value never drops below stopping now") {
  const PriorityClassSet classes({{1, 1.0, 2.0}});
  const ExpectedReturnGrid grid(classes, 0.01, 1.0, 3.0);
  for (int i = 0; i <= 100; i += 10) {
    for (int j = 0; j <= 300; j += 30) {
      const double p = i * 0.01;
      const double q = j * 0.01;
      CHECK(grid.value(p, q) >= q);
    }
  }
}

TEST_CASE("grid value agrees with the one-more-task stop rule") {
  const PriorityClass cls{1, 1.0, 2.0};
  const PriorityClassSet classes({cls});
  const double h = cls.mean_cost / 200.0;
  const double p_max = cls.mean_cost;
  const double gain_max = 1.3 * stop_boundary(p_max, cls);
  const ExpectedReturnGrid grid(classes, h, p_max, gain_max);

  const double tol = 1e-3 * cls.mean_cost * cls.gain_ratio;
  int below = 0;
  int above = 0;
  for (int i = 4; i <= 200; i += 4) {
    for (int j = 0; j <= 160; j += 4) {
      const double p = i * h;
      const double q = j * grid.gain_step();
      if (q > gain_max) continue;
      const double phi = grid.value(p, q);
      const double g = stop_boundary(p, cls);
      if (q >= g) {
        CHECK(phi - q <= tol);
        ++above;
      } else {
        CHECK(phi - q > 0.0);
        ++below;
      }
    }
  }
  CHECK(below > 100);
  CHECK(above > 100);
}

TEST_CASE("plenty of resource and no gain yet is worth continuing") {
  const PriorityClass cls{1, 1.0, 0.1};
  const PriorityClassSet classes({cls});
  // p = 10 mean costs; most of that is convertible into gain
  const ExpectedReturnGrid grid(classes, 0.1 / 50.0, 1.0, 1.5);
  const double phi = grid.value(1.0, 0.0);
  CHECK(phi > 0.0);
  CHECK(phi >= 0.5);
  CHECK(phi <= 1.0 + 1e-9);
}

TEST_CASE("two-level values are bounded by the better single level") {
  const PriorityClassSet both({{1, 1.0, 1.5}, {2, 2.0, 2.0}});
  const PriorityClassSet only1({{1, 1.0, 1.5}});
  const PriorityClassSet only2({{1, 2.0, 2.0}});
  const double h = 1.5 / 200.0;
  const ExpectedReturnGrid gb(both, h, 1.5, 4.0);
  const ExpectedReturnGrid g1(only1, h, 1.5, 4.0);
  const ExpectedReturnGrid g2(only2, h, 1.5, 4.0);
  // The one-level grids discretize differently, so allow discretization play.
  for (int i = 20; i <= 200; i += 20) {
    const double p = i * h;
    const double q = 0.0;
    const double vb = gb.value(p, q);
    CHECK(vb >= g1.value(p, q) - 1e-4);
    CHECK(vb >= g2.value(p, q) - 1e-4);
  }
}
