#pragma once

#include <vector>

#include "aislesim/types.hpp"

namespace aislesim {

// Discretized expected-return function Phi(p, q) under unlimited task supply:
// the value of either banking the trip gain now or performing one more task
// of the best level and continuing optimally. An attempt whose cost exceeds
// the remaining resource forfeits the trip return, which is what makes
// stopping meaningful.
//
// Verification oracle for the closed-form stopping boundary; planners never
// consult it. The cost integral is a midpoint quadrature over the exponential
// density (tail truncated at 40 mean costs) with bilinear value lookups.
class ExpectedReturnGrid {
 public:
  // resource axis: step and inclusive maximum (max is rounded to the grid).
  // gain_max_eval: largest gain that value() will be asked for; the internal
  // table extends beyond it to cover the recursion.
  ExpectedReturnGrid(const PriorityClassSet& classes, double resource_step, double resource_max,
                     double gain_max_eval);

  // Phi at a grid state; (resource, gain) must lie on the grid.
  double value(double resource, double gain) const;

  double resource_step() const { return h_; }
  double gain_step() const { return k_; }

 private:
  double cell(int i, int j) const { return values_[static_cast<size_t>(i) * (nq_ + 1) + j]; }

  double h_ = 0.0;
  double k_ = 0.0;
  int np_ = 0;
  int nq_ = 0;
  std::vector<double> values_;
};

}  // namespace aislesim
