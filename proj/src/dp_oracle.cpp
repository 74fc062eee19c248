#include "aislesim/dp_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "aislesim/kernels.hpp"

namespace aislesim {

ExpectedReturnGrid::ExpectedReturnGrid(const PriorityClassSet& classes, double resource_step,
                                       double resource_max, double gain_max_eval) {
  if (classes.empty()) throw std::invalid_argument("expected-return grid: no priority classes");
  if (!(resource_step > 0.0)) throw std::invalid_argument("expected-return grid: step must be positive");

  h_ = resource_step;
  np_ = static_cast<int>(std::lround(resource_max / h_));
  if (np_ < 1) throw std::invalid_argument("expected-return grid: resource_max below one step");

  double mu_min = classes.at(1).gain_ratio;
  double mu_max = mu_min;
  for (const PriorityClass& c : classes.all()) {
    mu_min = std::min(mu_min, c.gain_ratio);
    mu_max = std::max(mu_max, c.gain_ratio);
  }
  k_ = mu_min * h_;
  const int nq_eval = static_cast<int>(std::ceil(gain_max_eval / k_));
  nq_ = nq_eval + static_cast<int>(std::ceil(mu_max * resource_max / k_)) + 2;

  values_.assign(static_cast<size_t>(np_ + 1) * (nq_ + 1), 0.0);
  for (int j = 0; j <= nq_; ++j) values_[static_cast<size_t>(j)] = j * k_;

  // Per-class quadrature tables: node weights lambda*e^{-lambda x}*h at the
  // cell midpoints, and the gain offset of each node in gain-grid units.
  struct ClassTable {
    std::vector<double> weights;
    std::vector<int> gain_base;
    std::vector<double> gain_frac;
    int max_nodes = 0;
  };
  std::vector<ClassTable> tables;
  for (const PriorityClass& c : classes.all()) {
    ClassTable t;
    const double lambda = c.rate();
    const double tail = 40.0 / lambda;
    t.max_nodes = std::min(np_, static_cast<int>(std::ceil(tail / h_)));
    // Exact probability mass of each cost cell; the value function is read at
    // the cell midpoint. Reading a linear value exactly reproduces the
    // one-more-task return, so the stop rule survives discretization.
    std::vector<double> edges(static_cast<size_t>(t.max_nodes) + 1);
    for (int l = 0; l <= t.max_nodes; ++l) edges[static_cast<size_t>(l)] = lambda * l * h_;
    std::vector<double> decay(edges.size());
    kernels::exp_neg(edges, decay);
    t.weights.resize(static_cast<size_t>(t.max_nodes));
    for (int l = 1; l <= t.max_nodes; ++l) {
      t.weights[l - 1] = decay[l - 1] - decay[static_cast<size_t>(l)];
    }
    t.gain_base.resize(t.weights.size());
    t.gain_frac.resize(t.weights.size());
    for (int l = 1; l <= t.max_nodes; ++l) {
      const double off = c.gain_ratio * (l - 0.5) * h_ / k_;
      t.gain_base[l - 1] = static_cast<int>(std::floor(off));
      t.gain_frac[l - 1] = off - t.gain_base[l - 1];
    }
    tables.push_back(std::move(t));
  }

  std::vector<double> gathered(static_cast<size_t>(np_));
  for (int i = 1; i <= np_; ++i) {
    // Columns whose recursion stays inside the table at this depth.
    const int j_cap = nq_ - static_cast<int>(std::ceil(mu_max * i * h_ / k_)) - 1;
    for (int j = 0; j <= nq_; ++j) {
      const double stay = j * k_;
      double best = stay;
      if (j <= j_cap) {
        for (const ClassTable& t : tables) {
          const int nodes = std::min(i, t.max_nodes);
          for (int l = 1; l <= nodes; ++l) {
            const int jb = j + t.gain_base[l - 1];
            const double f = t.gain_frac[l - 1];
            // The first cell would touch the row under construction; read its
            // finished neighbour instead (one-sided, O(h) on one tiny weight).
            const int row_hi = std::min(i - l + 1, i - 1);
            const double lo = (1.0 - f) * cell(i - l, jb) + f * cell(i - l, jb + 1);
            const double hi = (1.0 - f) * cell(row_hi, jb) + f * cell(row_hi, jb + 1);
            gathered[l - 1] = 0.5 * (lo + hi);
          }
          const double cont = kernels::weighted_sum(
              std::span<const double>(t.weights.data(), static_cast<size_t>(nodes)),
              std::span<const double>(gathered.data(), static_cast<size_t>(nodes)));
          best = std::max(best, cont);
        }
      }
      values_[static_cast<size_t>(i) * (nq_ + 1) + j] = best;
    }
  }
}

double ExpectedReturnGrid::value(double resource, double gain) const {
  const int i = static_cast<int>(std::lround(resource / h_));
  const int j = static_cast<int>(std::lround(gain / k_));
  if (i < 0 || i > np_ || j < 0 || j > nq_) {
    throw std::invalid_argument("expected-return grid: state outside the grid");
  }
  if (std::abs(i * h_ - resource) > 1e-9 * std::max(1.0, resource) ||
      std::abs(j * k_ - gain) > 1e-9 * std::max(1.0, gain)) {
    throw std::invalid_argument("expected-return grid: state not on the grid");
  }
  return cell(i, j);
}

}  // namespace aislesim
