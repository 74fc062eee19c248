#include "aislesim/stopping.hpp"

#include <cmath>
#include <stdexcept>

#include "aislesim/kernels.hpp"

namespace aislesim {

namespace {

// expm1(x) - x with full relative precision near 0.
double expm1m_one(double x) {
  double out;
  kernels::expm1m(std::span<const double>(&x, 1), std::span<double>(&out, 1));
  return out;
}

// log(expm1(x) - x) without overflow for large x.
double log_expm1m(double x) {
  if (x > 1.0) return x + std::log1p(-(1.0 + x) * std::exp(-x));
  return std::log(expm1m_one(x));
}

double log_boundary(double resource, const PriorityClass& cls) {
  return std::log(cls.gain_ratio * cls.mean_cost) + log_expm1m(resource * cls.rate());
}

}  // namespace

double stop_boundary(double resource, const PriorityClass& cls) {
  if (!(resource >= 0.0)) throw std::invalid_argument("stop_boundary: negative resource");
  return cls.gain_ratio * cls.mean_cost * expm1m_one(resource * cls.rate());
}

void stop_boundary_batch(std::span<const double> resource, const PriorityClass& cls,
                         std::span<double> out) {
  if (resource.size() != out.size()) throw std::invalid_argument("stop_boundary_batch: size mismatch");
  const double lambda = cls.rate();
  std::vector<double> scaled(resource.size());
  for (size_t i = 0; i < resource.size(); ++i) {
    if (!(resource[i] >= 0.0)) throw std::invalid_argument("stop_boundary_batch: negative resource");
    scaled[i] = resource[i] * lambda;
  }
  kernels::expm1m(scaled, out);
  const double scale = cls.gain_ratio * cls.mean_cost;
  for (double& v : out) v *= scale;
}

bool level_feasible(const TripState& state, const PriorityClass& cls) {
  return state.resource > 0.0 && state.gain < stop_boundary(state.resource, cls);
}

CandidateSet sample_candidates(const TripState& state, int start_level,
                               std::span<const Task> tasks, const PriorityClassSet& classes) {
  CandidateSet out;
  out.level = descend_level(state, start_level, classes, [&](int level) {
    for (const Task& t : tasks) {
      if (t.effective_level() == level) return true;
    }
    return false;
  });
  if (out.level == 0) return out;
  for (const Task& t : tasks) {
    if (t.effective_level() == out.level) out.tasks.push_back(&t);
  }
  return out;
}

BoundaryRelation classify_boundary_pair(const PriorityClass& low, const PriorityClass& high) {
  if (!(low.level < high.level)) {
    throw std::invalid_argument("classify_boundary_pair: low.level must be below high.level");
  }
  if (!(low.gain_ratio < high.gain_ratio)) {
    throw std::invalid_argument("classify_boundary_pair: gain ratio must increase with the level");
  }
  if (low.mean_cost >= high.mean_cost) {
    return {BoundaryOrder::HigherAlwaysAbove, 0.0};
  }

  // Near 0 both curves behave like mu*lambda*p^2/2, so their order there is
  // the order of mu*lambda; for large p the lower level's larger rate always
  // wins. The log-space difference is evaluated to stay finite at large p.
  const double lead_high = high.gain_ratio * high.rate();
  const double lead_low = low.gain_ratio * low.rate();
  if (lead_high <= lead_low) {
    return {BoundaryOrder::HigherAlwaysBelow, 0.0};
  }

  const auto diff = [&](double p) { return log_boundary(p, high) - log_boundary(p, low); };
  const double p_cap = 200.0 * std::max(low.mean_cost, high.mean_cost);
  double lo = 1e-9 * std::min(low.mean_cost, high.mean_cost);
  double hi = lo;
  while (diff(hi) > 0.0) {
    hi *= 2.0;
    if (hi > p_cap) {
      // No crossing below any practical budget; behaves like the dominated case.
      return {BoundaryOrder::HigherAlwaysAbove, 0.0};
    }
  }
  lo = hi / 2.0;
  for (int it = 0; it < 200 && (hi - lo) > 1e-10 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (diff(mid) > 0.0 ? lo : hi) = mid;
  }
  return {BoundaryOrder::CrossesOnce, 0.5 * (lo + hi)};
}

}  // namespace aislesim
