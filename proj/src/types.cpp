#include "aislesim/types.hpp"

namespace aislesim {

PriorityClassSet::PriorityClassSet(std::vector<PriorityClass> classes) : classes_(std::move(classes)) {
  for (size_t i = 0; i < classes_.size(); ++i) {
    const PriorityClass& c = classes_[i];
    if (c.level != static_cast<int>(i) + 1) {
      throw std::invalid_argument("priority levels must be contiguous from 1");
    }
    if (!(c.mean_cost > 0.0)) throw std::invalid_argument("mean task cost must be positive");
    if (!(c.gain_ratio > 0.0)) throw std::invalid_argument("gain ratio must be positive");
    if (i > 0 && !(classes_[i - 1].gain_ratio < c.gain_ratio)) {
      throw std::invalid_argument("gain ratio must be strictly increasing with the level");
    }
  }
}

}  // namespace aislesim
