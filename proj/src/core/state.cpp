#include "hamflow/state.hpp"

#include <stdexcept>

namespace hamflow {

Trajectory::Trajectory(std::vector<TrajectorySample> samples, double energy)
    : samples_(std::move(samples)), energy_(energy) {
  if (samples_.empty()) throw std::invalid_argument("trajectory must be non-empty");
  for (std::size_t i = 1; i < samples_.size(); ++i) {
    if (!(samples_[i].t > samples_[i - 1].t))
      throw std::invalid_argument("trajectory times must be strictly increasing");
  }
}

}  // namespace hamflow
