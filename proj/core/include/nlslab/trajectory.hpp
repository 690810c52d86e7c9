#pragma once

#include <vector>

#include "nlslab/field.hpp"
#include "nlslab/metrics.hpp"

namespace nlslab {

// Time-ordered snapshots of one evolution run plus per-snapshot observer
// records. `times` is monotone in the direction of integration (decreasing
// for backward runs).
struct Trajectory {
  std::vector<Field> snapshots;
  std::vector<double> times;
  std::vector<MetricRecord> records;
  bool phase_bound_violated = false;  // |g(|u|^2) dt| >= pi seen in a step
  std::size_t steps_taken = 0;
};

inline double strichartz_norm(const Trajectory& traj,
                              const std::vector<AdmissiblePair>& pairs) {
  return strichartz_norm(traj.snapshots, traj.times, pairs);
}

}  // namespace nlslab
