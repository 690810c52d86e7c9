#pragma once

#include <vector>

#include "nlslab/field.hpp"
#include "nlslab/nonlinearity.hpp"
#include "nlslab/train.hpp"
#include "nlslab/trajectory.hpp"

namespace nlslab {

struct EvolutionConfig {
  double dt = 1e-3;               // signed; negative integrates backward
  double t_end = 0.0;             // reached exactly via a fractional last step
  bool dealias = false;           // 2/3-rule projector in the kinetic substep
  std::size_t snapshot_stride = 1;
  bool record_metrics = true;     // conserved-quantity observer per snapshot
};

// Exact free propagator: Fourier multiplier e^{-i|k|^2 t}; unitary.
Field free_propagate(const Field& u, double t);

// One Strang step: half kinetic, exact nonlinear phase rotation
// u -> e^{i g(|u|^2) dt} u, half kinetic. Mass-preserving and invertible.
// phase_warn (optional) is set when |g| |dt| >= pi somewhere on the grid.
Field step_strang(const Field& u, double dt, const Nonlinearity& nl,
                  bool dealias = false, bool* phase_warn = nullptr);

// Repeated Strang stepping from u0.time_tag to cfg.t_end with snapshots every
// snapshot_stride steps (initial and final always included). Throws
// numerical_blowup carrying the last completed time when the field leaves
// bounds (sup > 1e6 or non-finite).
Trajectory evolve(const Field& u0, const Nonlinearity& nl,
                  const EvolutionConfig& cfg);

// One backward run of the approximation scheme: terminal data W(T_n), solved
// backward to T0, with distances to the moving profile sum recorded on the
// snapshot grid.
struct BackwardRecord {
  double T_n = 0.0;
  Trajectory traj;                   // from T_n down to T0
  std::vector<double> h1_to_profile; // per snapshot
  std::vector<double> l2_to_profile;
  Field initial_data;                // u_n(T0)
  bool blowup = false;
  double blowup_time = 0.0;
};

std::vector<BackwardRecord> backward_scheme(const TrainSpec& train,
                                            const Nonlinearity& nl,
                                            const std::vector<double>& horizons,
                                            double T0, const Grid& grid,
                                            const EvolutionConfig& cfg);

}  // namespace nlslab
