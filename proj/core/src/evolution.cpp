#include "nlslab/evolution.hpp"

#include <algorithm>
#include <cmath>

#include "nlslab/errors.hpp"
#include "nlslab/fft.hpp"

namespace nlslab {

namespace {

constexpr double kBlowupSup = 1e6;

// in-place nonlinear substep: u -> e^{i g(|u|^2) dt} u (|u| invariant);
// doubles as the blowup sentinel since |u| is unchanged by the rotation
void nonlinear_apply(Field& u, double dt, const Nonlinearity& nl,
                     bool* phase_warn, double t_now) {
  const std::size_t n = u.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double s = std::norm(u.values[i]);
    if (!std::isfinite(s) || s > kBlowupSup * kBlowupSup)
      throw numerical_blowup("field left bounds during the nonlinear substep",
                             t_now);
    const double phase = nl.g(s) * dt;
    if (phase_warn && std::abs(phase) >= M_PI) *phase_warn = true;
    u.values[i] *= std::polar(1.0, phase);
  }
}

void check_finite(const Field& u, double t_now) {
  for (const cplx& v : u.values) {
    const double a = std::norm(v);
    if (!std::isfinite(a) || a > kBlowupSup * kBlowupSup)
      throw numerical_blowup("field left bounds", t_now);
  }
}

}  // namespace

Field free_propagate(const Field& u, double t) {
  Field out = u;
  fft::phase_evolve(out, t, false);
  out.time_tag = u.time_tag + t;
  return out;
}

Field step_strang(const Field& u, double dt, const Nonlinearity& nl,
                  bool dealias, bool* phase_warn) {
  Field out = u;
  fft::phase_evolve(out, dt / 2.0, dealias);
  nonlinear_apply(out, dt, nl, phase_warn, u.time_tag);
  fft::phase_evolve(out, dt / 2.0, dealias);
  out.time_tag = u.time_tag + dt;
  return out;
}

Trajectory evolve(const Field& u0, const Nonlinearity& nl,
                  const EvolutionConfig& cfg) {
  const double t0 = u0.time_tag;
  const double span = cfg.t_end - t0;
  if (cfg.dt == 0.0 || span / cfg.dt <= 0.0)
    throw parameter_error("evolve: (t_end - t_start)/dt must be positive");
  const std::size_t stride = std::max<std::size_t>(1, cfg.snapshot_stride);

  // full steps of dt plus one fractional step landing exactly on t_end
  const double nf = span / cfg.dt;
  std::size_t n_full = static_cast<std::size_t>(std::floor(nf + 1e-9));
  double frac = span - static_cast<double>(n_full) * cfg.dt;
  if (std::abs(frac) < 1e-12 * std::abs(cfg.dt)) frac = 0.0;

  Trajectory traj;
  auto snapshot = [&](const Field& f) {
    traj.snapshots.push_back(f);
    traj.times.push_back(f.time_tag);
    if (cfg.record_metrics) traj.records.push_back(conserved(f, nl));
  };

  Field u = u0;
  check_finite(u, t0);
  snapshot(u);

  // fused stepping: adjacent half-kinetic substeps combine between steps
  std::size_t step = 0;
  bool mid = false;  // true when the leading half-kinetic is already applied
  while (step < n_full) {
    const double t_now = t0 + static_cast<double>(step) * cfg.dt;
    if (!mid) fft::phase_evolve(u, cfg.dt / 2.0, cfg.dealias);
    nonlinear_apply(u, cfg.dt, nl, &traj.phase_bound_violated, t_now);
    ++step;
    ++traj.steps_taken;
    const bool need_exact = step % stride == 0 || step == n_full;
    if (need_exact) {
      fft::phase_evolve(u, cfg.dt / 2.0, cfg.dealias);
      mid = false;
      u.time_tag = t0 + static_cast<double>(step) * cfg.dt;
      if (step % stride == 0 && !(step == n_full && frac == 0.0)) snapshot(u);
    } else {
      fft::phase_evolve(u, cfg.dt, cfg.dealias);
      mid = true;
    }
  }
  if (frac != 0.0) {
    fft::phase_evolve(u, frac / 2.0, cfg.dealias);
    nonlinear_apply(u, frac, nl, &traj.phase_bound_violated, cfg.t_end - frac);
    fft::phase_evolve(u, frac / 2.0, cfg.dealias);
    ++traj.steps_taken;
  }
  u.time_tag = cfg.t_end;
  check_finite(u, cfg.t_end);
  snapshot(u);
  return traj;
}

std::vector<BackwardRecord> backward_scheme(const TrainSpec& train,
                                            const Nonlinearity& nl,
                                            const std::vector<double>& horizons,
                                            double T0, const Grid& grid,
                                            const EvolutionConfig& cfg) {
  const auto rep = validate_multi_soliton_params(train);
  if (!rep.ok) {
    std::string msg = "backward_scheme: invalid train";
    for (const auto& m : rep.messages) msg += "; " + m;
    throw parameter_error(msg);
  }
  for (double T : horizons)
    if (T <= T0)
      throw parameter_error("backward_scheme: horizons must exceed T0");

  std::vector<BackwardRecord> out;
  out.reserve(horizons.size());
  for (double T : horizons) {
    BackwardRecord rec;
    rec.T_n = T;
    rec.initial_data = Field(grid, T0);
    EvolutionConfig bcfg = cfg;
    bcfg.dt = -std::abs(cfg.dt);
    bcfg.t_end = T0;
    Field terminal = sum_profile(train, grid, T);
    terminal.time_tag = T;
    try {
      rec.traj = evolve(terminal, nl, bcfg);
      for (std::size_t i = 0; i < rec.traj.snapshots.size(); ++i) {
        const Field ref =
            sum_profile(train, grid, rec.traj.times[i]);
        const auto dist = distances(rec.traj.snapshots[i], ref);
        rec.h1_to_profile.push_back(dist.h1);
        rec.l2_to_profile.push_back(dist.l2);
      }
      rec.initial_data = rec.traj.snapshots.back();
    } catch (const numerical_blowup& b) {
      rec.blowup = true;
      rec.blowup_time = b.last_good_time;
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace nlslab
