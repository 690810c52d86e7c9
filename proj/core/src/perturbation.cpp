#include "nlslab/perturbation.hpp"

#include <algorithm>
#include <cmath>

#include "nlslab/errors.hpp"
#include "nlslab/fft.hpp"
#include "nlslab/metrics.hpp"

namespace nlslab {

namespace {

constexpr double kBlowupSup = 1e6;

// Far-field skip: a localized component whose tail cannot reach the box above
// 1e-18 of scale contributes nothing at working tolerances. Kinks (nonzero
// limits) are never skipped.
bool part_reaches(const WaveSpec& w, const Grid& g, double t) {
  if (!w.profile || w.profile->kind == ProfileKind::Kink) return true;
  const double a = w.profile->decay_rate_a;
  const double amp = w.profile->peak();
  if (!(a > 0.0) || !(amp > 0.0)) return true;
  const Vec center = w.x0 + w.v * t;
  double dist2 = 0.0;
  for (int axis = 0; axis < g.d; ++axis) {
    const double c = axis == 0 ? center.x : center.y;
    const double over = std::abs(c) - 0.5 * g.lengths[axis];
    if (over > 0.0) dist2 += over * over;
  }
  if (dist2 == 0.0) return true;
  return amp * std::exp(-a * std::sqrt(dist2)) > 1e-18 * std::max(1.0, amp);
}

// One pass over the grid accumulating wsum = sum_j W_j and fsum = sum_j
// f(W_j). With a single component f(wsum) - fsum is identically zero in
// floating point, which keeps exact backgrounds exact.
void accumulate_background(const std::vector<WaveSpec>& parts,
                           const Nonlinearity& nl, const Grid& grid, double t,
                           Field& scratch, std::vector<cplx>& wsum,
                           std::vector<cplx>& fsum) {
  const std::size_t n = grid.size();
  wsum.assign(n, cplx{0.0, 0.0});
  fsum.assign(n, cplx{0.0, 0.0});
  for (const WaveSpec& part : parts) {
    if (!part_reaches(part, grid, t)) continue;
    realize(part, t, scratch, /*accumulate=*/false);
    for (std::size_t i = 0; i < n; ++i) {
      const cplx v = scratch.values[i];
      wsum[i] += v;
      fsum[i] += nl.f(v);
    }
  }
}

void check_finite(const Field& u, double t_now) {
  for (const cplx& v : u.values) {
    const double a = std::norm(v);
    if (!std::isfinite(a) || a > kBlowupSup * kBlowupSup)
      throw numerical_blowup("perturbation left bounds", t_now);
  }
}

// Outermost-ring amplitude against rel_tol * max(peak, 1e-13).
void check_boundary(const Field& f, double rel_tol) {
  const Grid& g = f.grid;
  double peak = 0.0;
  for (const cplx& v : f.values) peak = std::max(peak, std::abs(v));
  double ring = 0.0;
  if (g.d == 1) {
    ring = std::max(std::abs(f.values.front()), std::abs(f.values.back()));
  } else {
    const std::size_t nx = g.counts[0], ny = g.counts[1];
    for (std::size_t ix = 0; ix < nx; ++ix)
      for (std::size_t iy = 0; iy < ny; ++iy)
        if (ix == 0 || ix == nx - 1 || iy == 0 || iy == ny - 1)
          ring = std::max(ring, std::abs(f.values[ix * ny + iy]));
  }
  if (ring > rel_tol * std::max(peak, 1e-13))
    throw boundary_contamination(
        "perturbation amplitude " + std::to_string(ring) +
        " at the box boundary exceeds " + std::to_string(rel_tol) +
        " of its peak");
}

}  // namespace

cplx BackgroundW::evaluate(double t, Vec x) const {
  cplx acc{0.0, 0.0};
  for (const WaveSpec& p : parts) acc += eval_wave(p, t, x);
  return acc;
}

cplx BackgroundW::evaluate_laplacian(double t, Vec x) const {
  cplx acc{0.0, 0.0};
  for (const WaveSpec& p : parts) acc += eval_wave_laplacian(p, t, x);
  return acc;
}

Field BackgroundW::realize(const Grid& grid, double t) const {
  return realize_sum(parts, grid, t);
}

BackgroundW make_background(TrainSpec train) {
  BackgroundW W;
  W.parts = all_components(train);
  W.train = std::move(train);
  return W;
}

Field source_term(const BackgroundW& W, double t, const Grid& grid) {
  if (!W.train.nl) throw parameter_error("source_term: train has no nonlinearity");
  const Nonlinearity& nl = *W.train.nl;
  Field H(grid, t);
  Field scratch(grid, t);
  std::vector<cplx> wsum, fsum;
  accumulate_background(W.parts, nl, grid, t, scratch, wsum, fsum);
  for (std::size_t i = 0; i < H.size(); ++i)
    H.values[i] = nl.f(wsum[i]) - fsum[i];
  return H;
}

Trajectory evolve_perturbation(const Field& eta0, const BackgroundW& W,
                               const Nonlinearity& nl,
                               const EvolutionConfig& cfg) {
  const Grid& grid = eta0.grid;
  const double t0 = eta0.time_tag;
  const double span = cfg.t_end - t0;
  if (cfg.dt == 0.0 || span / cfg.dt <= 0.0)
    throw parameter_error(
        "evolve_perturbation: (t_end - t_start)/dt must be positive");
  const std::size_t stride = std::max<std::size_t>(1, cfg.snapshot_stride);

  check_boundary(eta0, 1e-8);  // localized initial data

  const double nf = span / cfg.dt;
  std::size_t n_full = static_cast<std::size_t>(std::floor(nf + 1e-9));
  double frac = span - static_cast<double>(n_full) * cfg.dt;
  if (std::abs(frac) < 1e-12 * std::abs(cfg.dt)) frac = 0.0;

  Trajectory traj;
  auto snapshot = [&](const Field& f) {
    check_boundary(f, 1e-6);
    traj.snapshots.push_back(f);
    traj.times.push_back(f.time_tag);
    if (cfg.record_metrics) {
      MetricRecord rec = conserved(f, nl);
      rec.l2_dist = l2_norm(f);  // distance of u = W + eta to the background
      rec.h1_dist = h1_norm(f);
      traj.records.push_back(rec);
    }
  };

  Field eta = eta0;
  Field scratch(grid);
  std::vector<cplx> wsum, fsum;
  std::vector<cplx> stage(grid.size());
  const std::size_t n = grid.size();
  check_finite(eta, t0);
  snapshot(eta);

  // One Strang step of size h starting at t_now: half kinetic, two-stage
  // explicit midpoint for d(eta)/dt = i (f(W+eta) - sum_j f(W_j)) with the
  // analytic background at stage times t_now and t_now + h/2, half kinetic.
  auto substep = [&](double h, double t_now) {
    fft::phase_evolve(eta, h / 2.0, cfg.dealias);
    accumulate_background(W.parts, nl, grid, t_now, scratch, wsum, fsum);
    for (std::size_t i = 0; i < n; ++i)
      stage[i] = eta.values[i] + cplx(0.0, 0.5 * h) *
                                     (nl.f(wsum[i] + eta.values[i]) - fsum[i]);
    accumulate_background(W.parts, nl, grid, t_now + h / 2.0, scratch, wsum,
                          fsum);
    for (std::size_t i = 0; i < n; ++i)
      eta.values[i] += cplx(0.0, h) * (nl.f(wsum[i] + stage[i]) - fsum[i]);
    fft::phase_evolve(eta, h / 2.0, cfg.dealias);
  };

  std::size_t step = 0;
  while (step < n_full) {
    const double t_now = t0 + static_cast<double>(step) * cfg.dt;
    substep(cfg.dt, t_now);
    ++step;
    ++traj.steps_taken;
    eta.time_tag = t0 + static_cast<double>(step) * cfg.dt;
    check_finite(eta, eta.time_tag);
    if (step % stride == 0 && !(step == n_full && frac == 0.0)) snapshot(eta);
  }
  if (frac != 0.0) {
    substep(frac, t0 + static_cast<double>(n_full) * cfg.dt);
    ++traj.steps_taken;
  }
  eta.time_tag = cfg.t_end;
  check_finite(eta, cfg.t_end);
  snapshot(eta);
  return traj;
}

PicardResult picard_iterate(const BackgroundW& W, const Nonlinearity& nl,
                            double t0, double T_max, const Grid& grid,
                            double dt, const PicardOptions& opts) {
  if (!(T_max > t0))
    throw parameter_error("picard_iterate: T_max must exceed t0");
  if (!(dt > 0.0)) throw parameter_error("picard_iterate: dt must be positive");
  if (opts.n_iter == 0)
    throw parameter_error("picard_iterate: n_iter must be positive");

  const double span = T_max - t0;
  const std::size_t M = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::llround(span / dt)));
  const double h = span / static_cast<double>(M);  // node spacing used

  PicardResult res;
  res.tau.resize(M + 1);
  for (std::size_t j = 0; j <= M; ++j)
    res.tau[j] = t0 + static_cast<double>(j) * h;
  res.eta.reserve(M + 1);
  for (std::size_t j = 0; j <= M; ++j) res.eta.emplace_back(grid, res.tau[j]);

  const std::size_t n = grid.size();
  Field carry(grid);
  Field scratch(grid);
  std::vector<cplx> wsum, fsum;
  const double w_end = 0.5 * h;  // trapezoid end weight; interior weight is h

  // Backward recurrence per sweep: carry C accumulates the quadrature of
  // U(tau_j - tau) F(tau) over the nodes above j, so
  //   eta_new[j] = -i (C_shifted + (h/2) F_j),  C <- C_shifted + h F_j.
  // The stored iterate is overwritten in place: F_j is read from the old
  // eta[j] before the node is replaced.
  std::size_t consecutive_bad = 0;
  for (std::size_t k = 1; k <= opts.n_iter; ++k) {
    double inc = 0.0, sl2 = 0.0, sh1 = 0.0;
    accumulate_background(W.parts, nl, grid, res.tau[M], scratch, wsum, fsum);
    for (std::size_t i = 0; i < n; ++i)
      carry.values[i] =
          w_end * (nl.f(wsum[i] + res.eta[M].values[i]) - fsum[i]);
    // terminal node keeps eta(T_max) = 0
    for (std::size_t j = M; j-- > 0;) {
      fft::phase_evolve(carry, -h, false);
      accumulate_background(W.parts, nl, grid, res.tau[j], scratch, wsum,
                            fsum);
      double local2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const cplx F = nl.f(wsum[i] + res.eta[j].values[i]) - fsum[i];
        const cplx G = carry.values[i] + w_end * F;
        const cplx enew = cplx(0.0, -1.0) * G;
        local2 += std::norm(enew - res.eta[j].values[i]);
        res.eta[j].values[i] = enew;
        carry.values[i] = G + w_end * F;
      }
      inc = std::max(inc, std::sqrt(local2 * grid.cell()));
      sl2 = std::max(sl2, l2_norm(res.eta[j]));
      sh1 = std::max(sh1, h1_norm(res.eta[j]));
    }
    res.increments.push_back(inc);
    res.sup_l2.push_back(sl2);
    res.sup_h1.push_back(sh1);
    res.iterations = k;
    if (opts.store_iterates) res.iterates.push_back(res.eta);
    if (res.increments.size() >= 2) {
      const double prev = res.increments[res.increments.size() - 2];
      const double ratio = prev == 0.0 ? 0.0 : inc / prev;
      res.ratios.push_back(ratio);
      if (!(ratio <= 1.0)) {
        if (++consecutive_bad >= 2) res.no_contraction = true;
      } else {
        consecutive_bad = 0;
      }
    }
    if (!std::isfinite(inc)) {  // diverged past floating-point range
      res.no_contraction = true;
      break;
    }
    if (inc == 0.0) break;  // exact fixed point (e.g. single component)
    if (opts.converge_tol > 0.0 && inc < opts.converge_tol) break;
  }

  // Horizon-truncation bookkeeping: the neglected tail of the Duhamel
  // integral is bounded by the measured decay of ||H|| beyond T_max.
  {
    std::vector<double> ts, vals;
    const double s = span / 16.0;
    for (int m = 0; m <= 8; ++m) {
      const double tm = T_max + s * static_cast<double>(m);
      const Field Hm = source_term(W, tm, grid);
      if (m == 0) {
        double sup = 0.0;
        for (const cplx& v : Hm.values) sup = std::max(sup, std::abs(v));
        res.h_sup_at_tmax = sup;
        res.h_l2_at_tmax = l2_norm(Hm);
      }
      ts.push_back(tm);
      vals.push_back(l2_norm(Hm));
    }
    res.tail_bound = res.h_l2_at_tmax;
    try {
      const FitResult fit = fit_exponential_rate(ts, vals);
      if (fit.rate > 1e-12) res.tail_bound = res.h_l2_at_tmax / fit.rate;
    } catch (const domain_error&) {
      // H vanished identically beyond T_max; keep the direct value (0).
    }
  }
  return res;
}

double perturbation_residual_at(const PicardResult& result,
                                const BackgroundW& W, const Nonlinearity& nl,
                                double t_query, double delta) {
  if (result.tau.size() < 2 || result.eta.size() != result.tau.size())
    throw insufficient_data(
        "perturbation_residual_at needs at least two stored time nodes");
  const double h = result.tau[1] - result.tau[0];
  if (!(delta > 0.0) || delta >= h)
    throw parameter_error(
        "perturbation_residual_at: delta must lie in (0, node spacing)");

  // nearest node with an upper neighbor
  const double pos = (t_query - result.tau.front()) / h;
  std::ptrdiff_t jq = static_cast<std::ptrdiff_t>(std::llround(pos));
  jq = std::max<std::ptrdiff_t>(
      0, std::min<std::ptrdiff_t>(
             jq, static_cast<std::ptrdiff_t>(result.tau.size()) - 2));
  const std::size_t j = static_cast<std::size_t>(jq);

  const Grid& grid = result.eta[j].grid;
  const std::size_t n = grid.size();
  Field scratch(grid);
  std::vector<cplx> wsum, fsum;
  auto F_of = [&](double t, const Field& eta_at) {
    accumulate_background(W.parts, nl, grid, t, scratch, wsum, fsum);
    Field F(grid, t);
    for (std::size_t i = 0; i < n; ++i)
      F.values[i] = nl.f(wsum[i] + eta_at.values[i]) - fsum[i];
    return F;
  };

  const double tj = result.tau[j];
  const Field& ej = result.eta[j];
  const Field& ej1 = result.eta[j + 1];
  const Field Fj = F_of(tj, ej);
  const Field Fj1 = F_of(result.tau[j + 1], ej1);

  // eta(tj - delta): free flight from node j plus the short-leg trapezoid
  // of the Duhamel integral over [tj - delta, tj].
  Field lo = ej;
  fft::phase_evolve(lo, -delta, false);
  const Field Flo = F_of(tj - delta, lo);
  Field Fj_sh = Fj;
  fft::phase_evolve(Fj_sh, -delta, false);
  for (std::size_t i = 0; i < n; ++i)
    lo.values[i] -=
        cplx(0.0, 0.5 * delta) * (Flo.values[i] + Fj_sh.values[i]);

  // eta(tj + delta): same construction anchored at node j+1, leg h - delta.
  // Anchoring the two legs at distinct nodes keeps the one-cell quadrature
  // consistency inside the measured difference.
  Field hi = ej1;
  fft::phase_evolve(hi, delta - h, false);
  const Field Fhi = F_of(tj + delta, hi);
  Field Fj1_sh = Fj1;
  fft::phase_evolve(Fj1_sh, delta - h, false);
  for (std::size_t i = 0; i < n; ++i)
    hi.values[i] -=
        cplx(0.0, 0.5 * (h - delta)) * (Fhi.values[i] + Fj1_sh.values[i]);

  const Field lap = fft::laplacian(ej);
  Field R(grid, tj);
  const double inv = 1.0 / (2.0 * delta);
  for (std::size_t i = 0; i < n; ++i)
    R.values[i] = cplx(0.0, inv) * (hi.values[i] - lo.values[i]) +
                  lap.values[i] + Fj.values[i];
  return l2_norm(R);
}

std::vector<double> nls_residual(const Trajectory& traj,
                                 const Nonlinearity& nl) {
  if (traj.snapshots.size() < 3)
    throw insufficient_data("nls_residual needs at least 3 snapshots");
  std::vector<double> out;
  for (std::size_t i = 1; i + 1 < traj.snapshots.size(); ++i) {
    const Field& um = traj.snapshots[i - 1];
    const Field& u0 = traj.snapshots[i];
    const Field& up = traj.snapshots[i + 1];
    require_same_grid(um, u0);
    require_same_grid(up, u0);
    const double dt2 = traj.times[i + 1] - traj.times[i - 1];
    if (dt2 == 0.0)
      throw parameter_error("nls_residual: coincident snapshot times");
    const Field lap = fft::laplacian(u0);
    Field R(u0.grid, traj.times[i]);
    const double inv = 1.0 / dt2;
    for (std::size_t p = 0; p < u0.size(); ++p)
      R.values[p] = cplx(0.0, inv) * (up.values[p] - um.values[p]) +
                    lap.values[p] + nl.f(u0.values[p]);
    out.push_back(l2_norm(R));
  }
  return out;
}

}  // namespace nlslab
