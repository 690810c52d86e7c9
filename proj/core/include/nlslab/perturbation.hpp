#pragma once

#include <vector>

#include "nlslab/evolution.hpp"
#include "nlslab/train.hpp"

namespace nlslab {

// Analytic background: a sum of individually exact traveling components, so
// i dW/dt + Lap(W) + sum_j f(W_j) = 0 holds pointwise and only the coupling
// H = f(sum W_j) - sum f(W_j) survives as a source.
struct BackgroundW {
  TrainSpec train;
  std::vector<WaveSpec> parts;  // kinks and solitons in spatial order

  cplx evaluate(double t, Vec x) const;
  cplx evaluate_laplacian(double t, Vec x) const;
  Field realize(const Grid& grid, double t) const;
};

BackgroundW make_background(TrainSpec train);

// H(t,.) = f(sum_j W_j) - sum_j f(W_j) on the grid. Identically zero for a
// single component.
Field source_term(const BackgroundW& W, double t, const Grid& grid);

// Split-step for the perturbation unknown eta = u - W:
//   i d(eta)/dt + Lap(eta) + f(W+eta) - f(W) + H = 0.
// Kinetic substep spectral on eta; the remainder d(eta)/dt =
// i (f(W+eta) - sum_j f(W_j)) is integrated with a two-stage explicit
// midpoint rule using the analytic W at substep times. Only the localized
// unknown eta ever touches the transform, so kink backgrounds are safe on
// periodic grids. Throws boundary_contamination when the boundary amplitude
// of eta exceeds 1e-6 of its peak, numerical_blowup when eta leaves bounds.
Trajectory evolve_perturbation(const Field& eta0, const BackgroundW& W,
                               const Nonlinearity& nl,
                               const EvolutionConfig& cfg);

struct PicardOptions {
  std::size_t n_iter = 8;
  bool store_iterates = false;       // keep every iterate (small grids only)
  double converge_tol = 0.0;         // stop early when increment falls below
};

struct PicardResult {
  std::vector<double> increments;  // sup_t ||eta^(k) - eta^(k-1)||_L2, k >= 1
  std::vector<double> ratios;      // rho_k = increment_k / increment_{k-1}
  std::vector<double> sup_l2;      // per iterate
  std::vector<double> sup_h1;
  bool no_contraction = false;     // rho > 1 twice in a row
  std::size_t iterations = 0;
  double h_sup_at_tmax = 0.0;      // truncation-tail diagnostics
  double h_l2_at_tmax = 0.0;
  double tail_bound = 0.0;

  std::vector<double> tau;         // the quadrature grid
  std::vector<Field> eta;          // final iterate on the tau grid
  std::vector<std::vector<Field>> iterates;  // when store_iterates
};

// Duhamel fixed point with zero terminal data at T_max:
//   eta(t) = -i int_t^{T_max} e^{i(t-tau) Lap} (f(W+eta)-f(W)+H)(tau) d tau,
// composite trapezoid on the tau grid of spacing dt, each term carried by the
// exact free propagator; evaluated by one backward recurrence per sweep.
PicardResult picard_iterate(const BackgroundW& W, const Nonlinearity& nl,
                            double t0, double T_max, const Grid& grid,
                            double dt, const PicardOptions& opts = {});

// Pointwise-in-time residual of the Duhamel fixed point at a tau-grid node:
// the +-delta neighbors are produced by the same quadrature (semigroup split
// plus the short-leg correction), then || i d(eta)/dt + Lap(eta) + f(W+eta)
// - f(W) + H ||_L2 with a centered difference across 2*delta.
double perturbation_residual_at(const PicardResult& result,
                                const BackgroundW& W, const Nonlinearity& nl,
                                double t_query, double delta);

// || i du/dt + Lap(u) + f(u) ||_L2 per interior snapshot (centered time
// differences, spectral Laplacian). Needs at least 3 snapshots.
std::vector<double> nls_residual(const Trajectory& traj,
                                 const Nonlinearity& nl);

}  // namespace nlslab
