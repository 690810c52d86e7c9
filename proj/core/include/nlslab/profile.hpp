#pragma once

#include <memory>
#include <optional>

#include "nlslab/grid.hpp"
#include "nlslab/nonlinearity.hpp"
#include "nlslab/numerics.hpp"

namespace nlslab {

enum class ProfileKind { GroundState, Kink };

// Closed-form tags. PowerSech: phi(x) = amp * sech^{pow}(rate*|x|).
// GPKink: phi(x) = re_amp * tanh(re_rate*x) + i*imag_const.
enum class ClosedFormKind { None, PowerSech, GPKink };

struct ClosedForm {
  ClosedFormKind kind = ClosedFormKind::None;
  double amp = 0.0;
  double rate = 0.0;
  double pow = 0.0;
};

// Exponential tail model used outside the sampled support:
//   ground state / right kink tail:  C e^{-a r} + C2 e^{-a2 r}  (-> limit 0)
//   left kink tail:                  b - C e^{+a x}             (-> limit b)
// For radial profiles in d = 2 the leading factor is K0(a r), in d = 3 it is
// e^{-a r}/r; the same (C, a) parameterization applies.
struct TailModel {
  double C = 0.0;
  double rate = 0.0;
  double C2 = 0.0;
  double rate2 = 0.0;
};

// A stationary profile: sampled values plus nodal derivatives (cubic Hermite
// between nodes), optional closed form (used directly when present), and
// analytic exponential tails for evaluation beyond the samples.
struct Profile {
  ProfileKind kind = ProfileKind::GroundState;
  double omega = 0.0;      // 0 only for the GP kink family
  int d = 1;
  bool radial = false;     // samples indexed by radius r >= 0
  bool complex_valued = false;  // GP kink: constant imaginary part
  double imag_constant = 0.0;
  std::shared_ptr<const Nonlinearity> nl;  // the equation this profile solves

  numerics::HermiteSeries samples;  // values and first derivatives
  ClosedForm closed_form;
  TailModel tail_right;            // r or x beyond the last sample
  TailModel tail_left;             // kinks only: x below the first sample
  double limit_minus_inf = 0.0;
  double limit_plus_inf = 0.0;
  double decay_rate_a = 0.0;       // leading decay constant toward zero

  double residual = 0.0;           // recorded stationary residual (sup norm)
  double residual_tol = 0.0;       // tolerance promised at construction

  // Real value/derivative of the profile (radial profiles take r = |x|;
  // callers pass the signed coordinate and evenness is applied here).
  // used_tail, when non-null, is set if the evaluation left the samples.
  double value(double x, bool* used_tail = nullptr) const;
  double deriv(double x, bool* used_tail = nullptr) const;

  // Peak value (ground states: value(0); kinks: the b limit).
  double peak() const;
};

// Uniform radial sampling request for the shooting constructor.
struct RadialGrid {
  double r_max = 0.0;
  std::size_t count = 0;
};

// 1-d power-case ground state, closed form
//   phi(x) = ((alpha+2) omega / 2)^{1/alpha} sech^{2/alpha}(alpha sqrt(omega) x / 2),
// sampled on the grid (radial storage of the even profile). The recorded
// residual uses the analytic second derivative. Throws truncation_error when
// the boundary value exceeds 1e-12 of the peak.
Profile ground_state_power_1d(double alpha, double omega, const Grid& grid);

// Radial shooting for the nodeless ground state of
//   -phi'' - ((d-1)/r) phi' + omega phi - f(phi) = 0, phi'(0) = 0,
// by bisection on phi(0): trajectories that cross zero bracket the ground
// state from above, trajectories that turn around bracket it from below.
// Samples are stored on [0, r_c] where the forward integration is reliable
// (down to ~1e-3 of the peak); beyond r_c evaluation switches to the
// two-term linearized tail. Throws no_ground_state when no bracket exists in
// (0, 1e3], blowup_in_shooting when the integrator exceeds bounds.
Profile ground_state_shoot(const Nonlinearity& nl, double omega, int d,
                           const RadialGrid& grid);

// Kink profile from the first integral phi' = -sqrt(2 H(phi)),
// H(s) = omega0 s^2/2 - F(s), anchored at phi(anchor) = b/2 and integrated to
// both box ends; monotone decreasing from b (at -inf) to 0 (at +inf).
// Throws first_integral_negative when H(phi) < -1e-13 * omega0 * b^2.
Profile kink_profile(const Nonlinearity& nl, const KinkConstants& kc,
                     const Grid& grid, double anchor = 0.0);

// Explicit kink family of the Gross-Pitaevskii nonlinearity:
//   phi_K(x) = sqrt((2-c^2)/2) tanh(x sqrt(2-c^2)/2) + i c/sqrt(2), |c| < sqrt(2).
// Travels at its intrinsic velocity c with no frequency phase (omega = 0).
// Throws speed_above_sound for |c| >= sqrt(2).
Profile gp_kink(double c, const Grid& grid);

}  // namespace nlslab
