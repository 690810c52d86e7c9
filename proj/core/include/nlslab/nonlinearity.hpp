#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "nlslab/errors.hpp"
#include "nlslab/numerics.hpp"

namespace nlslab {

using cplx = std::complex<double>;

enum class NonlinearityKind { Power, DoublePower, GrossPitaevskii, Tabulated };

// Regularity-exponent metadata for g: |s g'(s)| + |s^2 g''(s)| bounded by
// C (s^{alpha1/2} + s^{alpha2/2}). alpha15 is the intermediate exponent used
// by the train-admissibility window; stored and surfaced in reports only.
// NaN entries mean "not determined symbolically" (tabulated data).
struct ExponentInfo {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha15 = 0.0;
};

// Phase-covariant nonlinearity f(z) = g(|z|^2) z.
//   Power(a):        g(s) = s^{a/2}            (so f(z) = |z|^a z)
//   DoublePower(a,b): g(s) = s^{a/2} - s^{b/2}, a < b
//   GrossPitaevskii: g(s) = 1 - s
//   Tabulated:       g sampled on a uniform s-grid, cubic Hermite interpolant
class Nonlinearity {
 public:
  static Nonlinearity power(double alpha, int dimension_hint = 1);
  static Nonlinearity double_power(double alpha, double beta, int dimension_hint = 1);
  static Nonlinearity gross_pitaevskii(int dimension_hint = 1);
  // g sampled at s = s_origin + i*s_spacing, i = 0..n-1; g(0) must be 0 if the
  // table starts at 0 (phase-covariant f with f(0) = 0).
  static Nonlinearity tabulated(double s_origin, double s_spacing,
                                std::vector<double> g_samples,
                                int dimension_hint = 1);

  NonlinearityKind kind() const { return kind_; }
  int dimension_hint() const { return dim_hint_; }
  double alpha() const { return alpha_; }
  double beta() const { return beta_; }
  ExponentInfo exponents() const { return exponents_; }

  // g(s), s = |z|^2 >= 0.
  double g(double s) const;
  // G(s) = integral of g over [0, s].
  double G(double s) const;
  // f(z) = g(|z|^2) z; phase covariance is exact by construction.
  cplx f(cplx z) const;
  // f restricted to nonnegative reals: f(s) = g(s^2) s.
  double f_real(double s) const;
  // d/ds f(s) on nonnegative reals: g(s^2) + 2 s^2 g'(s^2).
  double fprime_real(double s) const;
  // F(s) = integral of f over [0, s] for s >= 0; equals G(s^2)/2.
  double F(double s) const;

  // Energy-subcritical ceiling: +inf for d = 1, 2 and 4/(d-2) for d >= 3.
  static double alpha_max(int d);

  std::string describe() const;

 private:
  Nonlinearity() = default;

  NonlinearityKind kind_ = NonlinearityKind::Power;
  int dim_hint_ = 1;
  double alpha_ = 0.0;
  double beta_ = 0.0;
  ExponentInfo exponents_;
  numerics::HermiteSeries table_;  // tabulated g
};

struct SubcriticalityReport {
  bool subcritical = false;
  bool focusing = false;
  std::optional<double> s0_witness;  // G(s0) > omega * s0 when found
  ExponentInfo exponents;
  bool exponents_symbolic = false;  // false for tabulated kinds
};

// Checks the exponent ceiling symbolically (closed-form kinds only) and
// searches a 1000-point logarithmic grid s in [1e-6, 1e6] for a focusing
// witness G(s0) > omega*s0. Absence of a witness is reported as "not found",
// never as nonexistence.
SubcriticalityReport check_subcritical_focusing(const Nonlinearity& nl,
                                                double omega, int d);

// Constants of the kink system: h(s) = omega0*s - f(s) with h(b) = 0,
// h'(b) > 0, and the integral of h over [0, b] vanishing.
struct KinkConstants {
  double omega0 = 0.0;
  double b = 0.0;
  double hprime_at_b = 0.0;
};

// Solves {h(b) = 0, integral_0^b h = 0} for (omega0, b): eliminating omega0 =
// f(b)/b reduces the system to r(b) = b*f(b) - 2*F(b) = 0; the first
// admissible root (omega0 > 0, h'(b) > 0) on (0, s_max] is bracketed on a
// logarithmic scan and polished to 1e-12. Throws no_kink when no admissible
// root exists up to s_max = 1e3.
KinkConstants kink_constants(const Nonlinearity& nl);

}  // namespace nlslab
