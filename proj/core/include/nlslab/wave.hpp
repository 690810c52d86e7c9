#pragma once

#include <memory>
#include <vector>

#include "nlslab/field.hpp"
#include "nlslab/profile.hpp"

namespace nlslab {

// One traveling component: a stationary profile carried by the Galilean boost
//   u(t,x) = phi(x - vt - x0) exp(i(v.x/2 - |v|^2 t/4 + omega t + gamma)).
// Kinks additionally translate at their intrinsic speed c (argument
// x - (c+v)t - x0) under the same phase; for the GP kink family omega = 0 and
// the wave is exact only with v = 0 unless boosted explicitly.
struct WaveSpec {
  std::shared_ptr<const Profile> profile;
  double omega = 0.0;
  double gamma = 0.0;
  Vec x0{};
  Vec v{};
  double c = 0.0;          // kinks only
  bool mirrored = false;   // right kink: profile argument negated
};

WaveSpec boost_soliton(std::shared_ptr<const Profile> profile, Vec v, Vec x0,
                       double gamma);
WaveSpec boost_kink(std::shared_ptr<const Profile> profile, double c, double v,
                    double x0, double gamma, bool mirrored = false);

// Absorb a time translation t -> t + s into (x0, gamma):
// x0' = x0 + (v+c)s, gamma' = gamma + (omega - |v|^2/4)s.
WaveSpec time_translate(const WaveSpec& w, double s);

cplx eval_wave(const WaveSpec& w, double t, Vec x);

// Laplacian of the component, using the profile's stationary identity for
// its second derivative (no numerical differentiation).
cplx eval_wave_laplacian(const WaveSpec& w, double t, Vec x);

// Sample the component (or a sum of components) on a grid at time t.
// accumulate = true adds into the field instead of overwriting.
void realize(const WaveSpec& w, double t, Field& out, bool accumulate);
Field realize(const WaveSpec& w, const Grid& grid, double t);
Field realize_sum(const std::vector<WaveSpec>& ws, const Grid& grid, double t);

}  // namespace nlslab
