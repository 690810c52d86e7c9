#include "nlslab/wave.hpp"

#include <cmath>

#include "nlslab/errors.hpp"

namespace nlslab {

namespace {

constexpr std::size_t kPhaseReanchor = 2048;  // bound rotator drift

inline cplx amp_at(const Profile& P, const WaveSpec& w, double t, Vec x,
                   bool* used_tail) {
  if (P.kind == ProfileKind::GroundState) {
    const Vec y{x.x - w.v.x * t - w.x0.x, x.y - w.v.y * t - w.x0.y};
    return cplx(P.value(y.norm(), used_tail), 0.0);
  }
  const double xi = x.x - (w.c + w.v.x) * t - w.x0.x;
  const double zeta = w.mirrored ? -xi : xi;
  return cplx(P.value(zeta, used_tail),
              P.complex_valued ? P.imag_constant : 0.0);
}

}  // namespace

WaveSpec boost_soliton(std::shared_ptr<const Profile> profile, Vec v, Vec x0,
                       double gamma) {
  if (!profile) throw parameter_error("boost_soliton: null profile");
  if (profile->kind != ProfileKind::GroundState)
    throw parameter_error("boost_soliton expects a ground-state profile");
  WaveSpec w;
  w.profile = std::move(profile);
  w.omega = w.profile->omega;
  w.gamma = gamma;
  w.x0 = x0;
  w.v = v;
  return w;
}

WaveSpec boost_kink(std::shared_ptr<const Profile> profile, double c, double v,
                    double x0, double gamma, bool mirrored) {
  if (!profile) throw parameter_error("boost_kink: null profile");
  if (profile->kind != ProfileKind::Kink)
    throw parameter_error("boost_kink expects a kink profile");
  if (profile->complex_valued) {
    const double c_built = std::sqrt(2.0) * profile->imag_constant;
    if (std::abs(c_built - c) > 1e-12)
      throw parameter_error(
          "boost_kink: GP kink speed must match the constructed profile");
  } else if (c != 0.0) {
    throw parameter_error("boost_kink: this kink family is static (c = 0)");
  }
  WaveSpec w;
  w.profile = std::move(profile);
  w.omega = w.profile->omega;
  w.gamma = gamma;
  w.x0 = Vec{x0, 0.0};
  w.v = Vec{v, 0.0};
  w.c = c;
  w.mirrored = mirrored;
  return w;
}

WaveSpec time_translate(const WaveSpec& w, double s) {
  WaveSpec r = w;
  r.x0.x += (w.v.x + w.c) * s;
  r.x0.y += w.v.y * s;
  r.gamma += (w.omega - 0.25 * w.v.norm2()) * s;
  return r;
}

cplx eval_wave(const WaveSpec& w, double t, Vec x) {
  const double theta =
      0.5 * w.v.dot(x) - 0.25 * w.v.norm2() * t + w.omega * t + w.gamma;
  return amp_at(*w.profile, w, t, x, nullptr) * std::polar(1.0, theta);
}

cplx eval_wave_laplacian(const WaveSpec& w, double t, Vec x) {
  const Profile& P = *w.profile;
  const Nonlinearity& nl = *P.nl;
  const double theta =
      0.5 * w.v.dot(x) - 0.25 * w.v.norm2() * t + w.omega * t + w.gamma;
  const cplx ph = std::polar(1.0, theta);
  const double kin = 0.25 * w.v.norm2();

  if (P.kind == ProfileKind::GroundState) {
    const Vec y{x.x - w.v.x * t - w.x0.x, x.y - w.v.y * t - w.x0.y};
    const double r = y.norm();
    const double phi = P.value(r);
    const double lap = P.omega * phi - nl.f_real(phi);  // radial identity
    Vec grad{0.0, 0.0};
    if (r > 1e-300) {
      const double dphi = P.deriv(r);
      grad = Vec{y.x * (dphi / r), y.y * (dphi / r)};
    }
    return (cplx(lap - kin * phi, w.v.dot(grad))) * ph;
  }

  const double xi = x.x - (w.c + w.v.x) * t - w.x0.x;
  const double zeta = w.mirrored ? -xi : xi;
  if (!P.complex_valued) {
    const double phi = P.value(zeta);
    const double lap = P.omega * phi - nl.f_real(phi);
    const double dphi_xi = (w.mirrored ? -1.0 : 1.0) * P.deriv(zeta);
    return cplx(lap - kin * phi, w.v.x * dphi_xi) * ph;
  }
  // GP kink: phi'' = i c phi' - (1 - |phi|^2) phi in its own coordinate
  const cplx phi(P.value(zeta), P.imag_constant);
  const cplx d1(P.deriv(zeta), 0.0);
  const double c_built = std::sqrt(2.0) * P.imag_constant;
  const cplx lap = cplx(0.0, c_built) * d1 - (1.0 - std::norm(phi)) * phi;
  const cplx dphi_xi = (w.mirrored ? -1.0 : 1.0) * d1;
  return (lap + cplx(0.0, w.v.x) * dphi_xi - kin * phi) * ph;
}

namespace {

// one grid row along the last axis, incremental phase rotation
std::size_t realize_row(const WaveSpec& w, double t, double theta_start,
                        double dtheta, Vec x_start, Vec step, std::size_t n,
                        cplx* out, bool accumulate) {
  const cplx rot = std::polar(1.0, dtheta);
  cplx ph = std::polar(1.0, theta_start);
  Vec x = x_start;
  std::size_t tails = 0;
  const Profile& P = *w.profile;
  for (std::size_t i = 0; i < n; ++i) {
    if (i % kPhaseReanchor == 0 && i > 0)
      ph = std::polar(1.0, theta_start + dtheta * static_cast<double>(i));
    bool used_tail = false;
    const cplx val = amp_at(P, w, t, x, &used_tail) * ph;
    tails += used_tail;
    if (accumulate)
      out[i] += val;
    else
      out[i] = val;
    ph *= rot;
    x.x += step.x;
    x.y += step.y;
  }
  return tails;
}

}  // namespace

void realize(const WaveSpec& w, double t, Field& out, bool accumulate) {
  const Grid& g = out.grid;
  const double theta_t = -0.25 * w.v.norm2() * t + w.omega * t + w.gamma;
  if (g.d == 1) {
    const double h = g.spacing(0);
    const double x0 = g.coord(0, 0);
    realize_row(w, t, 0.5 * w.v.x * x0 + theta_t, 0.5 * w.v.x * h,
                Vec{x0, 0.0}, Vec{h, 0.0}, g.counts[0], out.values.data(),
                accumulate);
    return;
  }
  const double hy = g.spacing(1);
  const double y0 = g.coord(1, 0);
  const std::size_t ny = g.counts[1];
  for (std::size_t ix = 0; ix < g.counts[0]; ++ix) {
    const double xv = g.coord(0, ix);
    realize_row(w, t, 0.5 * (w.v.x * xv + w.v.y * y0) + theta_t,
                0.5 * w.v.y * hy, Vec{xv, y0}, Vec{0.0, hy}, ny,
                out.values.data() + ix * ny, accumulate);
  }
}

Field realize(const WaveSpec& w, const Grid& grid, double t) {
  Field f(grid, t);
  realize(w, t, f, false);
  return f;
}

Field realize_sum(const std::vector<WaveSpec>& ws, const Grid& grid, double t) {
  Field f(grid, t);
  for (const auto& w : ws) realize(w, t, f, true);
  return f;
}

}  // namespace nlslab
