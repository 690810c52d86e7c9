#include "nlslab/profile.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include <boost/math/special_functions/bessel.hpp>
#include <boost/numeric/odeint.hpp>

#include "nlslab/errors.hpp"

namespace nlslab {

namespace {

// sech(u) and tanh(u) for u >= 0 without overflow.
inline double sech_pos(double u) {
  const double e = std::exp(-u);
  return 2.0 * e / (1.0 + e * e);
}
inline double tanh_pos(double u) {
  const double e = std::exp(-2.0 * u);
  return (1.0 - e) / (1.0 + e);
}

double tail_value(const TailModel& t, double x, bool left, double limit,
                  int d, bool radial) {
  if (left) return limit - t.C * std::exp(t.rate * x);
  if (radial && d == 2)
    return t.C * boost::math::cyl_bessel_k(0, t.rate * x);
  if (radial && d == 3) return t.C * std::exp(-t.rate * x) / x;
  double v = t.C * std::exp(-t.rate * x);
  if (t.C2 != 0.0) v += t.C2 * std::exp(-t.rate2 * x);
  return v;
}

double tail_deriv(const TailModel& t, double x, bool left, int d,
                  bool radial) {
  if (left) return -t.rate * t.C * std::exp(t.rate * x);
  if (radial && d == 2)
    return -t.rate * t.C * boost::math::cyl_bessel_k(1, t.rate * x);
  if (radial && d == 3)
    return -t.C * std::exp(-t.rate * x) * (t.rate * x + 1.0) / (x * x);
  double v = -t.rate * t.C * std::exp(-t.rate * x);
  if (t.C2 != 0.0) v += -t.rate2 * t.C2 * std::exp(-t.rate2 * x);
  return v;
}

}  // namespace

double Profile::value(double x, bool* used_tail) const {
  if (used_tail) *used_tail = false;
  if (closed_form.kind == ClosedFormKind::PowerSech) {
    const double u = closed_form.rate * std::abs(x);
    return closed_form.amp * std::pow(sech_pos(u), closed_form.pow);
  }
  if (closed_form.kind == ClosedFormKind::GPKink) {
    const double u = closed_form.rate * x;
    return closed_form.amp * (x >= 0 ? tanh_pos(u) : -tanh_pos(-u));
  }
  const double r = radial ? std::abs(x) : x;
  if (r >= samples.x_min() && r <= samples.x_max()) return samples.eval(r);
  if (used_tail) *used_tail = true;
  if (r > samples.x_max())
    return tail_value(tail_right, r, false, limit_plus_inf, d, radial);
  return tail_value(tail_left, r, true, limit_minus_inf, d, radial);
}

double Profile::deriv(double x, bool* used_tail) const {
  if (used_tail) *used_tail = false;
  if (closed_form.kind == ClosedFormKind::PowerSech) {
    const double u = closed_form.rate * std::abs(x);
    const double s = sech_pos(u);
    const double g = -closed_form.amp * closed_form.pow * closed_form.rate *
                     std::pow(s, closed_form.pow) * tanh_pos(u);
    return x >= 0 ? g : -g;
  }
  if (closed_form.kind == ClosedFormKind::GPKink) {
    const double s = sech_pos(closed_form.rate * std::abs(x));
    return closed_form.amp * closed_form.rate * s * s;
  }
  const double r = radial ? std::abs(x) : x;
  double g;
  if (r >= samples.x_min() && r <= samples.x_max()) {
    g = samples.eval_deriv(r);
  } else {
    if (used_tail) *used_tail = true;
    g = (r > samples.x_max())
            ? tail_deriv(tail_right, r, false, d, radial)
            : tail_deriv(tail_left, r, true, d, radial);
  }
  return (radial && x < 0) ? -g : g;
}

double Profile::peak() const {
  if (kind == ProfileKind::Kink)
    return complex_valued ? std::hypot(limit_plus_inf, imag_constant)
                          : limit_minus_inf;
  return value(0.0);
}

// ---------------------------------------------------------------------------
// 1-d power-case closed form

Profile ground_state_power_1d(double alpha, double omega, const Grid& grid) {
  if (alpha <= 0) throw parameter_error("ground state: alpha must be > 0");
  if (omega <= 0) throw parameter_error("ground state: omega must be > 0");
  if (grid.d != 1)
    throw parameter_error("ground_state_power_1d needs a 1-d grid");

  const double amp = std::pow((alpha + 2.0) * omega / 2.0, 1.0 / alpha);
  const double rate = alpha * std::sqrt(omega) / 2.0;
  const double pw = 2.0 / alpha;
  const double L = grid.lengths[0];
  const double h = grid.spacing(0);

  const double boundary = amp * std::pow(sech_pos(rate * L / 2.0), pw);
  if (boundary > 1e-12 * amp)
    throw truncation_error("ground state does not decay inside the grid",
                           boundary);

  Profile p;
  p.kind = ProfileKind::GroundState;
  p.omega = omega;
  p.d = 1;
  p.radial = true;
  p.nl = std::make_shared<Nonlinearity>(Nonlinearity::power(alpha, 1));
  p.closed_form = {ClosedFormKind::PowerSech, amp, rate, pw};
  p.decay_rate_a = std::sqrt(omega);

  const std::size_t n = grid.counts[0] / 2 + 1;
  std::vector<double> val(n), der(n);
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double u = rate * i * h;
    const double s = sech_pos(u), th = tanh_pos(u);
    val[i] = amp * std::pow(s, pw);
    der[i] = -amp * pw * rate * std::pow(s, pw) * th;
    // analytic second derivative: amp k^2 p sech^p (p - (p+1) sech^2)
    const double d2 =
        amp * rate * rate * pw * std::pow(s, pw) * (pw - (pw + 1.0) * s * s);
    const double r = -d2 + omega * val[i] -
                     std::pow(val[i], alpha + 1.0);
    res = std::max(res, std::abs(r));
  }
  p.samples = numerics::HermiteSeries(0.0, h, std::move(val), std::move(der));

  p.tail_right.C = amp * std::pow(2.0, pw);
  p.tail_right.rate = std::sqrt(omega);
  p.tail_right.C2 = -std::pow(p.tail_right.C, alpha + 1.0) /
                    (alpha * (alpha + 2.0) * omega);
  p.tail_right.rate2 = (alpha + 1.0) * std::sqrt(omega);
  p.residual = res;
  p.residual_tol = 1e-10;
  return p;
}

// ---------------------------------------------------------------------------
// radial shooting

namespace {

using shoot_state = std::array<double, 2>;  // (phi, phi')

// odd extension of f off the positive half-line: overshooting trial
// trajectories cross zero and the stepper samples the RHS there
inline double f_odd(const Nonlinearity& nl, double s) {
  return s < 0.0 ? -nl.f_real(-s) : nl.f_real(s);
}

struct shoot_rhs {
  const Nonlinearity* nl;
  double omega;
  int d;
  void operator()(const shoot_state& y, shoot_state& dy, double r) const {
    dy[0] = y[1];
    dy[1] = -((d - 1.0) / r) * y[1] + omega * y[0] - f_odd(*nl, y[0]);
  }
};

enum class ShotClass { Above, Below };  // crossed zero / turned around

inline auto make_dense(double tol) {
  namespace od = boost::numeric::odeint;
  return od::make_dense_output(tol, tol, od::runge_kutta_dopri5<shoot_state>());
}

shoot_state series_start(const Nonlinearity& nl, double A, double omega,
                         int d, double r0) {
  const double phi2 = (omega * A - nl.f_real(A)) / d;
  return {A + 0.5 * r0 * r0 * phi2, r0 * phi2};
}

ShotClass classify_shot(const Nonlinearity& nl, double A, double omega, int d,
                        double r_stop) {
  const double r0 = 1e-6;
  auto st = make_dense(1e-13);
  st.initialize(series_start(nl, A, omega, d, r0), r0, 1e-4);
  shoot_rhs rhs{&nl, omega, d};
  std::size_t steps = 0;
  while (st.current_time() < r_stop) {
    st.do_step(rhs);
    if (++steps > 400000 || std::abs(st.current_state()[0]) > 1e7)
      throw blowup_in_shooting("shooting trajectory exceeded bounds");
    // inspect a few interior points so brief events are not stepped over
    const double t0 = st.previous_time(), t1 = st.current_time();
    for (int k = 1; k <= 4; ++k) {
      shoot_state y;
      st.calc_state(t0 + (t1 - t0) * k / 4.0, y);
      if (y[0] <= 0.0) return ShotClass::Above;
      if (y[1] >= 0.0) return ShotClass::Below;
    }
  }
  return ShotClass::Below;
}

}  // namespace

Profile ground_state_shoot(const Nonlinearity& nl, double omega, int d,
                           const RadialGrid& grid) {
  if (omega <= 0) throw parameter_error("ground state: omega must be > 0");
  if (d < 1 || d > 3) throw parameter_error("ground state: d must be 1..3");
  if (grid.count < 16 || grid.r_max <= 0)
    throw parameter_error("ground state: radial grid too small");

  const auto rep = check_subcritical_focusing(nl, omega, d);
  if (!rep.subcritical || !rep.focusing)
    throw no_ground_state(
        "nonlinearity is not subcritical and focusing at this frequency");

  const double r_stop = std::max(grid.r_max, 30.0 / std::sqrt(omega)) + 1.0;

  // bracket the nodeless branch: scan upward for the first crossing shot
  double lo = 0.0, hi = 0.0;
  {
    double A = 0.05, last_below = 0.0;
    while (A <= 1e3) {
      if (classify_shot(nl, A, omega, d, r_stop) == ShotClass::Above) {
        hi = A;
        break;
      }
      last_below = A;
      A *= 1.4;
    }
    if (hi == 0.0)
      throw no_ground_state("no zero-crossing shot found below s = 1e3");
    if (last_below == 0.0) {
      double B = hi / 2.0;
      while (B > 1e-8 &&
             classify_shot(nl, B, omega, d, r_stop) == ShotClass::Above)
        B /= 2.0;
      if (B <= 1e-8)
        throw no_ground_state("crossing persists down to vanishing amplitude");
      last_below = B;
    }
    lo = last_below;
  }

  while (hi - lo > 1e-14) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (classify_shot(nl, mid, omega, d, r_stop) == ShotClass::Above ? hi : lo) =
        mid;
  }
  const double A = 0.5 * (lo + hi);

  // final pass: store samples until the trajectory falls to 1e-3 of the peak,
  // where forward integration is still well-conditioned
  const double h = grid.r_max / static_cast<double>(grid.count);
  const double cutoff = 1e-3 * A;
  std::vector<double> val, der;
  val.reserve(grid.count + 1);
  der.reserve(grid.count + 1);
  val.push_back(A);
  der.push_back(0.0);

  {
    // land exactly on the nodes: dense-output interpolation jitter between
    // accepted steps would dominate the finite-difference residual below
    namespace od = boost::numeric::odeint;
    auto ctrl = od::make_controlled(1e-14, 1e-14,
                                    od::runge_kutta_dopri5<shoot_state>());
    shoot_rhs rhs{&nl, omega, d};
    const double r0 = 1e-6;
    shoot_state y = series_start(nl, A, omega, d, r0);
    double r_prev = r0;
    for (std::size_t i = 1; i <= grid.count; ++i) {
      const double r_next = i * h;
      od::integrate_adaptive(ctrl, rhs, y, r_prev, r_next, std::min(h, 1e-3));
      r_prev = r_next;
      if (y[0] <= cutoff || y[0] <= 0.0 || y[1] > 0.0) break;
      val.push_back(y[0]);
      der.push_back(y[1]);
    }
  }
  if (val.size() < 8)
    throw parameter_error("ground state: radial spacing too coarse");

  Profile p;
  p.kind = ProfileKind::GroundState;
  p.omega = omega;
  p.d = d;
  p.radial = true;
  p.nl = std::make_shared<Nonlinearity>(nl);
  p.decay_rate_a = std::sqrt(omega);
  const double r_c = (val.size() - 1) * h;
  const double phi_c = val.back();

  const double a = std::sqrt(omega);
  TailModel tail;
  tail.rate = a;
  if (d == 2) {
    tail.C = phi_c / boost::math::cyl_bessel_k(0, a * r_c);
  } else if (d == 3) {
    tail.C = phi_c * r_c * std::exp(a * r_c);
  } else {
    const double al = nl.exponents().alpha1;
    if (std::isfinite(al) && al > 0) {
      // two-term linearized tail: C e^{-ar} - C^{al+1}/(al(al+2)w) e^{-(al+1)ar}
      tail.rate2 = (al + 1.0) * a;
      double C = phi_c * std::exp(a * r_c);
      for (int it = 0; it < 3; ++it) {
        const double C2 =
            -std::pow(C, al + 1.0) / (al * (al + 2.0) * omega);
        C = (phi_c - C2 * std::exp(-tail.rate2 * r_c)) * std::exp(a * r_c);
        tail.C2 = C2;
      }
      tail.C = C;
    } else {
      tail.C = phi_c * std::exp(a * r_c);
    }
  }
  p.tail_right = tail;

  // stationary residual on the interior sample nodes
  double res = 0.0;
  for (std::size_t i = 2; i + 2 < val.size(); ++i) {
    const double d2 = numerics::fd2_4th(val, i, h);
    const double r = i * h;
    const double e =
        -d2 - ((d - 1.0) / r) * der[i] + omega * val[i] - nl.f_real(val[i]);
    res = std::max(res, std::abs(e));
  }
  p.samples = numerics::HermiteSeries(0.0, h, std::move(val), std::move(der));
  p.residual = res;
  p.residual_tol = 1e-8;
  return p;
}

// ---------------------------------------------------------------------------
// kinks

namespace {

using kink_state = std::array<double, 1>;

struct kink_rhs {
  const Nonlinearity* nl;
  double omega0;
  double b;
  double hprime_b;   // h'(b) = omega0 - f'(b)
  double fpp_b;      // f''(b)
  double neg_floor;  // tolerated first-integral negativity
  int sign;          // -1 to the right of the anchor, +1 on the reversed leg
  double speed(double phi) const {
    // rest-point extension: the leg lives in [0, b]; a trial step may land
    // just outside, where the speed freezes at its limit values
    const double s = std::clamp(phi, 0.0, b);
    const double delta = b - s;
    double H;
    if (delta < 1e-4 * b) {
      // the two terms of H cancel catastrophically at the double root b;
      // H(b) = h(b) = 0 leaves H = h'(b) d^2/2 - h''(b) d^3/6 + O(d^4)
      H = delta * delta * (0.5 * hprime_b + fpp_b * delta / 6.0);
    } else {
      H = 0.5 * omega0 * s * s - nl->F(s);
    }
    if (H < -neg_floor)
      throw first_integral_negative(
          "kink first integral is negative between the rest points");
    return std::sqrt(2.0 * std::max(H, 0.0));
  }
  void operator()(const kink_state& y, kink_state& dy, double) const {
    dy[0] = sign * speed(y[0]);
  }
};

}  // namespace

Profile kink_profile(const Nonlinearity& nl, const KinkConstants& kc,
                     const Grid& grid, double anchor) {
  if (grid.d != 1) throw parameter_error("kink_profile needs a 1-d grid");
  namespace od = boost::numeric::odeint;
  const double b = kc.b, w0 = kc.omega0;
  const double neg_floor = 1e-13 * w0 * b * b;
  const double h = grid.spacing(0);
  const std::size_t n = grid.counts[0];
  const double x_lo = grid.coord(0, 0);
  const double x_hi = grid.coord(0, n - 1);
  if (anchor <= x_lo || anchor >= x_hi)
    throw parameter_error("kink anchor lies outside the grid");

  std::vector<double> val(n, 0.0);
  const double fd_eps = 1e-5 * std::max(1.0, b);
  const double fpp_b =
      (nl.fprime_real(b + fd_eps) - nl.fprime_real(b - fd_eps)) / (2 * fd_eps);
  const double hprime_b = w0 - nl.fprime_real(b);
  kink_rhs right{&nl, w0, b, hprime_b, fpp_b, neg_floor, -1};
  kink_rhs left{&nl, w0, b, hprime_b, fpp_b, neg_floor, +1};

  // integrate node to node so every stored sample is an accepted endpoint:
  // dense-output interpolation jitter would dominate the residual below
  // right leg: phi' = -sqrt(2H), from phi(anchor) = b/2 to the right box end
  {
    auto ctrl = od::make_controlled(1e-14, 1e-14,
                                    od::runge_kutta_dopri5<kink_state>());
    kink_state y{b / 2.0};
    double x_prev = anchor;
    const auto i0 =
        static_cast<std::size_t>(std::ceil((anchor - x_lo) / h - 1e-12));
    for (std::size_t i = i0; i < n; ++i) {
      const double x_next = x_lo + i * h;
      if (x_next > x_prev)
        od::integrate_adaptive(ctrl, right, y, x_prev, x_next,
                               std::min(h, 1e-3));
      x_prev = x_next;
      val[i] = std::clamp(y[0], 0.0, b);
    }
  }
  // left leg: psi(s) = phi(anchor - s), psi' = +sqrt(2H)
  {
    auto ctrl = od::make_controlled(1e-14, 1e-14,
                                    od::runge_kutta_dopri5<kink_state>());
    kink_state y{b / 2.0};
    double s_prev = 0.0;
    for (std::ptrdiff_t i = static_cast<std::ptrdiff_t>(
             std::floor((anchor - x_lo) / h - 1e-12));
         i >= 0; --i) {
      const double s_next = anchor - (x_lo + i * h);
      if (s_next > s_prev)
        od::integrate_adaptive(ctrl, left, y, s_prev, s_next,
                               std::min(h, 1e-3));
      s_prev = s_next;
      val[i] = std::clamp(y[0], 0.0, b);
    }
  }

  std::vector<double> der(n);
  for (std::size_t i = 0; i < n; ++i) der[i] = -right.speed(val[i]);

  Profile p;
  p.kind = ProfileKind::Kink;
  p.omega = w0;
  p.d = 1;
  p.nl = std::make_shared<Nonlinearity>(nl);
  p.limit_minus_inf = b;
  p.limit_plus_inf = 0.0;
  p.decay_rate_a = std::sqrt(w0);

  double res = 0.0;
  for (std::size_t i = 2; i + 2 < n; ++i) {
    const double d2 = numerics::fd2_4th(val, i, h);
    const double e = -d2 + w0 * val[i] - nl.f_real(val[i]);
    res = std::max(res, std::abs(e));
  }

  p.tail_right.rate = std::sqrt(w0);
  p.tail_right.C = val[n - 1] * std::exp(p.tail_right.rate * x_hi);
  p.tail_left.rate = std::sqrt(std::max(hprime_b, 0.0));
  p.tail_left.C = std::max(b - val[0], 0.0) * std::exp(-p.tail_left.rate * x_lo);

  p.samples = numerics::HermiteSeries(x_lo, h, std::move(val), std::move(der));
  p.residual = res;
  p.residual_tol = 1e-8;
  return p;
}

Profile gp_kink(double c, const Grid& grid) {
  if (grid.d != 1) throw parameter_error("gp_kink needs a 1-d grid");
  if (std::abs(c) >= std::sqrt(2.0))
    throw speed_above_sound("GP kink requires |c| < sqrt(2)");
  const double m = std::sqrt(1.0 - c * c / 2.0);
  const double q = m / std::sqrt(2.0);
  const double h = grid.spacing(0);
  const std::size_t n = grid.counts[0];
  const double x_lo = grid.coord(0, 0);

  Profile p;
  p.kind = ProfileKind::Kink;
  p.omega = 0.0;
  p.d = 1;
  p.complex_valued = true;
  p.nl = std::make_shared<Nonlinearity>(Nonlinearity::gross_pitaevskii(1));
  p.imag_constant = c / std::sqrt(2.0);
  p.closed_form = {ClosedFormKind::GPKink, m, q, 1.0};
  p.limit_minus_inf = -m;
  p.limit_plus_inf = m;
  p.decay_rate_a = 2.0 * q;

  std::vector<double> val(n), der(n);
  double res = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = x_lo + i * h;
    const double u = q * std::abs(x);
    const double th = x >= 0 ? tanh_pos(u) : -tanh_pos(u);
    const double s = sech_pos(u);
    val[i] = m * th;
    der[i] = m * q * s * s;
    // traveling identity: phi'' - i c phi' + (1-|phi|^2) phi = 0
    const double u2 = -2.0 * m * q * q * s * s * th;
    const double one_m = 1.0 - val[i] * val[i] - p.imag_constant * p.imag_constant;
    const double re = u2 + one_m * val[i];
    const double im = -c * der[i] + one_m * p.imag_constant;
    res = std::max(res, std::hypot(re, im));
  }
  p.samples = numerics::HermiteSeries(x_lo, h, std::move(val), std::move(der));
  p.tail_right = {0.0, 2.0 * q, 0.0, 0.0};
  p.tail_left = {0.0, 2.0 * q, 0.0, 0.0};
  p.residual = res;
  p.residual_tol = 1e-12;
  return p;
}

}  // namespace nlslab
