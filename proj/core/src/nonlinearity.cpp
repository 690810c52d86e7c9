#include "nlslab/nonlinearity.hpp"

#include <cmath>
#include <cstdio>
#include <limits>

namespace nlslab {

namespace {
constexpr double kRootTol = 1e-12;
constexpr double kSMax = 1e3;  // bracket expansion ceiling for kink roots
}  // namespace

Nonlinearity Nonlinearity::power(double alpha, int dimension_hint) {
  if (alpha <= 0.0) throw parameter_error("power nonlinearity needs alpha > 0");
  Nonlinearity nl;
  nl.kind_ = NonlinearityKind::Power;
  nl.alpha_ = alpha;
  nl.dim_hint_ = dimension_hint;
  // g(s) = s^{a/2}: s g' = (a/2) s^{a/2}, s^2 g'' = (a/2)(a/2-1) s^{a/2};
  // a single exponent pair (a, a). The intermediate exponent degenerates.
  nl.exponents_ = {alpha, alpha, alpha};
  return nl;
}

Nonlinearity Nonlinearity::double_power(double alpha, double beta, int dimension_hint) {
  if (alpha <= 0.0 || beta <= 0.0)
    throw parameter_error("double-power nonlinearity needs positive exponents");
  if (!(alpha < beta))
    throw parameter_error("double-power nonlinearity needs alpha < beta");
  Nonlinearity nl;
  nl.kind_ = NonlinearityKind::DoublePower;
  nl.alpha_ = alpha;
  nl.beta_ = beta;
  nl.dim_hint_ = dimension_hint;
  // Leading power alpha plus correction -s^{b/2}: correction exponents (b, b).
  nl.exponents_ = {alpha, beta, beta};
  return nl;
}

Nonlinearity Nonlinearity::gross_pitaevskii(int dimension_hint) {
  Nonlinearity nl;
  nl.kind_ = NonlinearityKind::GrossPitaevskii;
  nl.dim_hint_ = dimension_hint;
  // g(s) = 1 - s: |s g'(s)| = s, so the pair is (2, 2). Note g(0) = 1: this
  // kind sits outside the zero-at-origin family by construction.
  nl.exponents_ = {2.0, 2.0, 2.0};
  return nl;
}

Nonlinearity Nonlinearity::tabulated(double s_origin, double s_spacing,
                                     std::vector<double> g_samples,
                                     int dimension_hint) {
  if (s_origin < 0.0) throw parameter_error("tabulated g needs s_origin >= 0");
  if (s_spacing <= 0.0) throw parameter_error("tabulated g needs s_spacing > 0");
  if (g_samples.size() < 4)
    throw parameter_error("tabulated g needs at least 4 samples");
  if (s_origin == 0.0 && std::abs(g_samples[0]) > 1e-14)
    throw parameter_error("tabulated g must vanish at s = 0");
  Nonlinearity nl;
  nl.kind_ = NonlinearityKind::Tabulated;
  nl.dim_hint_ = dimension_hint;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  nl.exponents_ = {nan, nan, nan};  // not determined symbolically from samples
  numerics::HermiteSeries& t = nl.table_;
  t.origin = s_origin;
  t.spacing = s_spacing;
  t.value = std::move(g_samples);
  // Nodal derivatives by 4th-order centered differences (lower order at the
  // edges); the interpolant stays C^1 and locally quartic-accurate.
  const std::size_t n = t.value.size();
  t.deriv.resize(n);
  const double h = s_spacing;
  for (std::size_t i = 0; i < n; ++i) {
    if (i >= 2 && i + 2 < n)
      t.deriv[i] = (t.value[i - 2] - 8 * t.value[i - 1] + 8 * t.value[i + 1] -
                    t.value[i + 2]) /
                   (12 * h);
    else if (i == 0)
      t.deriv[i] = (-3 * t.value[0] + 4 * t.value[1] - t.value[2]) / (2 * h);
    else if (i + 1 == n)
      t.deriv[i] = (3 * t.value[n - 1] - 4 * t.value[n - 2] + t.value[n - 3]) / (2 * h);
    else
      t.deriv[i] = (t.value[i + 1] - t.value[i - 1]) / (2 * h);
  }
  return nl;
}

double Nonlinearity::g(double s) const {
  if (s < 0.0) throw domain_error("g: s = |z|^2 must be nonnegative");
  switch (kind_) {
    case NonlinearityKind::Power:
      return std::pow(s, 0.5 * alpha_);
    case NonlinearityKind::DoublePower:
      return std::pow(s, 0.5 * alpha_) - std::pow(s, 0.5 * beta_);
    case NonlinearityKind::GrossPitaevskii:
      return 1.0 - s;
    case NonlinearityKind::Tabulated:
      if (!table_.contains(s))
        throw domain_error("tabulated g: s outside the sampled range");
      return table_.eval(s);
  }
  return 0.0;
}

double Nonlinearity::G(double s) const {
  if (s < 0.0) throw domain_error("G: s must be nonnegative");
  switch (kind_) {
    case NonlinearityKind::Power:
      return std::pow(s, 0.5 * alpha_ + 1.0) / (0.5 * alpha_ + 1.0);
    case NonlinearityKind::DoublePower:
      return std::pow(s, 0.5 * alpha_ + 1.0) / (0.5 * alpha_ + 1.0) -
             std::pow(s, 0.5 * beta_ + 1.0) / (0.5 * beta_ + 1.0);
    case NonlinearityKind::GrossPitaevskii:
      return s - 0.5 * s * s;
    case NonlinearityKind::Tabulated:
      if (!table_.contains(s))
        throw domain_error("tabulated G: s outside the sampled range");
      return numerics::integrate([this](double u) { return table_.eval(u); },
                                 table_.x_min(), s, 1e-10);
  }
  return 0.0;
}

cplx Nonlinearity::f(cplx z) const { return g(std::norm(z)) * z; }

double Nonlinearity::f_real(double s) const {
  if (s < 0.0) throw domain_error("f_real: s must be nonnegative");
  return g(s * s) * s;
}

double Nonlinearity::fprime_real(double s) const {
  if (s < 0.0) throw domain_error("fprime_real: s must be nonnegative");
  switch (kind_) {
    case NonlinearityKind::Power:
      return (alpha_ + 1.0) * std::pow(s, alpha_);
    case NonlinearityKind::DoublePower:
      return (alpha_ + 1.0) * std::pow(s, alpha_) -
             (beta_ + 1.0) * std::pow(s, beta_);
    case NonlinearityKind::GrossPitaevskii:
      return 1.0 - 3.0 * s * s;
    case NonlinearityKind::Tabulated: {
      const double s2 = s * s;
      if (!table_.contains(s2))
        throw domain_error("tabulated f': s^2 outside the sampled range");
      return table_.eval(s2) + 2.0 * s2 * table_.eval_deriv(s2);
    }
  }
  return 0.0;
}

double Nonlinearity::F(double s) const {
  if (s < 0.0) throw domain_error("F: s must be nonnegative");
  switch (kind_) {
    case NonlinearityKind::Power:
      return std::pow(s, alpha_ + 2.0) / (alpha_ + 2.0);
    case NonlinearityKind::DoublePower:
      return std::pow(s, alpha_ + 2.0) / (alpha_ + 2.0) -
             std::pow(s, beta_ + 2.0) / (beta_ + 2.0);
    case NonlinearityKind::GrossPitaevskii:
      return 0.5 * s * s - 0.25 * s * s * s * s;
    case NonlinearityKind::Tabulated:
      // F(s) = G(s^2)/2 by the substitution u = tau^2.
      return 0.5 * G(s * s);
  }
  return 0.0;
}

double Nonlinearity::alpha_max(int d) {
  if (d <= 2) return std::numeric_limits<double>::infinity();
  return 4.0 / double(d - 2);
}

std::string Nonlinearity::describe() const {
  char buf[128];
  switch (kind_) {
    case NonlinearityKind::Power:
      std::snprintf(buf, sizeof buf, "power(alpha=%g)", alpha_);
      break;
    case NonlinearityKind::DoublePower:
      std::snprintf(buf, sizeof buf, "double_power(alpha=%g, beta=%g)", alpha_, beta_);
      break;
    case NonlinearityKind::GrossPitaevskii:
      std::snprintf(buf, sizeof buf, "gross_pitaevskii");
      break;
    case NonlinearityKind::Tabulated:
      std::snprintf(buf, sizeof buf, "tabulated(%zu samples on [%g, %g])",
                    table_.value.size(), table_.x_min(), table_.x_max());
      break;
  }
  return buf;
}

SubcriticalityReport check_subcritical_focusing(const Nonlinearity& nl,
                                                double omega, int d) {
  if (omega <= 0.0) throw parameter_error("subcriticality check needs omega > 0");
  SubcriticalityReport rep;
  rep.exponents = nl.exponents();
  rep.exponents_symbolic = nl.kind() != NonlinearityKind::Tabulated;
  // Exponent arithmetic only where exponents are known symbolically; samples
  // cannot certify growth bounds, so tabulated kinds pass by declaration.
  rep.subcritical = rep.exponents_symbolic
                        ? rep.exponents.alpha2 < Nonlinearity::alpha_max(d)
                        : true;
  // Existential witness search on a fixed 1000-point logarithmic grid.
  const int n_grid = 1000;
  const double lo = 1e-6, hi = 1e6;
  for (int i = 0; i < n_grid; ++i) {
    const double s = lo * std::pow(hi / lo, double(i) / double(n_grid - 1));
    double Gs;
    try {
      Gs = nl.G(s);
    } catch (const domain_error&) {
      break;  // tabulated range exhausted
    }
    if (Gs > omega * s) {
      rep.focusing = true;
      rep.s0_witness = s;
      break;
    }
  }
  return rep;
}

KinkConstants kink_constants(const Nonlinearity& nl) {
  // Eliminate omega0 = f(b)/b from h(b) = 0; the vanishing-integral condition
  // becomes r(b) = b f(b) - 2 F(b) = 0 (twice the integral of h over [0,b]).
  auto r = [&nl](double b) { return b * nl.f_real(b) - 2.0 * nl.F(b); };

  const int n_scan = 6000;
  const double lo = 1e-6;
  double prev_b = lo;
  double prev_r;
  try {
    prev_r = r(prev_b);
  } catch (const domain_error&) {
    throw no_kink("kink constants: f not evaluable near 0");
  }
  for (int i = 1; i < n_scan; ++i) {
    const double b = lo * std::pow(kSMax / lo, double(i) / double(n_scan - 1));
    double rb;
    try {
      rb = r(b);
    } catch (const domain_error&) {
      break;  // tabulated range exhausted: stop expanding the bracket
    }
    if ((prev_r <= 0.0) != (rb <= 0.0) || rb == 0.0) {
      const double root = (rb == 0.0)
                              ? b
                              : numerics::find_root(r, prev_b, b, kRootTol);
      const double omega0 = nl.f_real(root) / root;
      const double hprime = omega0 - nl.fprime_real(root);
      if (omega0 > 0.0 && hprime > 0.0) {
        KinkConstants kc{omega0, root, hprime};
        // Residuals of the original system; the elimination must not have
        // drifted. h(b) vanishes identically with omega0 = f(b)/b.
        const double integral_residual = 0.5 * omega0 * root * root - nl.F(root);
        const double scale = std::max(1.0, std::abs(nl.F(root)));
        if (std::abs(integral_residual) > 1e-10 * scale)
          throw no_kink("kink constants: integral residual above tolerance");
        return kc;
      }
      // Root exists but fails the admissibility signs: keep scanning for the
      // first admissible one.
    }
    prev_b = b;
    prev_r = rb;
  }
  throw no_kink("kink constants: no admissible (omega0, b) with b in (0, 1e3]");
}

}  // namespace nlslab
