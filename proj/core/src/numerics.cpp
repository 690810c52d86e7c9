#include "nlslab/numerics.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <cstdint>

#include "nlslab/errors.hpp"

namespace nlslab {
namespace numerics {

double pairwise_sum(const double* v, std::size_t n) {
  if (n <= 8) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += v[i];
    return s;
  }
  const std::size_t half = n / 2;
  return pairwise_sum(v, half) + pairwise_sum(v + half, n - half);
}

double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v.data(), v.size());
}

double integrate(const std::function<double(double)>& f, double a, double b,
                 double rtol) {
  if (a == b) return 0.0;
  using boost::math::quadrature::gauss_kronrod;
  double error = 0.0;
  double result = gauss_kronrod<double, 15>::integrate(f, a, b, 12, rtol, &error);
  return result;
}

double find_root(const std::function<double(double)>& f, double a, double b,
                 double xtol) {
  double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa > 0.0) == (fb > 0.0))
    throw parameter_error("find_root: endpoints do not bracket a sign change");
  auto stop = [xtol](double lo, double hi) { return std::abs(hi - lo) <= xtol; };
  std::uintmax_t max_iter = 200;
  auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, stop, max_iter);
  return 0.5 * (r.first + r.second);
}

double HermiteSeries::eval(double x) const {
  const std::size_t n = value.size();
  double u = (x - origin) / spacing;
  auto i = static_cast<std::ptrdiff_t>(std::floor(u));
  if (i < 0) i = 0;
  if (i > static_cast<std::ptrdiff_t>(n - 2)) i = static_cast<std::ptrdiff_t>(n - 2);
  const double t = u - double(i);
  const double t2 = t * t, t3 = t2 * t;
  // Standard cubic Hermite basis on [0,1], derivative terms scaled by h.
  const double h00 = 2 * t3 - 3 * t2 + 1;
  const double h10 = t3 - 2 * t2 + t;
  const double h01 = -2 * t3 + 3 * t2;
  const double h11 = t3 - t2;
  return h00 * value[i] + h10 * spacing * deriv[i] + h01 * value[i + 1] +
         h11 * spacing * deriv[i + 1];
}

double HermiteSeries::eval_deriv(double x) const {
  const std::size_t n = value.size();
  double u = (x - origin) / spacing;
  auto i = static_cast<std::ptrdiff_t>(std::floor(u));
  if (i < 0) i = 0;
  if (i > static_cast<std::ptrdiff_t>(n - 2)) i = static_cast<std::ptrdiff_t>(n - 2);
  const double t = u - double(i);
  const double t2 = t * t;
  const double dh00 = (6 * t2 - 6 * t) / spacing;
  const double dh10 = 3 * t2 - 4 * t + 1;
  const double dh01 = (-6 * t2 + 6 * t) / spacing;
  const double dh11 = 3 * t2 - 2 * t;
  return dh00 * value[i] + dh10 * deriv[i] + dh01 * value[i + 1] + dh11 * deriv[i + 1];
}

double fd2_4th(const std::vector<double>& f, std::size_t i, double h) {
  return (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] - f[i + 2]) /
         (12.0 * h * h);
}

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2)
    throw parameter_error("fit_line: need at least two matched samples");
  const double n = double(x.size());
  double sx = 0, sy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
  }
  const double mx = sx / n, my = sy / n;
  double sxx = 0, sxy = 0, syy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (sxx == 0.0) throw parameter_error("fit_line: degenerate abscissae");
  LineFit out;
  out.slope = sxy / sxx;
  out.intercept = my - out.slope * mx;
  // Constant data fits exactly: define r^2 = 1 when there is no variance.
  const double ss_res = syy - out.slope * sxy;
  out.r_squared = (syy <= 1e-300) ? 1.0 : 1.0 - ss_res / syy;
  return out;
}

}  // namespace numerics
}  // namespace nlslab
