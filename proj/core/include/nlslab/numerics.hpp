#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace nlslab {
namespace numerics {

// Pairwise (cascade) summation: deterministic for a fixed index order and
// O(log n * eps) roundoff instead of O(n * eps) for plain accumulation.
double pairwise_sum(const double* v, std::size_t n);
double pairwise_sum(const std::vector<double>& v);

// Adaptive Gauss-Kronrod integral of f over [a, b], relative tolerance rtol.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double rtol = 1e-10);

// Bracketed root of f on [a, b] (f(a), f(b) of opposite signs) to absolute
// tolerance xtol on the bracket width.
double find_root(const std::function<double(double)>& f, double a, double b,
                 double xtol = 1e-12);

// Cubic Hermite interpolant on a uniform grid from nodal values and nodal
// first derivatives (error O(h^4) with exact derivatives).
struct HermiteSeries {
  double origin = 0.0;
  double spacing = 1.0;
  std::vector<double> value;
  std::vector<double> deriv;

  double x_min() const { return origin; }
  double x_max() const { return origin + spacing * double(value.size() - 1); }
  bool contains(double x) const { return x >= x_min() && x <= x_max(); }
  double eval(double x) const;
  double eval_deriv(double x) const;
};

// Fourth-order centered second derivative of uniformly sampled values;
// one-sided near the ends is not provided — callers restrict to the interior.
// Index i must satisfy 2 <= i <= n-3.
double fd2_4th(const std::vector<double>& f, std::size_t i, double h);

// Least-squares straight line y ~ intercept + slope * x.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};
LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace numerics
}  // namespace nlslab
