#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "nlslab/numerics.hpp"

using namespace nlslab;

TEST_CASE("pairwise_sum matches long-double accumulation") {
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(100001);  // odd length exercises the tail split
  long double acc = 0.0L, abs_acc = 0.0L;
  for (auto& x : v) {
    x = u(rng);
    acc += x;
    abs_acc += std::fabs(x);
  }
  const double s = numerics::pairwise_sum(v);
  CHECK(std::fabs(s - double(acc)) <= 1e-12 * double(abs_acc));
  CHECK(numerics::pairwise_sum(v.data(), v.size()) == s);
}

TEST_CASE("pairwise_sum is exact on power-of-two data") {
  std::vector<double> v(4096, 0.125);
  CHECK(numerics::pairwise_sum(v) == 512.0);
  CHECK(numerics::pairwise_sum(std::vector<double>{}) == 0.0);
  CHECK(numerics::pairwise_sum(std::vector<double>{3.5}) == 3.5);
}

TEST_CASE("integrate reaches the requested tolerance") {
  const double got = numerics::integrate(
      [](double x) { return std::exp(-x * x); }, -8.0, 8.0, 1e-12);
  CHECK(std::fabs(got - std::sqrt(M_PI)) < 1e-10);

  const double poly = numerics::integrate(
      [](double x) { return 3.0 * x * x; }, 0.0, 2.0, 1e-12);
  CHECK(poly == doctest::Approx(8.0).epsilon(1e-12));
}

TEST_CASE("find_root polishes a bracketed root") {
  const double r = numerics::find_root(
      [](double x) { return x * x - 2.0; }, 0.0, 2.0, 1e-13);
  CHECK(std::fabs(r - std::sqrt(2.0)) < 1e-12);
}

namespace {

numerics::HermiteSeries sample_sin(double origin, double spacing,
                                   std::size_t n) {
  numerics::HermiteSeries s;
  s.origin = origin;
  s.spacing = spacing;
  s.value.resize(n);
  s.deriv.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double x = origin + spacing * double(i);
    s.value[i] = std::sin(x);
    s.deriv[i] = std::cos(x);
  }
  return s;
}

double hermite_max_err(const numerics::HermiteSeries& s) {
  double worst = 0.0;
  for (double x = s.x_min(); x <= s.x_max(); x += s.spacing / 7.0)
    worst = std::max(worst, std::fabs(s.eval(x) - std::sin(x)));
  return worst;
}

}  // namespace

TEST_CASE("HermiteSeries: nodal exactness and O(h^4) between nodes") {
  const auto coarse = sample_sin(0.0, 0.1, 64);
  const auto fine = sample_sin(0.0, 0.05, 128);

  // exact at the nodes
  CHECK(coarse.eval(0.3) == doctest::Approx(std::sin(0.3)).epsilon(1e-14));
  CHECK(coarse.contains(3.0));
  CHECK(!coarse.contains(-0.1));

  const double e_coarse = hermite_max_err(coarse);
  const double e_fine = hermite_max_err(fine);
  CHECK(e_coarse < 1e-6);
  // halving h divides the interpolation error by ~16
  CHECK(e_coarse / e_fine > 10.0);
  CHECK(e_coarse / e_fine < 24.0);

  CHECK(std::fabs(coarse.eval_deriv(0.327) - std::cos(0.327)) < 1e-4);
}

TEST_CASE("fd2_4th is fourth order on sin") {
  auto build = [](double h, std::size_t n) {
    std::vector<double> f(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = std::sin(double(i) * h);
    return f;
  };
  const double h1 = 0.02, h2 = 0.01;
  const auto f1 = build(h1, 101), f2 = build(h2, 201);
  const std::size_t i1 = 50, i2 = 100;  // both at x = 1
  const double e1 = std::fabs(numerics::fd2_4th(f1, i1, h1) + std::sin(1.0));
  const double e2 = std::fabs(numerics::fd2_4th(f2, i2, h2) + std::sin(1.0));
  CHECK(e1 < 1e-8);
  CHECK(e1 / e2 > 8.0);
}

TEST_CASE("fit_line recovers exact affine data") {
  const std::vector<double> x{0.0, 0.5, 1.0, 2.0, 3.5};
  std::vector<double> y;
  for (double xi : x) y.push_back(3.0 - 2.0 * xi);
  const auto fit = numerics::fit_line(x, y);
  CHECK(fit.slope == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(fit.intercept == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}
