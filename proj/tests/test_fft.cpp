#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "nlslab/fft.hpp"
#include "oracles.hpp"

using namespace nlslab;

namespace {

Field plane_wave(const Grid& g, std::size_t mode) {
  Field u(g);
  const double k = g.wavenumber(0, mode);
  for (std::size_t i = 0; i < g.size(); ++i)
    u[i] = std::polar(1.0, k * g.point(i).x);
  return u;
}

double max_diff(const Field& a, const Field& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

}  // namespace

TEST_CASE("forward transform matches the naive DFT") {
  const Grid g = Grid::line(5.0, 64);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<cplx> in(64);
  for (auto& z : in) z = cplx(u(rng), u(rng));

  std::vector<cplx> out(64);
  fft::forward(g, in.data(), out.data());
  const auto ref = oracle::naive_dft(in);
  double worst = 0.0;
  for (std::size_t k = 0; k < 64; ++k)
    worst = std::max(worst, std::abs(out[k] - ref[k]));
  CHECK(worst < 1e-11 * 64.0);
}

TEST_CASE("forward/backward roundtrip is the identity") {
  const Grid g = Grid::line(12.5, 256);
  Field u(g);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  for (auto& z : u.values) z = cplx(d(rng), d(rng));

  Field hat(g), back(g);
  fft::forward(u, hat);
  fft::backward(hat, back);
  CHECK(max_diff(u, back) < 1e-13);
}

TEST_CASE("phase_evolve applies e^{-i k^2 tau} exactly on a plane wave") {
  const Grid g = Grid::line(17.0, 128);
  const std::size_t mode = 5;
  const double k = g.wavenumber(0, mode);
  Field u = plane_wave(g, mode);
  Field expect = u;
  const double tau = 0.37;
  const cplx factor = std::polar(1.0, -k * k * tau);
  for (auto& z : expect.values) z *= factor;
  fft::phase_evolve(u, tau, false);
  CHECK(max_diff(u, expect) < 1e-12);
}

TEST_CASE("negative-index modes carry the signed wavenumber") {
  const Grid g = Grid::line(17.0, 128);
  CHECK(g.wavenumber(0, 1) == doctest::Approx(2.0 * M_PI / 17.0));
  CHECK(g.wavenumber(0, 127) == doctest::Approx(-2.0 * M_PI / 17.0));
  const std::size_t mode = 120;  // k < 0
  const double k = g.wavenumber(0, mode);
  CHECK(k < 0.0);
  Field u = plane_wave(g, mode);
  Field expect = u;
  const cplx factor = std::polar(1.0, -k * k * 0.21);
  for (auto& z : expect.values) z *= factor;
  fft::phase_evolve(u, 0.21, false);
  CHECK(max_diff(u, expect) < 1e-12);
}

TEST_CASE("dealias projector kills the top third and keeps low modes") {
  const Grid g = Grid::line(10.0, 64);
  Field top = plane_wave(g, 32);  // Nyquist mode, always above the 2/3 cut
  fft::phase_evolve(top, 0.0, true);
  double sup = 0.0;
  for (const auto& z : top.values) sup = std::max(sup, std::abs(z));
  CHECK(sup < 1e-14);

  Field low = plane_wave(g, 1);
  Field keep = low;
  fft::phase_evolve(low, 0.0, true);
  CHECK(max_diff(low, keep) < 1e-13);
}

TEST_CASE("spectral laplacian of a plane wave is -k^2 u") {
  const Grid g = Grid::line(9.0, 128);
  const std::size_t mode = 7;
  const double k = g.wavenumber(0, mode);
  const Field u = plane_wave(g, mode);
  const Field lap = fft::laplacian(u);
  double worst = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i)
    worst = std::max(worst, std::abs(lap[i] + k * k * u[i]));
  CHECK(worst < 1e-10);
}

TEST_CASE("2-d roundtrip and laplacian") {
  const Grid g = Grid::box(6.0, 32, 4.0, 16);
  const double k1 = g.wavenumber(0, 3);
  const double k2 = g.wavenumber(1, 14);  // negative along y
  Field u(g);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec p = g.point(i);
    u[i] = std::polar(1.0, k1 * p.x + k2 * p.y);
  }
  Field hat(g), back(g);
  fft::forward(u, hat);
  fft::backward(hat, back);
  CHECK(max_diff(u, back) < 1e-13);

  const Field lap = fft::laplacian(u);
  const double k2tot = k1 * k1 + k2 * k2;
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i)
    worst = std::max(worst, std::abs(lap[i] + k2tot * u[i]));
  CHECK(worst < 1e-10);
}
