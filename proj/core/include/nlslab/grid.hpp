#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>

#include "nlslab/errors.hpp"

namespace nlslab {

// Point/velocity in R^d, d <= 2; the y component is ignored when d = 1.
struct Vec {
  double x = 0.0;
  double y = 0.0;

  double norm2() const { return x * x + y * y; }
  double norm() const { return std::sqrt(norm2()); }
  double dot(const Vec& o) const { return x * o.x + y * o.y; }
  Vec operator+(const Vec& o) const { return {x + o.x, y + o.y}; }
  Vec operator-(const Vec& o) const { return {x - o.x, y - o.y}; }
  Vec operator*(double s) const { return {x * s, y * s}; }
};

// Uniform periodic box [-L/2, L/2)^d, d in {1,2}, N points per dimension.
// N must be a power of two; L may be any positive real.
struct Grid {
  int d = 1;
  std::array<double, 2> lengths{0.0, 0.0};
  std::array<std::size_t, 2> counts{0, 0};

  static bool power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

  static Grid line(double L, std::size_t N) {
    if (L <= 0.0) throw parameter_error("grid length must be positive");
    if (!power_of_two(N)) throw parameter_error("grid count must be a power of two");
    Grid g;
    g.d = 1;
    g.lengths = {L, 0.0};
    g.counts = {N, 0};
    return g;
  }

  static Grid box(double Lx, std::size_t Nx, double Ly, std::size_t Ny) {
    if (Lx <= 0.0 || Ly <= 0.0) throw parameter_error("grid length must be positive");
    if (!power_of_two(Nx) || !power_of_two(Ny))
      throw parameter_error("grid count must be a power of two");
    Grid g;
    g.d = 2;
    g.lengths = {Lx, Ly};
    g.counts = {Nx, Ny};
    return g;
  }

  std::size_t size() const { return d == 1 ? counts[0] : counts[0] * counts[1]; }
  double spacing(int axis) const { return lengths[axis] / double(counts[axis]); }
  // h^d volume element of the quadrature cell.
  double cell() const { return d == 1 ? spacing(0) : spacing(0) * spacing(1); }

  double coord(int axis, std::size_t i) const {
    return -0.5 * lengths[axis] + spacing(axis) * double(i);
  }

  // Row-major flattening: flat = ix*Ny + iy (d=2), flat = ix (d=1).
  Vec point(std::size_t flat) const {
    if (d == 1) return {coord(0, flat), 0.0};
    const std::size_t ny = counts[1];
    return {coord(0, flat / ny), coord(1, flat % ny)};
  }

  // Signed spectral wavenumber of mode index j along an axis:
  // k_j = (2*pi/L) * j for j < N/2, and (2*pi/L) * (j - N) otherwise.
  double wavenumber(int axis, std::size_t j) const {
    const std::size_t n = counts[axis];
    const double base = 2.0 * M_PI / lengths[axis];
    const auto sj = static_cast<std::ptrdiff_t>(j);
    const auto half = static_cast<std::ptrdiff_t>(n / 2);
    return base * double(sj < half ? sj : sj - static_cast<std::ptrdiff_t>(n));
  }

  bool operator==(const Grid& o) const {
    return d == o.d && lengths == o.lengths && counts == o.counts;
  }
};

}  // namespace nlslab
