#pragma once

#include <complex>
#include <vector>

#include "nlslab/grid.hpp"

namespace nlslab {

using cplx = std::complex<double>;

// Complex grid function on a periodic box, row-major, tagged with its time.
struct Field {
  Grid grid;
  std::vector<cplx> values;
  double time_tag = 0.0;

  Field() = default;
  explicit Field(const Grid& g, double t = 0.0)
      : grid(g), values(g.size(), cplx{0.0, 0.0}), time_tag(t) {}

  std::size_t size() const { return values.size(); }
  cplx& operator[](std::size_t i) { return values[i]; }
  const cplx& operator[](std::size_t i) const { return values[i]; }
};

inline void require_same_grid(const Field& a, const Field& b) {
  if (!(a.grid == b.grid)) throw grid_mismatch("fields live on different grids");
}

}  // namespace nlslab
