#include "nlslab/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstring>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace nlslab {
namespace fft {
namespace {

std::mutex plan_mutex;  // FFTW requires serialized plan creation/destruction.

struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  fftw_complex* buf = nullptr;
  std::size_t n = 0;

  PlanPair(const Grid& g) {
    n = g.size();
    std::lock_guard<std::mutex> lock(plan_mutex);
    buf = fftw_alloc_complex(n);
    if (g.d == 1) {
      fwd = fftw_plan_dft_1d(int(g.counts[0]), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
      bwd = fftw_plan_dft_1d(int(g.counts[0]), buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
    } else {
      fwd = fftw_plan_dft_2d(int(g.counts[0]), int(g.counts[1]), buf, buf,
                             FFTW_FORWARD, FFTW_ESTIMATE);
      bwd = fftw_plan_dft_2d(int(g.counts[0]), int(g.counts[1]), buf, buf,
                             FFTW_BACKWARD, FFTW_ESTIMATE);
    }
  }
  ~PlanPair() {
    std::lock_guard<std::mutex> lock(plan_mutex);
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(buf);
  }
  PlanPair(const PlanPair&) = delete;
  PlanPair& operator=(const PlanPair&) = delete;
};

using PlanKey = std::tuple<int, std::size_t, std::size_t>;

PlanPair& plans_for(const Grid& g) {
  thread_local std::map<PlanKey, std::unique_ptr<PlanPair>> cache;
  PlanKey key{g.d, g.counts[0], g.counts[1]};
  auto it = cache.find(key);
  if (it == cache.end())
    it = cache.emplace(key, std::make_unique<PlanPair>(g)).first;
  return *it->second;
}

void execute(const Grid& g, const cplx* in, cplx* out, bool forward_dir) {
  PlanPair& p = plans_for(g);
  static_assert(sizeof(fftw_complex) == sizeof(cplx));
  std::memcpy(p.buf, in, p.n * sizeof(cplx));
  fftw_execute(forward_dir ? p.fwd : p.bwd);
  std::memcpy(out, p.buf, p.n * sizeof(cplx));
  if (!forward_dir) {
    const double scale = 1.0 / double(p.n);
    for (std::size_t i = 0; i < p.n; ++i) out[i] *= scale;
  }
}

}  // namespace

void forward(const Grid& g, const cplx* in, cplx* out) { execute(g, in, out, true); }
void backward(const Grid& g, const cplx* in, cplx* out) { execute(g, in, out, false); }

void forward(const Field& in, Field& out) {
  out.grid = in.grid;
  out.values.resize(in.values.size());
  out.time_tag = in.time_tag;
  forward(in.grid, in.values.data(), out.values.data());
}

void backward(const Field& in, Field& out) {
  out.grid = in.grid;
  out.values.resize(in.values.size());
  out.time_tag = in.time_tag;
  backward(in.grid, in.values.data(), out.values.data());
}

void phase_evolve(Field& u, double tau, bool dealias) {
  const Grid& g = u.grid;
  const std::size_t n = g.size();
  std::vector<cplx> uh(n);
  forward(g, u.values.data(), uh.data());
  const std::size_t ny = g.d == 2 ? g.counts[1] : 1;
  const double kx_cut = (2.0 / 3.0) * M_PI * double(g.counts[0]) / g.lengths[0];
  const double ky_cut =
      g.d == 2 ? (2.0 / 3.0) * M_PI * double(g.counts[1]) / g.lengths[1] : 0.0;
  for (std::size_t idx = 0; idx < n; ++idx) {
    const double kx = g.wavenumber(0, idx / ny);
    const double ky = g.d == 2 ? g.wavenumber(1, idx % ny) : 0.0;
    if (dealias &&
        (std::abs(kx) > kx_cut || (g.d == 2 && std::abs(ky) > ky_cut))) {
      uh[idx] = 0.0;
      continue;
    }
    uh[idx] *= std::polar(1.0, -(kx * kx + ky * ky) * tau);
  }
  backward(g, uh.data(), u.values.data());
}

Field laplacian(const Field& u) {
  const Grid& g = u.grid;
  const std::size_t n = g.size();
  std::vector<cplx> uh(n);
  forward(g, u.values.data(), uh.data());
  const std::size_t ny = g.d == 2 ? g.counts[1] : 1;
  for (std::size_t idx = 0; idx < n; ++idx) {
    const double kx = g.wavenumber(0, idx / ny);
    const double ky = g.d == 2 ? g.wavenumber(1, idx % ny) : 0.0;
    uh[idx] *= -(kx * kx + ky * ky);
  }
  Field out(g, u.time_tag);
  backward(g, uh.data(), out.values.data());
  return out;
}

}  // namespace fft
}  // namespace nlslab
