#pragma once

#include "nlslab/field.hpp"

namespace nlslab {

// Cached-plan c2c transforms. Plans are created with FFTW_ESTIMATE only:
// measured planning picks machine/timing-dependent algorithms and would break
// bit-identical reruns. Each thread keeps its own plans and fftw_malloc'd
// staging buffers (plan creation is serialized globally as FFTW requires);
// data is copied in and out, so caller arrays need no special alignment.
namespace fft {

// out = sum_x u(x) e^{-i k.x} (FFTW forward sign convention), unnormalized.
void forward(const Grid& g, const cplx* in, cplx* out);
// Inverse of forward, including the 1/N_total normalization.
void backward(const Grid& g, const cplx* in, cplx* out);

void forward(const Field& in, Field& out);
void backward(const Field& in, Field& out);

// In-place free propagator over duration tau: spectrum times e^{-i|k|^2 tau},
// optionally composed with the 2/3-rule dealiasing projector.
void phase_evolve(Field& u, double tau, bool dealias = false);

// Spectral Laplacian.
Field laplacian(const Field& u);

}  // namespace fft

}  // namespace nlslab
