#include <benchmark/benchmark.h>

#include <cmath>
#include <memory>

#include "nlslab/evolution.hpp"
#include "nlslab/fft.hpp"
#include "nlslab/perturbation.hpp"

using namespace nlslab;

namespace {

std::shared_ptr<const Nonlinearity> cubic() {
  static auto nl = std::make_shared<Nonlinearity>(Nonlinearity::power(2.0, 1));
  return nl;
}

Field soliton_field(const Grid& g) {
  static auto prof = std::make_shared<Profile>(
      ground_state_power_1d(2.0, 1.0, Grid::line(64.0, 2048)));
  return realize(boost_soliton(prof, Vec{2.0, 0.0}, Vec{}, 0.0), g, 0.0);
}

}  // namespace

static void BM_fft_roundtrip(benchmark::State& state) {
  const Grid g = Grid::line(40.0, std::size_t(state.range(0)));
  Field u = soliton_field(g);
  Field hat(g);
  for (auto _ : state) {
    fft::forward(u, hat);
    fft::backward(hat, u);
    benchmark::DoNotOptimize(u.values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_fft_roundtrip)->Arg(1024)->Arg(4096)->Arg(16384);

static void BM_phase_evolve(benchmark::State& state) {
  const Grid g = Grid::line(40.0, std::size_t(state.range(0)));
  Field u = soliton_field(g);
  for (auto _ : state) {
    fft::phase_evolve(u, 1e-3);
    benchmark::DoNotOptimize(u.values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_phase_evolve)->Arg(4096)->Arg(16384);

static void BM_step_strang(benchmark::State& state) {
  const Grid g = Grid::line(40.0, std::size_t(state.range(0)));
  Field u = soliton_field(g);
  const auto nl = cubic();
  for (auto _ : state) {
    step_strang(u, 1e-3, *nl);
    benchmark::DoNotOptimize(u.values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_step_strang)->Arg(1024)->Arg(4096)->Arg(16384);

static void BM_ground_state_shoot(benchmark::State& state) {
  const auto nl = cubic();
  for (auto _ : state) {
    const Profile p = ground_state_shoot(*nl, 1.0, 1, RadialGrid{20.0, 2048});
    benchmark::DoNotOptimize(p.peak());
  }
}
BENCHMARK(BM_ground_state_shoot)->Unit(benchmark::kMillisecond);

static void BM_source_term(benchmark::State& state) {
  static auto prof = std::make_shared<Profile>(
      ground_state_power_1d(2.0, 1.0, Grid::line(64.0, 2048)));
  const BackgroundW W = make_background(make_train(
      cubic(), {boost_soliton(prof, Vec{0.0, 0.0}, Vec{-4.0, 0.0}, 0.0),
                boost_soliton(prof, Vec{8.0, 0.0}, Vec{4.0, 0.0}, 0.0)}));
  const Grid g = Grid::line(64.0, std::size_t(state.range(0)));
  for (auto _ : state) {
    const Field h = source_term(W, 0.25, g);
    benchmark::DoNotOptimize(h.values.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_source_term)->Arg(4096)->Arg(16384);

BENCHMARK_MAIN();
