#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "nlslab/field.hpp"
#include "nlslab/nonlinearity.hpp"
#include "nlslab/wave.hpp"

namespace nlslab {

// Interaction/summability quantities of a train. Velocities enter through the
// effective component speed (boost v plus intrinsic kink speed c); omega of a
// kink component is the pinned kink frequency of its nonlinearity.
struct TrainDerived {
  double omega_star = 0.0;       // min_j omega_j / 2
  double v_star_plain = 0.0;     // inf_{j<k} |v_k - v_j|, kinks included
  double v_star_weighted = 0.0;  // inf_{j!=k} sqrt(omega_j) |v_k - v_j|
  double V_star = 0.0;           // sum_j <v_j> omega_j^{1/alpha - d/4}
  bool V_star_required = false;  // only when alpha1 < alpha2/(2+alpha2)
  double integrability_sum = 0.0;  // sum_j omega_j^{1/alpha - d/(2 r0)}
  double r0 = 2.0;                 // spatial integrability index
  double predicted_rate = 0.0;     // sqrt(omega_star) * v_star_plain
};

struct TrainSpec {
  std::shared_ptr<const Nonlinearity> nl;
  std::vector<WaveSpec> components;  // solitons
  std::optional<WaveSpec> left_kink;
  std::optional<WaveSpec> right_kink;
  TrainDerived derived;
};

struct ValidationReport {
  bool ok = true;
  std::vector<std::string> messages;  // one entry per violated condition
  TrainDerived derived;
};

TrainDerived train_derived(const TrainSpec& t, double r0);

TrainSpec make_train(std::shared_ptr<const Nonlinearity> nl,
                     std::vector<WaveSpec> components,
                     std::optional<WaveSpec> left_kink = std::nullopt,
                     std::optional<WaveSpec> right_kink = std::nullopt,
                     double r0 = 2.0);

// All components of the train in order: left kink, solitons, right kink.
std::vector<WaveSpec> all_components(const TrainSpec& t);

// Superposition W(t) sampled on the grid.
Field sum_profile(const TrainSpec& t, const Grid& grid, double time);

// Finite multi-soliton / kink-bounded configuration: ground-state components
// with positive frequencies and separated speeds; with kinks present (d = 1)
// the speeds must be strictly ordered between the kink speeds.
ValidationReport validate_multi_soliton_params(const TrainSpec& t);

// Infinite-train admissibility: exponent chain of the nonlinearity inside the
// subcritical range, integrability index r0 > max(1, d*alpha/2), weighted
// speed separation positive, summability exponents reported (required for an
// infinite family), gradient-weighted sum only when the small-alpha condition
// demands it.
ValidationReport validate_train_admissibility(const TrainSpec& t);

// Kink-train admissibility for the double-power family: exponent window
// 0 < alpha < 4/3, or 4/3 <= alpha < sqrt(2) with beta = 2/alpha; exactly one
// (left) kink pinned at the kink frequency, slower than every soliton; plus
// the infinite-train conditions with the kink counted as component zero.
ValidationReport validate_kink_train_window(const TrainSpec& t);

// Frequency/velocity ladder: omega_j = omega1 * ratio^(j-1) (0 < ratio < 1),
// v_1 = 0, v_{j+1} = v_j + v_sharp / sqrt(omega_{j+1}); the weighted speed
// separation of the resulting train equals v_sharp exactly.
struct TrainParams {
  std::vector<double> omegas;
  std::vector<double> velocities;
};
TrainParams generate_train_params(double omega1, double ratio, double v_sharp,
                                  std::size_t count);

// Smallest N whose geometric integrability tail q^N/(1-q), q = ratio^e,
// e = 1/alpha - d/(2 r0), falls below eps_tail.
std::size_t truncate_train(double omega1, double ratio, double alpha, int d,
                           double r0, double eps_tail);

}  // namespace nlslab
