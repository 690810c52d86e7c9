#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlslab/evolution.hpp"
#include "nlslab/grid.hpp"
#include "nlslab/nonlinearity.hpp"
#include "nlslab/train.hpp"

namespace nlslab {
namespace config {

using json = nlohmann::json;

enum class ExperimentKind {
  profile,
  evolve,
  multi_soliton_backward,
  infinite_train_picard,
  kink_train,
  verify,
};

std::string to_string(ExperimentKind k);

struct ExperimentConfig {
  ExperimentKind experiment = ExperimentKind::verify;
  std::uint64_t seed = 0;
  std::string out_dir = "out";
  json raw;  // full document; experiment code reads blocks through the getters
};

// Parse + validate presence/shape of the blocks the chosen experiment needs.
// Throws config_error carrying the dotted path of the offending field.
ExperimentConfig parse_config(const json& j);
ExperimentConfig load_config(const std::string& path);

// Dotted-path lookup ("train.components.1.v"; numeric segments index arrays).
// Returns nullptr when the path does not resolve.
const json* find_path(const json& j, const std::string& dotted);

double get_number(const json& j, const std::string& dotted);
double get_number_or(const json& j, const std::string& dotted, double fallback);
std::int64_t get_int(const json& j, const std::string& dotted);
std::int64_t get_int_or(const json& j, const std::string& dotted,
                        std::int64_t fallback);
bool get_bool_or(const json& j, const std::string& dotted, bool fallback);
std::string get_string(const json& j, const std::string& dotted);
std::string get_string_or(const json& j, const std::string& dotted,
                          const std::string& fallback);
// Scalar -> 1-vector; array -> vector of numbers.
std::vector<double> get_vec(const json& j, const std::string& dotted);

// Overwrite the scalar at the dotted path (sweep plumbing). Throws
// config_error when the path does not resolve to an existing number.
void set_by_path(json& j, const std::string& dotted, double value);

// Block builders --------------------------------------------------------
// {"kind": "power"|"double_power"|"gross_pitaevskii"|"tabulated",
//  "alpha": a [, "beta": b] [, "d": hint]
//  [, "s_origin":, "s_spacing":, "g_samples": [...]]}
std::shared_ptr<const Nonlinearity> make_nonlinearity(const json& block);

// {"d": 1, "length": L, "count": N} or
// {"d": 2, "lengths": [Lx, Ly], "counts": [Nx, Ny]}
Grid make_grid(const json& block);

// {"dt":, "t_end":, "dealias": false, "snapshot_stride": 1,
//  "record_metrics": true}
EvolutionConfig make_evolution(const json& block);

// Ground-state profile for (nl, omega, d): closed form for the 1-d pure
// power, radial shooting otherwise. r_max/count may be overridden.
std::shared_ptr<const Profile> make_soliton_profile(
    std::shared_ptr<const Nonlinearity> nl, double omega, int d,
    double r_max = 0.0, std::size_t count = 0);

// Train from explicit components and optional kinks, or from the geometric
// generator:
// {"components": [{"omega":, "v":, "x0":, "gamma":}...],
//  "left_kink": {"c":, "v":, "x0":, "gamma":}, "right_kink": {...},
//  "r0": 2}
// or
// {"generator": {"omega1":, "ratio":, "v_sharp":,
//                "count": N | "eps_tail": eps}, "r0": 2}
// Kink profiles come from the nonlinearity's pinned kink constants
// ("gp": true selects the Gross-Pitaevskii explicit family instead).
TrainSpec make_train(const json& block, std::shared_ptr<const Nonlinearity> nl,
                     const Grid& grid);

}  // namespace config
}  // namespace nlslab
