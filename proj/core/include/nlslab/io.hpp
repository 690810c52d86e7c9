#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlslab/metrics.hpp"
#include "nlslab/perturbation.hpp"
#include "nlslab/profile.hpp"
#include "nlslab/trajectory.hpp"

namespace nlslab {
namespace io {

// ---- profile files ("NLSP") ----------------------------------------------
// magic "NLSP", version u32 = 1, kind u8, d u8, omega f64, sample-grid
// origin f64 / spacing f64 / count u64, then samples: f64 each (real kinds)
// or (re, im) f64 pairs (complex kinks). Little-endian throughout.
enum class ProfileFileKind : std::uint8_t {
  ground_state = 0,
  kink = 1,
  complex_kink = 2,
};

struct ProfileFileData {
  ProfileFileKind kind = ProfileFileKind::ground_state;
  std::uint8_t d = 1;
  double omega = 0.0;
  double origin = 0.0;
  double spacing = 0.0;
  std::vector<cplx> samples;  // imaginary parts zero for real kinds
};

void write_profile(const std::string& path, const Profile& p);
ProfileFileData read_profile(const std::string& path);

// ---- field snapshots ("NLSF") ---------------------------------------------
// magic "NLSF", version u32 = 1, d u8, per-dimension N u64 and L f64, time
// f64, then interleaved (re, im) f64, row-major, little-endian.
void write_field(const std::string& path, const Field& f);
Field read_field(const std::string& path);

// Snapshot files <stem>_NNNNNN.nlsf plus index JSON <stem>_index.json
// listing files and times. Returns the written file names (index last).
std::vector<std::string> write_trajectory(const std::string& dir,
                                          const std::string& stem,
                                          const Trajectory& traj);

// ---- CSV (deterministic bytes: '.' decimal, %.16e cells) -------------------
std::string csv_cell(double v);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

// Metric series: t, mass, energy, px[, py], l2_dist, h1_dist, sup, then one
// suffix-window Strichartz column per admissible pair (values over [t, end]).
void write_metrics_csv(const std::string& path,
                       const std::vector<MetricRecord>& records, int d,
                       const std::vector<AdmissiblePair>& pairs,
                       const std::vector<std::vector<double>>& suffix_norms);

// Picard iterate diagnostics: k, ratio, sup_t L2, sup_t H1.
void write_picard_csv(const std::string& path, const PicardResult& r);

// ---- JSON ------------------------------------------------------------------
void write_json(const std::string& path, const nlohmann::json& j);

// Run manifest: config echo, library versions, wall time, and the size of
// every produced file. Written last.
void write_manifest(const std::string& dir, const nlohmann::json& config_echo,
                    double wall_seconds,
                    const std::vector<std::string>& produced_files);

}  // namespace io
}  // namespace nlslab
