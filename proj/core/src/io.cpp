#include "nlslab/io.hpp"

#include <fftw3.h>

#include <bit>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>

#include "nlslab/errors.hpp"
#include "nlslab/version.hpp"

static_assert(std::endian::native == std::endian::little,
              "file formats are little-endian; this port needs byte swaps");

namespace nlslab {
namespace io {

namespace {

template <typename T>
void write_pod(std::ofstream& os, const T& v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T read_pod(std::ifstream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(T));
  if (!is) throw error("unexpected end of file");
  return v;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw error("cannot open '" + path + "' for writing");
  return os;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw error("cannot open '" + path + "' for reading");
  return is;
}

void expect_magic(std::ifstream& is, const char (&magic)[5],
                  const std::string& path) {
  char got[4];
  is.read(got, 4);
  if (!is || std::string(got, 4) != std::string(magic, 4))
    throw error("'" + path + "' is not a " + std::string(magic, 4) + " file");
}

std::string pair_label(const AdmissiblePair& p) {
  auto fmt = [](double v) {
    if (std::isinf(v)) return std::string("inf");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return std::string(buf);
  };
  return "strichartz_q" + fmt(p.q) + "_r" + fmt(p.r);
}

}  // namespace

void write_profile(const std::string& path, const Profile& p) {
  std::ofstream os = open_out(path);
  os.write("NLSP", 4);
  write_pod(os, std::uint32_t{1});
  ProfileFileKind kind = ProfileFileKind::ground_state;
  if (p.kind == ProfileKind::Kink)
    kind = p.complex_valued ? ProfileFileKind::complex_kink
                            : ProfileFileKind::kink;
  write_pod(os, static_cast<std::uint8_t>(kind));
  write_pod(os, static_cast<std::uint8_t>(p.d));
  write_pod(os, p.omega);
  write_pod(os, p.samples.origin);
  write_pod(os, p.samples.spacing);
  write_pod(os, static_cast<std::uint64_t>(p.samples.value.size()));
  for (double v : p.samples.value) {
    write_pod(os, v);
    if (kind == ProfileFileKind::complex_kink) write_pod(os, p.imag_constant);
  }
  if (!os) throw error("short write to '" + path + "'");
}

ProfileFileData read_profile(const std::string& path) {
  std::ifstream is = open_in(path);
  expect_magic(is, "NLSP", path);
  const auto version = read_pod<std::uint32_t>(is);
  if (version != 1) throw error("unsupported NLSP version in '" + path + "'");
  ProfileFileData out;
  const auto kind = read_pod<std::uint8_t>(is);
  if (kind > 2) throw error("unknown profile kind in '" + path + "'");
  out.kind = static_cast<ProfileFileKind>(kind);
  out.d = read_pod<std::uint8_t>(is);
  out.omega = read_pod<double>(is);
  out.origin = read_pod<double>(is);
  out.spacing = read_pod<double>(is);
  const auto count = read_pod<std::uint64_t>(is);
  out.samples.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    const double re = read_pod<double>(is);
    const double im = out.kind == ProfileFileKind::complex_kink
                          ? read_pod<double>(is)
                          : 0.0;
    out.samples.emplace_back(re, im);
  }
  return out;
}

void write_field(const std::string& path, const Field& f) {
  std::ofstream os = open_out(path);
  os.write("NLSF", 4);
  write_pod(os, std::uint32_t{1});
  write_pod(os, static_cast<std::uint8_t>(f.grid.d));
  for (int axis = 0; axis < f.grid.d; ++axis) {
    write_pod(os, static_cast<std::uint64_t>(f.grid.counts[axis]));
    write_pod(os, f.grid.lengths[axis]);
  }
  write_pod(os, f.time_tag);
  // std::complex<double> is layout-compatible with double[2] (re, im)
  os.write(reinterpret_cast<const char*>(f.values.data()),
           static_cast<std::streamsize>(f.values.size() * sizeof(cplx)));
  if (!os) throw error("short write to '" + path + "'");
}

Field read_field(const std::string& path) {
  std::ifstream is = open_in(path);
  expect_magic(is, "NLSF", path);
  const auto version = read_pod<std::uint32_t>(is);
  if (version != 1) throw error("unsupported NLSF version in '" + path + "'");
  const auto d = read_pod<std::uint8_t>(is);
  if (d != 1 && d != 2) throw error("bad dimension in '" + path + "'");
  std::uint64_t counts[2] = {0, 0};
  double lengths[2] = {0.0, 0.0};
  for (int axis = 0; axis < d; ++axis) {
    counts[axis] = read_pod<std::uint64_t>(is);
    lengths[axis] = read_pod<double>(is);
  }
  const double time = read_pod<double>(is);
  const Grid grid = d == 1 ? Grid::line(lengths[0], counts[0])
                           : Grid::box(lengths[0], counts[0], lengths[1],
                                       counts[1]);
  Field f(grid, time);
  is.read(reinterpret_cast<char*>(f.values.data()),
          static_cast<std::streamsize>(f.values.size() * sizeof(cplx)));
  if (!is) throw error("unexpected end of file in '" + path + "'");
  return f;
}

std::vector<std::string> write_trajectory(const std::string& dir,
                                          const std::string& stem,
                                          const Trajectory& traj) {
  std::filesystem::create_directories(dir);
  std::vector<std::string> written;
  nlohmann::json index;
  index["snapshots"] = nlohmann::json::array();
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    char name[64];
    std::snprintf(name, sizeof name, "%s_%06zu.nlsf", stem.c_str(), i);
    const std::string path = dir + "/" + name;
    write_field(path, traj.snapshots[i]);
    written.push_back(path);
    index["snapshots"].push_back(
        {{"file", name}, {"time", traj.times[i]}});
  }
  const std::string index_path = dir + "/" + stem + "_index.json";
  write_json(index_path, index);
  written.push_back(index_path);
  return written;
}

std::string csv_cell(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return std::string(buf);
}

void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw error("cannot open '" + path + "' for writing");
  for (std::size_t i = 0; i < header.size(); ++i)
    os << (i ? "," : "") << header[i];
  os << '\n';
  for (const auto& row : rows) {
    for (std::size_t i = 0; i < row.size(); ++i)
      os << (i ? "," : "") << csv_cell(row[i]);
    os << '\n';
  }
  if (!os) throw error("short write to '" + path + "'");
}

void write_metrics_csv(const std::string& path,
                       const std::vector<MetricRecord>& records, int d,
                       const std::vector<AdmissiblePair>& pairs,
                       const std::vector<std::vector<double>>& suffix_norms) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::string> header{"t", "mass", "energy", "px"};
  if (d == 2) header.push_back("py");
  header.insert(header.end(), {"l2_dist", "h1_dist", "sup"});
  for (const auto& p : pairs) header.push_back(pair_label(p));
  std::vector<std::vector<double>> rows;
  rows.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const MetricRecord& r = records[i];
    std::vector<double> row{r.time, r.mass, r.energy, r.momentum.x};
    if (d == 2) row.push_back(r.momentum.y);
    row.push_back(r.l2_dist.value_or(nan));
    row.push_back(r.h1_dist.value_or(nan));
    row.push_back(r.sup_norm);
    if (i < suffix_norms.size())
      row.insert(row.end(), suffix_norms[i].begin(), suffix_norms[i].end());
    else
      row.insert(row.end(), pairs.size(), nan);
    rows.push_back(std::move(row));
  }
  write_csv(path, header, rows);
}

void write_picard_csv(const std::string& path, const PicardResult& r) {
  const double nan = std::numeric_limits<double>::quiet_NaN();
  std::vector<std::vector<double>> rows;
  for (std::size_t k = 1; k <= r.iterations; ++k) {
    rows.push_back({static_cast<double>(k),
                    k >= 2 && k - 2 < r.ratios.size() ? r.ratios[k - 2] : nan,
                    r.sup_l2[k - 1], r.sup_h1[k - 1]});
  }
  write_csv(path, {"k", "ratio", "sup_l2", "sup_h1"}, rows);
}

void write_json(const std::string& path, const nlohmann::json& j) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw error("cannot open '" + path + "' for writing");
  os << j.dump(2) << '\n';
  if (!os) throw error("short write to '" + path + "'");
}

void write_manifest(const std::string& dir, const nlohmann::json& config_echo,
                    double wall_seconds,
                    const std::vector<std::string>& produced_files) {
  nlohmann::json m;
  m["config"] = config_echo;
  m["versions"] = nlohmann::json{{"nlslab", std::string(version_string)},
                                 {"fftw", std::string(fftw_version)}};
  m["wall_seconds"] = wall_seconds;
  m["files"] = nlohmann::json::array();
  for (const std::string& f : produced_files) {
    std::error_code ec;
    const auto size = std::filesystem::file_size(f, ec);
    m["files"].push_back(
        {{"name", std::filesystem::path(f).filename().string()},
         {"bytes", ec ? 0 : static_cast<std::uint64_t>(size)}});
  }
  write_json(dir + "/manifest.json", m);
}

}  // namespace io
}  // namespace nlslab
