#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "nlslab/io.hpp"
#include "nlslab/nonlinearity.hpp"

using namespace nlslab;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const char* leaf) {
  const fs::path p = fs::temp_directory_path() / "nlslab_io_tests" / leaf;
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("profile files round-trip ground states bitwise") {
  const auto dir = scratch_dir("profile");
  const Profile p = ground_state_power_1d(3.0, 1.25, Grid::line(80.0, 1024));
  const std::string path = (dir / "gs.nlsp").string();
  io::write_profile(path, p);
  const io::ProfileFileData fd = io::read_profile(path);

  CHECK(fd.kind == io::ProfileFileKind::ground_state);
  CHECK(fd.d == 1);
  CHECK(fd.omega == p.omega);
  CHECK(fd.origin == p.samples.origin);
  CHECK(fd.spacing == p.samples.spacing);
  REQUIRE(fd.samples.size() == p.samples.value.size());
  for (std::size_t i = 0; i < fd.samples.size(); ++i) {
    CHECK(fd.samples[i].real() == p.samples.value[i]);  // bit-exact
    CHECK(fd.samples[i].imag() == 0.0);
  }
}

TEST_CASE("profile files tag kinks and carry the complex constant") {
  const auto dir = scratch_dir("kinks");

  const auto dp = std::make_shared<Nonlinearity>(
      Nonlinearity::double_power(1.0, 2.0));
  const Profile k =
      kink_profile(*dp, kink_constants(*dp), Grid::line(60.0, 1024));
  const std::string kpath = (dir / "kink.nlsp").string();
  io::write_profile(kpath, k);
  CHECK(io::read_profile(kpath).kind == io::ProfileFileKind::kink);

  const Profile gp = gp_kink(0.5, Grid::line(40.0, 512));
  const std::string cpath = (dir / "gp.nlsp").string();
  io::write_profile(cpath, gp);
  const io::ProfileFileData fd = io::read_profile(cpath);
  CHECK(fd.kind == io::ProfileFileKind::complex_kink);
  REQUIRE(fd.samples.size() == gp.samples.value.size());
  for (std::size_t i = 0; i < fd.samples.size(); ++i) {
    CHECK(fd.samples[i].real() == gp.samples.value[i]);
    CHECK(fd.samples[i].imag() == gp.imag_constant);
  }
}

TEST_CASE("magic bytes are enforced") {
  const auto dir = scratch_dir("magic");
  const std::string path = (dir / "junk.bin").string();
  {
    std::ofstream os(path, std::ios::binary);
    os << "XXXXsome bytes that are long enough to parse a header from";
  }
  CHECK_THROWS_AS(io::read_profile(path), error);
  CHECK_THROWS_AS(io::read_field(path), error);

  // a profile file is not a field file and vice versa
  const Profile p = ground_state_power_1d(2.0, 1.0, Grid::line(80.0, 512));
  const std::string ppath = (dir / "p.nlsp").string();
  io::write_profile(ppath, p);
  CHECK_THROWS_AS(io::read_field(ppath), error);
}

TEST_CASE("field snapshots round-trip bitwise with grid and time tag") {
  const auto dir = scratch_dir("field");
  const Grid g = Grid::line(10.0, 64);
  Field f(g, 0.375);
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double x = g.coord(0, i);
    f[i] = cplx(std::sin(1.7 * x), std::cos(0.3 * x));
  }
  const std::string path = (dir / "snap.nlsf").string();
  io::write_field(path, f);
  const Field back = io::read_field(path);
  CHECK(back.grid == g);
  CHECK(back.time_tag == 0.375);
  REQUIRE(back.size() == f.size());
  for (std::size_t i = 0; i < f.size(); ++i) CHECK(back[i] == f[i]);

  // 2-d layout round-trips too
  const Grid b = Grid::box(6.0, 16, 4.0, 8);
  Field f2(b, 1.0);
  for (std::size_t i = 0; i < b.size(); ++i)
    f2[i] = cplx(double(i), -0.5 * double(i));
  const std::string path2 = (dir / "snap2.nlsf").string();
  io::write_field(path2, f2);
  const Field back2 = io::read_field(path2);
  CHECK(back2.grid == b);
  for (std::size_t i = 0; i < b.size(); ++i) CHECK(back2[i] == f2[i]);
}

TEST_CASE("trajectory writer emits numbered snapshots plus an index") {
  const auto dir = scratch_dir("traj");
  const Grid g = Grid::line(8.0, 32);
  Trajectory traj;
  for (int i = 0; i < 3; ++i) {
    Field f(g, 0.1 * i);
    f[std::size_t(i)] = cplx(1.0 + i, 0.0);
    traj.snapshots.push_back(f);
    traj.times.push_back(0.1 * i);
  }
  const auto files = io::write_trajectory(dir.string(), "run", traj);
  REQUIRE(files.size() == 4);  // three snapshots, then the index
  CHECK(files[0].find("run_000000.nlsf") != std::string::npos);
  CHECK(files[2].find("run_000002.nlsf") != std::string::npos);
  CHECK(files.back().find("run_index.json") != std::string::npos);
  for (const auto& f : files) CHECK(fs::exists(f));

  const auto index = nlohmann::json::parse(slurp(files.back()));
  REQUIRE(index.at("snapshots").size() == 3);
  CHECK(index["snapshots"][1]["file"] == "run_000001.nlsf");
  CHECK(index["snapshots"][1]["time"] == doctest::Approx(0.1));

  const Field mid = io::read_field(files[1]);
  CHECK(mid.time_tag == traj.snapshots[1].time_tag);
  for (std::size_t i = 0; i < g.size(); ++i)
    CHECK(mid[i] == traj.snapshots[1][i]);
}

TEST_CASE("csv cells are fixed-width scientific") {
  CHECK(io::csv_cell(1.0) == "1.0000000000000000e+00");
  CHECK(io::csv_cell(0.1) == "1.0000000000000001e-01");
  CHECK(io::csv_cell(-2.5e-13) == "-2.4999999999999999e-13");
  CHECK(io::csv_cell(0.0) == "0.0000000000000000e+00");
}

TEST_CASE("csv writer produces deterministic bytes") {
  const auto dir = scratch_dir("csv");
  const std::string path = (dir / "t.csv").string();
  io::write_csv(path, {"a", "b"}, {{1.0, 0.5}, {2.0, 0.25}});
  const std::string expect = "a,b\n" + io::csv_cell(1.0) + "," +
                             io::csv_cell(0.5) + "\n" + io::csv_cell(2.0) +
                             "," + io::csv_cell(0.25) + "\n";
  CHECK(slurp(path) == expect);

  // identical content twice gives identical bytes
  const std::string path2 = (dir / "t2.csv").string();
  io::write_csv(path2, {"a", "b"}, {{1.0, 0.5}, {2.0, 0.25}});
  CHECK(slurp(path) == slurp(path2));
}

TEST_CASE("metrics csv lays out columns per dimension and pair list") {
  const auto dir = scratch_dir("metrics");
  MetricRecord r0;
  r0.time = 0.0;
  r0.mass = 2.0;
  r0.energy = -0.5;
  r0.momentum = {0.25, 0.0};
  r0.sup_norm = 1.5;
  MetricRecord r1 = r0;
  r1.time = 0.5;
  r1.l2_dist = 1e-3;
  r1.h1_dist = 2e-3;

  const auto pairs = admissible_pairs(1, 2);
  const std::string path = (dir / "m.csv").string();
  io::write_metrics_csv(path, {r0, r1}, 1, pairs, {{1.0, 2.0}, {0.5, 1.0}});

  std::ifstream is(path);
  std::string header, row0, row1;
  std::getline(is, header);
  std::getline(is, row0);
  std::getline(is, row1);
  auto columns = [](const std::string& line) {
    return 1 + std::count(line.begin(), line.end(), ',');
  };
  CHECK(columns(header) == 7 + std::ptrdiff_t(pairs.size()));
  CHECK(columns(row0) == columns(header));
  CHECK(columns(row1) == columns(header));
  CHECK(header.rfind("t,mass,energy,px,l2_dist,h1_dist,sup,", 0) == 0);
  // distances absent on the first record: nan cells, never empty ones
  CHECK(row0.find("nan") != std::string::npos);
  CHECK(row0.find(",,") == std::string::npos);
}

TEST_CASE("picard csv has one row per iterate") {
  const auto dir = scratch_dir("picard");
  PicardResult r;
  r.increments = {1.0, 0.5, 0.2};
  r.ratios = {0.5, 0.4};
  r.sup_l2 = {1.0, 1.4, 1.5};
  r.sup_h1 = {2.0, 2.8, 3.0};
  r.iterations = 3;
  const std::string path = (dir / "p.csv").string();
  io::write_picard_csv(path, r);
  std::ifstream is(path);
  std::string line;
  int lines = 0;
  while (std::getline(is, line)) ++lines;
  CHECK(lines == 4);  // header + one row per iterate
}

TEST_CASE("manifest records config echo and produced files") {
  const auto dir = scratch_dir("manifest");
  const std::string payload = (dir / "out.csv").string();
  io::write_csv(payload, {"x"}, {{1.0}});

  nlohmann::json cfg;
  cfg["experiment"] = "verify";
  io::write_manifest(dir.string(), cfg, 1.25, {payload});

  const auto m = nlohmann::json::parse(slurp(dir / "manifest.json"));
  CHECK(m.at("config").at("experiment") == "verify");
  CHECK(m.at("wall_seconds") == doctest::Approx(1.25));
  REQUIRE(m.at("files").size() == 1);
  CHECK(m["files"][0].at("name") == "out.csv");
  CHECK(m["files"][0].at("bytes").get<std::uint64_t>() > 0);
  CHECK(m.at("versions").contains("fftw"));
}
