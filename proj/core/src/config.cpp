#include "nlslab/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>

#include "nlslab/profile.hpp"

namespace nlslab {
namespace config {

namespace {

bool all_digits(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isdigit(c);
  });
}

std::vector<std::string> split_path(const std::string& dotted) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= dotted.size()) {
    const std::size_t dot = dotted.find('.', start);
    if (dot == std::string::npos) {
      parts.push_back(dotted.substr(start));
      break;
    }
    parts.push_back(dotted.substr(start, dot - start));
    start = dot + 1;
  }
  return parts;
}

const json& require(const json& j, const std::string& dotted) {
  const json* p = find_path(j, dotted);
  if (!p) throw config_error(dotted, "missing required field");
  return *p;
}

}  // namespace

std::string to_string(ExperimentKind k) {
  switch (k) {
    case ExperimentKind::profile: return "profile";
    case ExperimentKind::evolve: return "evolve";
    case ExperimentKind::multi_soliton_backward:
      return "multi_soliton_backward";
    case ExperimentKind::infinite_train_picard:
      return "infinite_train_picard";
    case ExperimentKind::kink_train: return "kink_train";
    case ExperimentKind::verify: return "verify";
  }
  return "unknown";
}

const json* find_path(const json& j, const std::string& dotted) {
  const json* cur = &j;
  if (dotted.empty()) return cur;
  for (const std::string& part : split_path(dotted)) {
    if (cur->is_object()) {
      auto it = cur->find(part);
      if (it == cur->end()) return nullptr;
      cur = &*it;
    } else if (cur->is_array() && all_digits(part)) {
      const std::size_t idx = std::stoul(part);
      if (idx >= cur->size()) return nullptr;
      cur = &(*cur)[idx];
    } else {
      return nullptr;
    }
  }
  return cur;
}

double get_number(const json& j, const std::string& dotted) {
  const json& v = require(j, dotted);
  if (!v.is_number()) throw config_error(dotted, "expected a number");
  return v.get<double>();
}

double get_number_or(const json& j, const std::string& dotted,
                     double fallback) {
  const json* p = find_path(j, dotted);
  if (!p) return fallback;
  if (!p->is_number()) throw config_error(dotted, "expected a number");
  return p->get<double>();
}

std::int64_t get_int(const json& j, const std::string& dotted) {
  const json& v = require(j, dotted);
  if (!v.is_number_integer()) throw config_error(dotted, "expected an integer");
  return v.get<std::int64_t>();
}

std::int64_t get_int_or(const json& j, const std::string& dotted,
                        std::int64_t fallback) {
  const json* p = find_path(j, dotted);
  if (!p) return fallback;
  if (!p->is_number_integer())
    throw config_error(dotted, "expected an integer");
  return p->get<std::int64_t>();
}

bool get_bool_or(const json& j, const std::string& dotted, bool fallback) {
  const json* p = find_path(j, dotted);
  if (!p) return fallback;
  if (!p->is_boolean()) throw config_error(dotted, "expected a boolean");
  return p->get<bool>();
}

std::string get_string(const json& j, const std::string& dotted) {
  const json& v = require(j, dotted);
  if (!v.is_string()) throw config_error(dotted, "expected a string");
  return v.get<std::string>();
}

std::string get_string_or(const json& j, const std::string& dotted,
                          const std::string& fallback) {
  const json* p = find_path(j, dotted);
  if (!p) return fallback;
  if (!p->is_string()) throw config_error(dotted, "expected a string");
  return p->get<std::string>();
}

std::vector<double> get_vec(const json& j, const std::string& dotted) {
  const json& v = require(j, dotted);
  if (v.is_number()) return {v.get<double>()};
  if (!v.is_array()) throw config_error(dotted, "expected number or array");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number()) throw config_error(dotted, "expected numeric entries");
    out.push_back(e.get<double>());
  }
  return out;
}

void set_by_path(json& j, const std::string& dotted, double value) {
  json* cur = &j;
  for (const std::string& part : split_path(dotted)) {
    if (cur->is_object()) {
      auto it = cur->find(part);
      if (it == cur->end())
        throw config_error(dotted, "sweep path does not resolve");
      cur = &*it;
    } else if (cur->is_array() && all_digits(part)) {
      const std::size_t idx = std::stoul(part);
      if (idx >= cur->size())
        throw config_error(dotted, "sweep index out of range");
      cur = &(*cur)[idx];
    } else {
      throw config_error(dotted, "sweep path does not resolve");
    }
  }
  if (!cur->is_number())
    throw config_error(dotted, "sweep target is not a scalar");
  *cur = value;
}

ExperimentConfig parse_config(const json& j) {
  if (!j.is_object()) throw config_error("", "config root must be an object");
  ExperimentConfig cfg;
  const std::string name = get_string(j, "experiment");
  if (name == "profile") cfg.experiment = ExperimentKind::profile;
  else if (name == "evolve") cfg.experiment = ExperimentKind::evolve;
  else if (name == "multi_soliton_backward")
    cfg.experiment = ExperimentKind::multi_soliton_backward;
  else if (name == "infinite_train_picard")
    cfg.experiment = ExperimentKind::infinite_train_picard;
  else if (name == "kink_train") cfg.experiment = ExperimentKind::kink_train;
  else if (name == "verify") cfg.experiment = ExperimentKind::verify;
  else throw config_error("experiment", "unknown experiment '" + name + "'");

  cfg.seed = static_cast<std::uint64_t>(get_int_or(j, "seed", 0));
  cfg.out_dir = get_string_or(j, "out_dir", "out");
  cfg.raw = j;

  auto need_block = [&j](const char* key) {
    const json* p = find_path(j, key);
    if (!p) throw config_error(key, "missing required block");
    if (!p->is_object()) throw config_error(key, "expected an object block");
  };

  switch (cfg.experiment) {
    case ExperimentKind::profile:
      need_block("nonlinearity");
      need_block("grid");
      break;
    case ExperimentKind::evolve:
      need_block("nonlinearity");
      need_block("grid");
      need_block("evolution");
      need_block("train");
      break;
    case ExperimentKind::multi_soliton_backward:
      need_block("nonlinearity");
      need_block("grid");
      need_block("evolution");
      need_block("train");
      need_block("scheme");
      break;
    case ExperimentKind::infinite_train_picard:
      need_block("nonlinearity");
      need_block("grid");
      need_block("train");
      need_block("picard");
      break;
    case ExperimentKind::kink_train:
      need_block("nonlinearity");
      need_block("grid");
      need_block("evolution");
      need_block("train");
      break;
    case ExperimentKind::verify:
      break;
  }
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw config_error("", "cannot open config file '" + path + "'");
  json j;
  try {
    is >> j;
  } catch (const json::parse_error& e) {
    throw config_error("", "config is not valid JSON: " + std::string(e.what()));
  }
  return parse_config(j);
}

std::shared_ptr<const Nonlinearity> make_nonlinearity(const json& block) {
  const std::string kind = get_string(block, "kind");
  const int d = static_cast<int>(get_int_or(block, "d", 1));
  if (kind == "power") {
    return std::make_shared<Nonlinearity>(
        Nonlinearity::power(get_number(block, "alpha"), d));
  }
  if (kind == "double_power") {
    return std::make_shared<Nonlinearity>(Nonlinearity::double_power(
        get_number(block, "alpha"), get_number(block, "beta"), d));
  }
  if (kind == "gross_pitaevskii") {
    return std::make_shared<Nonlinearity>(Nonlinearity::gross_pitaevskii(d));
  }
  if (kind == "tabulated") {
    return std::make_shared<Nonlinearity>(Nonlinearity::tabulated(
        get_number(block, "s_origin"), get_number(block, "s_spacing"),
        get_vec(block, "g_samples"), d));
  }
  throw config_error("nonlinearity.kind", "unknown kind '" + kind + "'");
}

Grid make_grid(const json& block) {
  const int d = static_cast<int>(get_int_or(block, "d", 1));
  try {
    if (d == 1) {
      return Grid::line(get_number(block, "length"),
                        static_cast<std::size_t>(get_int(block, "count")));
    }
    if (d == 2) {
      const auto L = get_vec(block, "lengths");
      const auto N = get_vec(block, "counts");
      if (L.size() != 2 || N.size() != 2)
        throw config_error("grid.lengths", "need two entries in d = 2");
      return Grid::box(L[0], static_cast<std::size_t>(N[0]), L[1],
                       static_cast<std::size_t>(N[1]));
    }
  } catch (const parameter_error& e) {
    throw config_error("grid", e.what());
  }
  throw config_error("grid.d", "dimension must be 1 or 2");
}

EvolutionConfig make_evolution(const json& block) {
  EvolutionConfig cfg;
  cfg.dt = get_number(block, "dt");
  cfg.t_end = get_number(block, "t_end");
  cfg.dealias = get_bool_or(block, "dealias", false);
  cfg.snapshot_stride =
      static_cast<std::size_t>(get_int_or(block, "snapshot_stride", 1));
  cfg.record_metrics = get_bool_or(block, "record_metrics", true);
  if (cfg.dt == 0.0) throw config_error("evolution.dt", "dt must be nonzero");
  if (cfg.snapshot_stride == 0)
    throw config_error("evolution.snapshot_stride", "stride must be >= 1");
  return cfg;
}

std::shared_ptr<const Profile> make_soliton_profile(
    std::shared_ptr<const Nonlinearity> nl, double omega, int d, double r_max,
    std::size_t count) {
  if (!(omega > 0.0))
    throw config_error("train", "soliton frequency must be positive");
  const double a = std::sqrt(omega);
  if (nl->kind() == NonlinearityKind::Power && d == 1) {
    // closed form; sample box wide enough that the boundary is < 1e-12 peak
    const double L = r_max > 0.0 ? 2.0 * r_max : 64.0 / a;
    const std::size_t n = count ? count : 4096;
    return std::make_shared<Profile>(
        ground_state_power_1d(nl->alpha(), omega, Grid::line(L, n)));
  }
  RadialGrid rg;
  rg.r_max = r_max > 0.0 ? r_max : std::clamp(16.0 / a, 10.0, 400.0);
  rg.count = count ? count : 2048;
  return std::make_shared<Profile>(ground_state_shoot(*nl, omega, d, rg));
}

namespace {

Vec vec_from(const json& block, const std::string& key, const std::string& path) {
  const json* p = find_path(block, key);
  if (!p) return Vec{};
  const auto v = get_vec(block, key);
  if (v.size() == 1) return Vec{v[0], 0.0};
  if (v.size() == 2) return Vec{v[0], v[1]};
  throw config_error(path + "." + key, "expected 1 or 2 components");
}

WaveSpec kink_from(const json& kblock, std::shared_ptr<const Nonlinearity> nl,
                   const Grid& grid, bool mirrored, const std::string& path) {
  const double c = get_number_or(kblock, "c", 0.0);
  const double v = get_number_or(kblock, "v", 0.0);
  const double x0 = get_number_or(kblock, "x0", 0.0);
  const double gamma = get_number_or(kblock, "gamma", 0.0);
  const double L = get_number_or(kblock, "sample_length", grid.lengths[0]);
  const auto N = static_cast<std::size_t>(
      get_int_or(kblock, "sample_count", 4096));
  std::shared_ptr<const Profile> prof;
  if (get_bool_or(kblock, "gp", false) ||
      nl->kind() == NonlinearityKind::GrossPitaevskii) {
    prof = std::make_shared<Profile>(gp_kink(c, Grid::line(L, N)));
  } else {
    const KinkConstants kc = kink_constants(*nl);
    prof = std::make_shared<Profile>(kink_profile(*nl, kc, Grid::line(L, N)));
  }
  try {
    return boost_kink(prof, c, v, x0, gamma, mirrored);
  } catch (const parameter_error& e) {
    throw config_error(path, e.what());
  }
}

}  // namespace

TrainSpec make_train(const json& block, std::shared_ptr<const Nonlinearity> nl,
                     const Grid& grid) {
  const double r0 = get_number_or(block, "r0", 2.0);
  std::vector<WaveSpec> components;
  std::optional<WaveSpec> left, right;

  if (const json* gen = find_path(block, "generator")) {
    const double omega1 = get_number(*gen, "omega1");
    const double ratio = get_number(*gen, "ratio");
    const double v_sharp = get_number(*gen, "v_sharp");
    std::size_t count;
    if (find_path(*gen, "count")) {
      count = static_cast<std::size_t>(get_int(*gen, "count"));
    } else {
      const double eps = get_number(*gen, "eps_tail");
      count = truncate_train(omega1, ratio, nl->exponents().alpha1, grid.d, r0,
                             eps);
    }
    const TrainParams params =
        generate_train_params(omega1, ratio, v_sharp, count);
    for (std::size_t jj = 0; jj < count; ++jj) {
      auto prof = make_soliton_profile(nl, params.omegas[jj], grid.d);
      components.push_back(boost_soliton(
          prof, Vec{params.velocities[jj], 0.0}, Vec{}, 0.0));
    }
  } else if (const json* comps = find_path(block, "components")) {
    if (!comps->is_array())
      throw config_error("train.components", "expected an array");
    for (std::size_t jj = 0; jj < comps->size(); ++jj) {
      const json& cb = (*comps)[jj];
      const std::string path = "train.components." + std::to_string(jj);
      const double omega = get_number(cb, "omega");
      auto prof = make_soliton_profile(
          nl, omega, grid.d, get_number_or(cb, "r_max", 0.0),
          static_cast<std::size_t>(get_int_or(cb, "sample_count", 0)));
      components.push_back(boost_soliton(prof, vec_from(cb, "v", path),
                                          vec_from(cb, "x0", path),
                                          get_number_or(cb, "gamma", 0.0)));
    }
  } else {
    throw config_error("train", "need 'components' or 'generator'");
  }

  if (const json* kb = find_path(block, "left_kink"))
    left = kink_from(*kb, nl, grid, false, "train.left_kink");
  if (const json* kb = find_path(block, "right_kink"))
    right = kink_from(*kb, nl, grid, true, "train.right_kink");

  return nlslab::make_train(nl, std::move(components), std::move(left),
                            std::move(right), r0);
}

}  // namespace config
}  // namespace nlslab
