#include "nlslab/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <thread>

#include "nlslab/errors.hpp"
#include "nlslab/evolution.hpp"
#include "nlslab/io.hpp"
#include "nlslab/metrics.hpp"
#include "nlslab/perturbation.hpp"
#include "nlslab/profile.hpp"
#include "nlslab/train.hpp"
#include "nlslab/wave.hpp"

namespace nlslab {
namespace experiments {

namespace {

using config::ExperimentConfig;
using config::json;

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

json validation_json(const ValidationReport& r) {
  return {{"ok", r.ok},
          {"messages", r.messages},
          {"omega_star", r.derived.omega_star},
          {"v_star_plain", r.derived.v_star_plain},
          {"v_star_weighted", r.derived.v_star_weighted},
          {"V_star", r.derived.V_star},
          {"V_star_required", r.derived.V_star_required},
          {"integrability_sum", r.derived.integrability_sum},
          {"r0", r.derived.r0},
          {"predicted_rate", r.derived.predicted_rate}};
}

// Initial data W(t0) with optional seeded complex Gaussian noise.
Field initial_from_train(const TrainSpec& train, const Grid& grid, double t0,
                         std::uint64_t seed, double noise_amp) {
  Field u = sum_profile(train, grid, t0);
  if (noise_amp > 0.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto& v : u.values) v += noise_amp * cplx(gauss(rng), gauss(rng));
  }
  return u;
}

void ensure_records(Trajectory& traj, const Nonlinearity& nl) {
  if (traj.records.size() == traj.snapshots.size()) return;
  traj.records.clear();
  for (const Field& f : traj.snapshots) traj.records.push_back(conserved(f, nl));
}

// ---------------------------------------------------------------- profile --

RunResult run_profile(const ExperimentConfig& cfg, const std::string& out,
                      std::vector<std::string>& files) {
  const json& raw = cfg.raw;
  auto nl = config::make_nonlinearity(raw.at("nonlinearity"));
  const Grid grid = config::make_grid(raw.at("grid"));
  json rep;

  if (nl->kind() != NonlinearityKind::GrossPitaevskii) {
    const double omega = config::get_number_or(raw, "profile.omega", 1.0);
    auto prof = config::make_soliton_profile(
        nl, omega, grid.d, config::get_number_or(raw, "profile.r_max", 0.0),
        static_cast<std::size_t>(
            config::get_int_or(raw, "profile.sample_count", 0)));
    const std::string path = out + "/ground_state.nlsp";
    io::write_profile(path, *prof);
    files.push_back(path);
    rep["ground_state"] = {{"omega", prof->omega},
                           {"d", prof->d},
                           {"peak", prof->peak()},
                           {"decay_rate", prof->decay_rate_a},
                           {"residual", prof->residual},
                           {"residual_tol", prof->residual_tol}};
  }

  if (nl->kind() == NonlinearityKind::GrossPitaevskii) {
    const double c = config::get_number_or(raw, "profile.c", 0.0);
    const Profile k = gp_kink(c, Grid::line(grid.lengths[0], grid.counts[0]));
    const std::string path = out + "/kink.nlsp";
    io::write_profile(path, k);
    files.push_back(path);
    rep["kink"] = {{"family", "gross_pitaevskii"}, {"c", c},
                   {"omega", k.omega},           {"residual", k.residual},
                   {"limit_minus_inf", k.limit_minus_inf},
                   {"limit_plus_inf", k.limit_plus_inf}};
  } else {
    try {
      const KinkConstants kc = kink_constants(*nl);
      const Profile k = kink_profile(
          *nl, kc, Grid::line(grid.lengths[0], grid.counts[0]));
      const std::string path = out + "/kink.nlsp";
      io::write_profile(path, k);
      files.push_back(path);
      rep["kink"] = {{"omega0", kc.omega0},
                     {"b", kc.b},
                     {"hprime_at_b", kc.hprime_at_b},
                     {"residual", k.residual}};
    } catch (const no_kink& e) {
      rep["kink"] = {{"exists", false}, {"reason", e.what()}};
    }
  }

  const std::string rpath = out + "/report.json";
  io::write_json(rpath, rep);
  files.push_back(rpath);
  return RunResult{0, rep};
}

// ----------------------------------------------------------------- evolve --

RunResult run_evolve(const ExperimentConfig& cfg, const std::string& out,
                     std::vector<std::string>& files) {
  const json& raw = cfg.raw;
  auto nl = config::make_nonlinearity(raw.at("nonlinearity"));
  const Grid grid = config::make_grid(raw.at("grid"));
  const EvolutionConfig ec = config::make_evolution(raw.at("evolution"));
  const TrainSpec train = config::make_train(raw.at("train"), nl, grid);

  const double t_start = config::get_number_or(raw, "evolution.t_start", 0.0);
  const double noise = config::get_number_or(raw, "noise_amplitude", 0.0);
  Field u0 = initial_from_train(train, grid, t_start, cfg.seed, noise);
  u0.time_tag = t_start;

  Trajectory traj = evolve(u0, *nl, ec);
  ensure_records(traj, *nl);
  for (std::size_t i = 0; i < traj.snapshots.size(); ++i) {
    const Field ref = sum_profile(train, grid, traj.times[i]);
    const Distances d = distances(traj.snapshots[i], ref);
    traj.records[i].l2_dist = d.l2;
    traj.records[i].h1_dist = d.h1;
  }

  const auto pairs = admissible_pairs(grid.d);
  const auto suffix = strichartz_suffix_table(traj.snapshots, traj.times, pairs);
  const std::string mpath = out + "/metrics.csv";
  io::write_metrics_csv(mpath, traj.records, grid.d, pairs, suffix);
  files.push_back(mpath);

  if (config::get_bool_or(raw, "output.write_fields", false)) {
    auto written = io::write_trajectory(out, "field", traj);
    files.insert(files.end(), written.begin(), written.end());
  }

  const MetricRecord& m0 = traj.records.front();
  const MetricRecord& mT = traj.records.back();
  json summary = {
      {"steps", traj.steps_taken},
      {"phase_bound_violated", traj.phase_bound_violated},
      {"mass_drift_rel", std::abs(mT.mass - m0.mass) / std::abs(m0.mass)},
      {"energy_drift_rel",
       std::abs(mT.energy - m0.energy) / std::max(1e-300, std::abs(m0.energy))},
      {"momentum_drift", std::abs(mT.momentum.x - m0.momentum.x) +
                             (grid.d == 2 ? std::abs(mT.momentum.y -
                                                     m0.momentum.y)
                                          : 0.0)},
      {"l2_error_final", traj.records.back().l2_dist.value_or(kNaN)},
      {"h1_error_final", traj.records.back().h1_dist.value_or(kNaN)},
      {"sup_final", mT.sup_norm},
      {"strichartz",
       suffix.empty() ? 0.0
                      : *std::max_element(suffix[0].begin(), suffix[0].end())}};
  return RunResult{0, summary};
}

// --------------------------------------------------- multi-soliton scheme --

RunResult run_backward(const ExperimentConfig& cfg, const std::string& out,
                       std::vector<std::string>& files) {
  const json& raw = cfg.raw;
  auto nl = config::make_nonlinearity(raw.at("nonlinearity"));
  const Grid grid = config::make_grid(raw.at("grid"));
  const EvolutionConfig ec = config::make_evolution(raw.at("evolution"));
  const TrainSpec train = config::make_train(raw.at("train"), nl, grid);

  const ValidationReport vr = validate_multi_soliton_params(train);
  const auto horizons = config::get_vec(raw, "scheme.horizons");
  const double T0 = config::get_number_or(raw, "scheme.T0", 0.0);
  const double fit_fraction =
      config::get_number_or(raw, "scheme.fit_fraction", 0.75);

  const auto recs = backward_scheme(train, *nl, horizons, T0, grid, ec);

  std::vector<std::vector<double>> rate_rows;
  json rates = json::array();
  bool any_blowup = false;
  double last_rate = kNaN, last_r2 = kNaN;
  for (const auto& rec : recs) {
    any_blowup = any_blowup || rec.blowup;
    // per-horizon decay series
    std::vector<std::vector<double>> rows;
    for (std::size_t i = 0; i < rec.traj.times.size(); ++i)
      rows.push_back({rec.traj.times[i], rec.l2_to_profile[i],
                      rec.h1_to_profile[i]});
    char name[48];
    std::snprintf(name, sizeof name, "decay_T%g.csv", rec.T_n);
    const std::string dpath = out + "/" + name;
    io::write_csv(dpath, {"t", "l2", "h1"}, rows);
    files.push_back(dpath);

    // fit below the terminal boundary layer, positive values only
    const double t_hi = T0 + fit_fraction * (rec.T_n - T0);
    std::vector<double> ft, fv;
    for (std::size_t i = 0; i < rec.traj.times.size(); ++i) {
      const double t = rec.traj.times[i];
      if (t <= t_hi && rec.h1_to_profile[i] > 0.0) {
        ft.push_back(t);
        fv.push_back(rec.h1_to_profile[i]);
      }
    }
    double rate = kNaN, r2 = kNaN;
    if (!rec.blowup && ft.size() >= 3) {
      const FitResult fr = fit_exponential_rate(ft, fv);
      rate = fr.rate;
      r2 = fr.r_squared;
      last_rate = rate;
      last_r2 = r2;
    }
    rate_rows.push_back({rec.T_n, rate, r2,
                         rec.h1_to_profile.empty() ? kNaN
                                                   : rec.h1_to_profile.back(),
                         rec.blowup ? 1.0 : 0.0});
    rates.push_back({{"T_n", rec.T_n},
                     {"rate", rate},
                     {"r_squared", r2},
                     {"blowup", rec.blowup}});
  }
  const std::string rpath = out + "/rates.csv";
  io::write_csv(rpath, {"T_n", "rate", "r_squared", "h1_at_T0", "blowup"},
                rate_rows);
  files.push_back(rpath);

  // Cauchy differences of the produced initial data
  std::vector<std::vector<double>> crow;
  json cauchy = json::array();
  bool strictly_decreasing = true;
  double prev = kNaN;
  for (std::size_t i = 0; i + 1 < recs.size(); ++i) {
    if (recs[i].blowup || recs[i + 1].blowup) continue;
    const double diff =
        distances(recs[i + 1].initial_data, recs[i].initial_data).l2;
    crow.push_back({recs[i].T_n, recs[i + 1].T_n, diff});
    cauchy.push_back(diff);
    if (!std::isnan(prev) && !(diff < prev)) strictly_decreasing = false;
    prev = diff;
  }
  const std::string cpath = out + "/cauchy.csv";
  io::write_csv(cpath, {"T_lo", "T_hi", "l2_diff"}, crow);
  files.push_back(cpath);

  json summary = {{"rate", last_rate},
                  {"r_squared", last_r2},
                  {"rates", rates},
                  {"cauchy", cauchy},
                  {"cauchy_strictly_decreasing", strictly_decreasing},
                  {"any_blowup", any_blowup},
                  {"predicted_rate", train.derived.predicted_rate},
                  {"validation", validation_json(vr)}};
  return RunResult{0, summary};
}

// ------------------------------------------------------ infinite train ----

RunResult run_picard(const ExperimentConfig& cfg, const std::string& out,
                     std::vector<std::string>& files) {
  const json& raw = cfg.raw;
  auto nl = config::make_nonlinearity(raw.at("nonlinearity"));
  const Grid grid = config::make_grid(raw.at("grid"));
  TrainSpec train = config::make_train(raw.at("train"), nl, grid);

  const ValidationReport vr = validate_train_admissibility(train);
  const std::size_t n_components = train.components.size();
  const BackgroundW W = make_background(std::move(train));

  const double t0 = config::get_number_or(raw, "picard.t0", 0.0);
  const double T_max = config::get_number(raw, "picard.T_max");
  const double dt = config::get_number(raw, "picard.dt");
  PicardOptions opts;
  opts.n_iter = static_cast<std::size_t>(
      config::get_int_or(raw, "picard.n_iter", 8));
  opts.converge_tol = config::get_number_or(raw, "picard.converge_tol", 0.0);
  opts.store_iterates = config::get_bool_or(raw, "picard.store_iterates", false);

  const PicardResult res = picard_iterate(W, *nl, t0, T_max, grid, dt, opts);
  const std::string cpath = out + "/contraction.csv";
  io::write_picard_csv(cpath, res);
  files.push_back(cpath);

  // residual of the fixed point at the requested times (skipped for a
  // diverged iteration, where the final iterate is meaningless)
  std::vector<std::vector<double>> rrows;
  double residual_max = 0.0;
  if (!res.no_contraction && res.eta.size() >= 2) {
    const double delta =
        config::get_number_or(raw, "picard.residual_delta", 1e-6);
    std::vector<double> rtimes{0.5 * (t0 + T_max)};
    if (config::find_path(raw, "picard.residual_times"))
      rtimes = config::get_vec(raw, "picard.residual_times");
    for (const double tq : rtimes) {
      const double r = perturbation_residual_at(res, W, *nl, tq, delta);
      rrows.push_back({tq, r});
      residual_max = std::max(residual_max, r);
    }
  }
  const std::string rpath = out + "/residuals.csv";
  io::write_csv(rpath, {"t", "residual_l2"}, rrows);
  files.push_back(rpath);

  double max_ratio = 0.0;
  for (const double r : res.ratios) max_ratio = std::max(max_ratio, r);
  json summary = {{"component_count", n_components},
                  {"iterations", res.iterations},
                  {"no_contraction", res.no_contraction},
                  {"ratios", res.ratios},
                  {"max_ratio_from_k2", max_ratio},
                  {"residual_max", residual_max},
                  {"h_sup_at_tmax", res.h_sup_at_tmax},
                  {"h_l2_at_tmax", res.h_l2_at_tmax},
                  {"tail_bound", res.tail_bound},
                  {"validation", validation_json(vr)}};
  return RunResult{0, summary};
}

// --------------------------------------------------------- kink train -----

RunResult run_kink_train(const ExperimentConfig& cfg, const std::string& out,
                         std::vector<std::string>& files) {
  const json& raw = cfg.raw;
  auto nl = config::make_nonlinearity(raw.at("nonlinearity"));
  const Grid grid = config::make_grid(raw.at("grid"));
  const EvolutionConfig ec = config::make_evolution(raw.at("evolution"));
  TrainSpec train = config::make_train(raw.at("train"), nl, grid);

  const ValidationReport vr = validate_kink_train_window(train);
  const BackgroundW W = make_background(std::move(train));

  const double t_start = config::get_number_or(raw, "evolution.t_start", 0.0);
  const double noise = config::get_number_or(raw, "noise_amplitude", 0.0);
  Field eta0(grid, t_start);
  if (noise > 0.0) {
    std::mt19937_64 rng(cfg.seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (auto& v : eta0.values) v += noise * cplx(gauss(rng), gauss(rng));
  }

  const Trajectory traj = evolve_perturbation(eta0, W, *nl, ec);

  std::vector<std::vector<double>> rows;
  double sup_h1 = 0.0, sup_grad = 0.0;
  for (std::size_t i = 0; i < traj.records.size(); ++i) {
    const MetricRecord& m = traj.records[i];
    const double l2 = m.l2_dist.value_or(0.0);
    const double h1 = m.h1_dist.value_or(0.0);
    const double grad = std::sqrt(std::max(h1 * h1 - l2 * l2, 0.0));
    rows.push_back({traj.times[i], l2, h1, grad, m.sup_norm});
    sup_h1 = std::max(sup_h1, h1);
    sup_grad = std::max(sup_grad, grad);
  }
  const std::string npath = out + "/eta_norms.csv";
  io::write_csv(npath, {"t", "l2", "h1", "grad_l2", "sup"}, rows);
  files.push_back(npath);

  const double final_h1 =
      rows.empty() ? kNaN : traj.records.back().h1_dist.value_or(kNaN);
  json summary = {{"sup_h1", sup_h1},
                  {"sup_grad", sup_grad},
                  {"final_h1", final_h1},
                  {"final_l2", traj.records.empty()
                                   ? kNaN
                                   : traj.records.back().l2_dist.value_or(kNaN)},
                  {"steps", traj.steps_taken},
                  {"validation", validation_json(vr)}};
  return RunResult{0, summary};
}

// -------------------------------------------------------------- verify ----

void write_verify_csv(const std::string& path,
                      const std::vector<CheckResult>& checks) {
  std::ofstream os(path, std::ios::trunc);
  if (!os) throw error("cannot open '" + path + "' for writing");
  os << "name,pass,value,threshold\n";
  for (const auto& c : checks)
    os << c.name << ',' << (c.pass ? 1 : 0) << ',' << io::csv_cell(c.value)
       << ',' << io::csv_cell(c.threshold) << '\n';
}

json checks_json(const std::vector<CheckResult>& checks) {
  json arr = json::array();
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.pass;
    arr.push_back({{"name", c.name},
                   {"result", c.pass ? "pass" : "fail"},
                   {"value", c.value},
                   {"threshold", c.threshold},
                   {"message", c.message}});
  }
  return {{"all_pass", all}, {"checks", arr}};
}

}  // namespace

std::vector<CheckResult> verify_suite(const std::string& out_dir) {
  std::filesystem::create_directories(out_dir);
  std::vector<CheckResult> checks;
  auto add = [&checks](const std::string& name, double value, double threshold,
                       bool pass, const std::string& msg = "") {
    checks.push_back(CheckResult{name, pass, value, threshold, msg});
  };
  auto guard = [&checks](const std::string& block, auto&& body) {
    try {
      body();
    } catch (const std::exception& e) {
      checks.push_back(CheckResult{block, false, kNaN, 0.0, e.what()});
    }
  };

  const auto nl2 =
      std::make_shared<Nonlinearity>(Nonlinearity::power(2.0, 1));

  guard("ground_states", [&] {
    const Profile cf = ground_state_power_1d(2.0, 1.0, Grid::line(60.0, 2048));
    add("ground_state_closed_form_residual", cf.residual, 1e-10,
        cf.residual < 1e-10);
    const Profile sh = ground_state_shoot(*nl2, 1.0, 1, RadialGrid{16.0, 2048});
    double dev = 0.0;
    for (int i = 0; i <= 160; ++i) {
      const double x = 0.05 * i;
      dev = std::max(dev, std::abs(cf.value(x) - sh.value(x)));
    }
    add("ground_state_shooting_agreement", dev, 1e-8, dev < 1e-8);
  });

  guard("kink_family", [&] {
    const auto dp = Nonlinearity::double_power(1.0, 2.0, 1);
    const KinkConstants kc = kink_constants(dp);
    const double dev = std::max(std::abs(kc.omega0 - 2.0 / 9.0),
                                std::abs(kc.b - 2.0 / 3.0));
    add("kink_constants_double_power", dev, 1e-10, dev < 1e-10);
    const Profile k = kink_profile(dp, kc, Grid::line(80.0, 4096));
    add("kink_profile_residual", k.residual, 1e-8, k.residual < 1e-8);
    double gdev = 0.0;
    for (const double c : {0.0, 0.5, 1.0}) {
      const Profile g = gp_kink(c, Grid::line(60.0, 2048));
      for (const double x : {-30.0, 30.0})
        gdev = std::max(
            gdev, std::abs(std::abs(cplx(g.value(x), g.imag_constant)) - 1.0));
    }
    add("gp_kink_modulus_limits", gdev, 1e-10, gdev < 1e-10);
  });

  guard("soliton_evolution", [&] {
    const auto prof = std::make_shared<Profile>(
        ground_state_power_1d(2.0, 1.0, Grid::line(64.0, 2048)));
    const WaveSpec w = boost_soliton(prof, Vec{2.0, 0.0}, Vec{}, 0.0);
    const Grid grid = Grid::line(40.0, 1024);
    const Field u0 = realize(w, grid, 0.0);
    EvolutionConfig ec;
    ec.dt = 2e-3;
    ec.t_end = 1.0;
    ec.snapshot_stride = 50;
    const Trajectory traj = evolve(u0, *nl2, ec);
    const Field ref = realize(w, grid, 1.0);
    const double err = distances(traj.snapshots.back(), ref).l2;
    add("soliton_propagation_l2_error", err, 1e-5, err < 1e-5);

    const MetricRecord& m0 = traj.records.front();
    const MetricRecord& mT = traj.records.back();
    const double mdrift = std::abs(mT.mass - m0.mass) / m0.mass;
    add("mass_conservation", mdrift, 1e-12, mdrift < 1e-12);
    const double edrift =
        std::abs(mT.energy - m0.energy) / std::abs(m0.energy);
    add("energy_conservation", edrift, 1e-6, edrift < 1e-6);
    const double pdrift = std::abs(mT.momentum.x - m0.momentum.x);
    add("momentum_conservation", pdrift, 1e-9, pdrift < 1e-9);
    const double pid = std::abs(m0.momentum.x - 2.0 * m0.mass);
    add("boost_momentum_identity", pid, 1e-9, pid < 1e-9);

    const auto pairs = admissible_pairs(1, 4);
    const auto table = strichartz_suffix_table(traj.snapshots, traj.times, pairs);
    double viol = 0.0;
    for (std::size_t i = 0; i + 1 < table.size(); ++i)
      for (std::size_t p = 0; p < pairs.size(); ++p)
        viol = std::max(viol, table[i + 1][p] - table[i][p]);
    add("strichartz_suffix_monotone", viol, 1e-12, viol <= 1e-12);

    EvolutionConfig back;
    back.dt = -2e-3;
    back.t_end = 0.0;
    back.snapshot_stride = 1u << 30;
    back.record_metrics = false;
    const Trajectory rt = evolve(traj.snapshots.back(), *nl2, back);
    const double rerr = distances(rt.snapshots.back(), u0).l2;
    add("time_reversal_roundtrip", rerr, 1e-10, rerr < 1e-10);
  });

  guard("free_propagator", [&] {
    const Grid grid = Grid::line(80.0, 2048);
    Field u0(grid, 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double x = grid.coord(0, i);
      u0.values[i] = std::exp(-x * x);
    }
    const double n0 = l2_norm(u0);
    const Field u1 = free_propagate(u0, 0.7);
    add("free_propagator_unitarity", std::abs(l2_norm(u1) - n0), 1e-13,
        std::abs(l2_norm(u1) - n0) < 1e-13);
    const Field uh = free_propagate(u0, 0.5);
    double sup = 0.0;
    for (const auto& v : uh.values) sup = std::max(sup, std::abs(v));
    const double expected = std::pow(1.0 + 16.0 * 0.25, -0.25);
    add("gaussian_dispersive_decay", std::abs(sup - expected), 1e-8,
        std::abs(sup - expected) < 1e-8);
  });

  guard("self_convergence", [&] {
    const auto prof = std::make_shared<Profile>(
        ground_state_power_1d(2.0, 1.0, Grid::line(64.0, 2048)));
    const WaveSpec w = boost_soliton(prof, Vec{1.0, 0.0}, Vec{}, 0.0);
    const Grid grid = Grid::line(40.0, 512);
    const Field u0 = realize(w, grid, 0.0);
    auto run_to = [&](double dt) {
      EvolutionConfig ec;
      ec.dt = dt;
      ec.t_end = 0.5;
      ec.snapshot_stride = 1u << 30;
      ec.record_metrics = false;
      return evolve(u0, *nl2, ec).snapshots.back();
    };
    const Field ref = run_to(5e-4);
    const double e1 = distances(run_to(4e-3), ref).l2;
    const double e2 = distances(run_to(2e-3), ref).l2;
    const double ratio = e1 / e2;
    add("self_convergence_ratio", ratio, 4.5, ratio >= 3.5 && ratio <= 4.5,
        "expected in [3.5, 4.5]");
  });

  guard("train_generator", [&] {
    const std::size_t N = truncate_train(1.0, 0.25, 2.0, 1, 2.0, 1e-3);
    const double q = std::pow(0.25, 0.25);
    auto tail = [q](std::size_t n) {
      double s = 0.0;
      for (std::size_t j = 0; j < 400; ++j) s += std::pow(q, double(n + j));
      return s;
    };
    add("truncate_train_tail", double(N), 24.0,
        N == 24 && tail(N) < 1e-3 && tail(N - 1) >= 1e-3,
        "direct tail summation brackets the cutoff");

    const TrainParams tp = generate_train_params(1.0, 0.25, 20.0, 6);
    std::vector<WaveSpec> comps;
    for (std::size_t j = 0; j < tp.omegas.size(); ++j) {
      auto p = config::make_soliton_profile(nl2, tp.omegas[j], 1);
      comps.push_back(
          boost_soliton(p, Vec{tp.velocities[j], 0.0}, Vec{}, 0.0));
    }
    const TrainSpec tr = make_train(nl2, std::move(comps));
    const double wdev = std::abs(tr.derived.v_star_weighted - 20.0);
    add("generator_weighted_separation", wdev, 1e-9, wdev < 1e-9);
    // sum_j omega_j^{1/4} = sum_{j=0..5} 2^{-j/2}, geometric
    const double geom =
        (1.0 - std::pow(2.0, -3.0)) / (1.0 - std::pow(2.0, -0.5));
    const double idev = std::abs(tr.derived.integrability_sum - geom);
    add("integrability_sum_geometric", idev, 1e-12, idev < 1e-12);
  });

  guard("metrics_properties", [&] {
    double adev = 0.0;
    for (const int d : {1, 2})
      for (const auto& pr : admissible_pairs(d, 5)) {
        const double lhs = (std::isinf(pr.q) ? 0.0 : 2.0 / pr.q) +
                           (std::isinf(pr.r) ? 0.0 : d / pr.r);
        adev = std::max(adev, std::abs(lhs - 0.5 * d));
      }
    add("admissible_pairs_identity", adev, 1e-12, adev < 1e-12);

    std::vector<double> ts, ys;
    for (int i = 0; i <= 10; ++i) {
      ts.push_back(0.2 * i);
      ys.push_back(3.0 * std::exp(-2.0 * 0.2 * i));
    }
    const FitResult fr = fit_exponential_rate(ts, ys);
    const double fdev =
        std::max(std::abs(fr.rate - 2.0), std::abs(fr.r_squared - 1.0));
    add("fit_rate_recovery", fdev, 1e-10, fdev < 1e-10);
  });

  guard("perturbation_source", [&] {
    const auto prof = std::make_shared<Profile>(
        ground_state_power_1d(2.0, 1.0, Grid::line(64.0, 2048)));
    const Grid grid = Grid::line(40.0, 512);
    {
      const WaveSpec w = boost_soliton(prof, Vec{3.0, 0.0}, Vec{}, 0.0);
      const BackgroundW W = make_background(make_train(nl2, {w}));
      const double hn = l2_norm(source_term(W, 0.3, grid));
      add("single_component_source_zero", hn, 0.0, hn == 0.0,
          "coupling must vanish identically for one component");
    }
    auto coupling = [&](double sep) {
      const WaveSpec a =
          boost_soliton(prof, Vec{}, Vec{-0.5 * sep, 0.0}, 0.0);
      const WaveSpec b = boost_soliton(prof, Vec{}, Vec{0.5 * sep, 0.0}, 0.0);
      const BackgroundW W = make_background(make_train(nl2, {a, b}));
      return l2_norm(source_term(W, 0.0, grid));
    };
    const double near = coupling(8.0), far = coupling(16.0);
    add("source_decays_with_separation", far / near, 1.0,
        far < near && near > 0.0);
  });

  guard("file_roundtrip", [&] {
    const Profile p = ground_state_power_1d(3.0, 0.5, Grid::line(80.0, 1024));
    const std::string ppath = out_dir + "/verify_profile.nlsp";
    io::write_profile(ppath, p);
    const io::ProfileFileData rd = io::read_profile(ppath);
    double dev = std::abs(rd.omega - p.omega) +
                 std::abs(rd.origin - p.samples.origin) +
                 std::abs(rd.spacing - p.samples.spacing);
    if (rd.kind != io::ProfileFileKind::ground_state || rd.d != 1 ||
        rd.samples.size() != p.samples.value.size()) {
      dev = 1.0;
    } else {
      for (std::size_t i = 0; i < rd.samples.size(); ++i)
        if (rd.samples[i].real() != p.samples.value[i]) dev = 1.0;
    }
    add("profile_file_roundtrip", dev, 0.0, dev == 0.0);

    const Grid g = Grid::line(10.0, 64);
    Field f(g, 0.75);
    for (std::size_t i = 0; i < g.size(); ++i)
      f.values[i] = cplx(std::sin(0.1 * i), std::cos(0.2 * i));
    const std::string fpath = out_dir + "/verify_field.nlsf";
    io::write_field(fpath, f);
    const Field f2 = io::read_field(fpath);
    double fdev = (f2.grid == g && f2.time_tag == 0.75) ? 0.0 : 1.0;
    for (std::size_t i = 0; i < g.size(); ++i)
      if (f2.values[i] != f.values[i]) fdev = 1.0;
    add("field_file_roundtrip", fdev, 0.0, fdev == 0.0);
  });

  guard("evolve_determinism", [&] {
    const auto prof = std::make_shared<Profile>(
        ground_state_power_1d(2.0, 1.0, Grid::line(64.0, 2048)));
    const WaveSpec w = boost_soliton(prof, Vec{1.0, 0.0}, Vec{}, 0.0);
    const Grid grid = Grid::line(40.0, 512);
    const Field u0 = realize(w, grid, 0.0);
    EvolutionConfig ec;
    ec.dt = 2e-3;
    ec.t_end = 0.2;
    ec.snapshot_stride = 1u << 30;
    ec.record_metrics = false;
    const Field a = evolve(u0, *nl2, ec).snapshots.back();
    const Field b = evolve(u0, *nl2, ec).snapshots.back();
    double dev = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
      if (a.values[i] != b.values[i]) dev = 1.0;
    add("evolve_determinism", dev, 0.0, dev == 0.0);
  });

  write_verify_csv(out_dir + "/verify_results.csv", checks);
  return checks;
}

json default_verify_config() {
  return json{{"experiment", "verify"}, {"seed", 0}};
}

RunResult run_experiment(const ExperimentConfig& cfg,
                         const std::string& out_dir, unsigned threads) {
  (void)threads;  // experiments are single-run; sweeps own the thread budget
  std::filesystem::create_directories(out_dir);
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> files;
  RunResult r;
  switch (cfg.experiment) {
    case config::ExperimentKind::profile:
      r = run_profile(cfg, out_dir, files);
      break;
    case config::ExperimentKind::evolve:
      r = run_evolve(cfg, out_dir, files);
      break;
    case config::ExperimentKind::multi_soliton_backward:
      r = run_backward(cfg, out_dir, files);
      break;
    case config::ExperimentKind::infinite_train_picard:
      r = run_picard(cfg, out_dir, files);
      break;
    case config::ExperimentKind::kink_train:
      r = run_kink_train(cfg, out_dir, files);
      break;
    case config::ExperimentKind::verify: {
      const auto checks = verify_suite(out_dir);
      r.summary = checks_json(checks);
      r.exit_code = r.summary.at("all_pass").get<bool>() ? 0 : 1;
      files.push_back(out_dir + "/verify_results.csv");
      break;
    }
  }
  const std::string spath = out_dir + "/summary.json";
  io::write_json(spath, r.summary);
  files.push_back(spath);
  io::write_manifest(out_dir, cfg.raw, seconds_since(t0), files);
  return r;
}

RunResult run_sweep(const ExperimentConfig& cfg, const std::string& param,
                    const std::vector<double>& values,
                    const std::string& out_dir, unsigned threads) {
  if (values.empty()) throw config_error("values", "sweep needs values");
  std::filesystem::create_directories(out_dir);
  const auto t0 = std::chrono::steady_clock::now();

  struct Row {
    double value = 0.0;
    bool ok = false;
    std::string error;
    json summary;
  };
  std::vector<Row> rows(values.size());

  auto work = [&](std::size_t i) {
    Row& row = rows[i];
    row.value = values[i];
    try {
      json j = cfg.raw;
      config::set_by_path(j, param, values[i]);
      const ExperimentConfig sub = config::parse_config(j);
      char name[32];
      std::snprintf(name, sizeof name, "row_%03zu", i);
      const RunResult rr = run_experiment(sub, out_dir + "/" + name, 1);
      row.summary = rr.summary;
      row.ok = rr.exit_code == 0;
      if (!row.ok) row.error = "exit code " + std::to_string(rr.exit_code);
    } catch (const std::exception& e) {
      row.ok = false;
      row.error = e.what();
    }
  };

  const std::size_t workers =
      std::min<std::size_t>(std::max(1u, threads), values.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < values.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < workers; ++t)
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < values.size(); i = next++) work(i);
      });
    for (auto& th : pool) th.join();
  }

  // union of numeric scalar summary keys across successful rows, sorted
  std::set<std::string> keys;
  for (const Row& row : rows)
    if (row.ok)
      for (const auto& [k, v] : row.summary.items())
        if (v.is_number()) keys.insert(k);

  std::vector<std::string> header{param, "ok"};
  header.insert(header.end(), keys.begin(), keys.end());
  std::vector<std::vector<double>> table;
  json detail = json::array();
  bool all_ok = true;
  for (const Row& row : rows) {
    std::vector<double> line{row.value, row.ok ? 1.0 : 0.0};
    for (const std::string& k : keys) {
      const auto it = row.ok ? row.summary.find(k) : row.summary.end();
      line.push_back(it != row.summary.end() && it->is_number()
                         ? it->get<double>()
                         : kNaN);
    }
    table.push_back(std::move(line));
    detail.push_back({{"value", row.value},
                      {"ok", row.ok},
                      {"error", row.error},
                      {"summary", row.summary}});
    all_ok = all_ok && row.ok;
  }
  const std::string cpath = out_dir + "/sweep.csv";
  io::write_csv(cpath, header, table);
  const std::string jpath = out_dir + "/sweep_rows.json";
  io::write_json(jpath, json{{"param", param}, {"rows", detail}});
  io::write_manifest(out_dir, cfg.raw, seconds_since(t0), {cpath, jpath});

  RunResult r;
  r.exit_code = all_ok ? 0 : 3;
  r.summary = json{{"param", param}, {"all_ok", all_ok}, {"rows", detail}};
  return r;
}

}  // namespace experiments
}  // namespace nlslab
