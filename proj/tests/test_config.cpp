#include <doctest.h>

#include "nlslab/config.hpp"
#include "nlslab/experiments.hpp"

using namespace nlslab;
using nlslab::config::json;

namespace {

json minimal(const char* experiment) {
  json j;
  j["experiment"] = experiment;
  j["nonlinearity"] = {{"kind", "power"}, {"alpha", 2.0}};
  j["grid"] = {{"d", 1}, {"length", 40.0}, {"count", 256}};
  return j;
}

}  // namespace

TEST_CASE("parse accepts a bare verify document") {
  json j;
  j["experiment"] = "verify";
  const auto cfg = config::parse_config(j);
  CHECK(cfg.experiment == config::ExperimentKind::verify);
  CHECK(cfg.out_dir == "out");
  CHECK(cfg.seed == 0);

  j["out_dir"] = "elsewhere";
  j["seed"] = 7;
  const auto cfg2 = config::parse_config(j);
  CHECK(cfg2.out_dir == "elsewhere");
  CHECK(cfg2.seed == 7);
}

TEST_CASE("parse reports the dotted path of a missing block") {
  json j = minimal("profile");
  j.erase("grid");
  try {
    config::parse_config(j);
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(e.field_path == "grid");
  }

  json bad;
  bad["experiment"] = "not_an_experiment";
  try {
    config::parse_config(bad);
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(e.field_path == "experiment");
  }
}

TEST_CASE("per-experiment block requirements") {
  // profile: nonlinearity + grid suffice
  CHECK_NOTHROW(config::parse_config(minimal("profile")));

  // evolve additionally needs evolution and train
  json ev = minimal("evolve");
  CHECK_THROWS_AS(config::parse_config(ev), config_error);
  ev["evolution"] = {{"dt", 1e-3}, {"t_end", 1.0}};
  CHECK_THROWS_AS(config::parse_config(ev), config_error);
  ev["train"] = {{"components", json::array({json{{"omega", 1.0}}})}};
  CHECK_NOTHROW(config::parse_config(ev));

  // the backward scheme adds its own block
  json bw = ev;
  bw["experiment"] = "multi_soliton_backward";
  CHECK_THROWS_AS(config::parse_config(bw), config_error);
  bw["scheme"] = {{"horizons", json::array({2.0, 3.0})}};
  CHECK_NOTHROW(config::parse_config(bw));

  // picard wants its iteration block instead of evolution
  json pc = minimal("infinite_train_picard");
  pc["train"] = ev["train"];
  CHECK_THROWS_AS(config::parse_config(pc), config_error);
  pc["picard"] = {{"t0", 0.0}, {"T_max", 1.0}, {"dt", 1e-2}};
  CHECK_NOTHROW(config::parse_config(pc));

  json kt = ev;
  kt["experiment"] = "kink_train";
  CHECK_NOTHROW(config::parse_config(kt));
}

TEST_CASE("dotted paths index into arrays") {
  json j = minimal("profile");
  j["train"] = {{"components", json::array({json{{"omega", 1.0}, {"v", 0.0}},
                                            json{{"omega", 2.0}, {"v", 3.0}}})}};
  const json* p = config::find_path(j, "train.components.1.omega");
  REQUIRE(p != nullptr);
  CHECK(p->get<double>() == 2.0);
  CHECK(config::find_path(j, "train.components.2.omega") == nullptr);
  CHECK(config::find_path(j, "no.such.path") == nullptr);
  CHECK(config::get_number(j, "train.components.1.v") == 3.0);
  CHECK(config::get_number_or(j, "train.components.9.v", -1.0) == -1.0);
}

TEST_CASE("typed getters validate json types") {
  json j = minimal("profile");
  j["label"] = "abc";
  CHECK(config::get_string(j, "label") == "abc");
  CHECK_THROWS_AS(config::get_number(j, "label"), config_error);
  CHECK_THROWS_AS(config::get_number(j, "absent"), config_error);
  CHECK_THROWS_AS(config::get_string(j, "grid.d"), config_error);
  CHECK(config::get_int(j, "grid.count") == 256);
  CHECK(config::get_bool_or(j, "grid.missing_flag", true));
  const auto v = config::get_vec(j, "grid.length");  // scalar promotes
  REQUIRE(v.size() == 1);
  CHECK(v[0] == 40.0);
}

TEST_CASE("sweep overwrite resolves scalars only") {
  json j = minimal("profile");
  j["train"] = {{"components", json::array({json{{"omega", 1.0}}})}};
  config::set_by_path(j, "train.components.0.omega", 2.5);
  CHECK(config::get_number(j, "train.components.0.omega") == 2.5);

  auto message_of = [&](const std::string& path) {
    try {
      config::set_by_path(j, path, 1.0);
    } catch (const config_error& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message_of("train.components.0.missing")
            .find("sweep path does not resolve") != std::string::npos);
  CHECK(message_of("train.components.4.omega")
            .find("sweep index out of range") != std::string::npos);
  CHECK(message_of("train.components")
            .find("sweep target is not a scalar") != std::string::npos);
}

TEST_CASE("nonlinearity block builder covers the four kinds") {
  auto nl = config::make_nonlinearity(json{{"kind", "power"}, {"alpha", 2.0}});
  CHECK(nl->exponents().alpha1 == 2.0);

  nl = config::make_nonlinearity(
      json{{"kind", "double_power"}, {"alpha", 1.0}, {"beta", 2.0}});
  CHECK(nl->exponents().alpha2 == 2.0);

  nl = config::make_nonlinearity(json{{"kind", "gross_pitaevskii"}});
  CHECK(nl->G(2.0) == doctest::Approx(0.0).epsilon(1e-14));

  nl = config::make_nonlinearity(json{{"kind", "tabulated"},
                                      {"s_origin", 0.0},
                                      {"s_spacing", 0.5},
                                      {"g_samples", {0.0, 0.5, 1.0, 1.5, 2.0}}});
  CHECK(nl->g(1.0) == doctest::Approx(1.0));

  try {
    config::make_nonlinearity(json{{"kind", "cubic_quintic"}});
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(e.field_path == "nonlinearity.kind");
  }
}

TEST_CASE("grid block builder") {
  const Grid g1 =
      config::make_grid(json{{"d", 1}, {"length", 40.0}, {"count", 256}});
  CHECK(g1.d == 1);
  CHECK(g1.lengths[0] == 40.0);
  CHECK(g1.counts[0] == 256);

  const Grid g2 = config::make_grid(
      json{{"d", 2}, {"lengths", {6.0, 4.0}}, {"counts", {32, 16}}});
  CHECK(g2.d == 2);
  CHECK(g2.counts[1] == 16);

  try {
    config::make_grid(json{{"d", 3}, {"length", 1.0}, {"count", 8}});
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(e.field_path == "grid.d");
  }
  try {
    config::make_grid(json{{"d", 1}, {"length", 40.0}, {"count", 100}});
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(e.field_path == "grid");  // power-of-two requirement
  }
}

TEST_CASE("evolution block builder") {
  const auto cfg = config::make_evolution(
      json{{"dt", 1e-3}, {"t_end", 2.0}, {"snapshot_stride", 10}});
  CHECK(cfg.dt == 1e-3);
  CHECK(cfg.t_end == 2.0);
  CHECK(cfg.snapshot_stride == 10);
  CHECK(cfg.record_metrics);  // default on

  try {
    config::make_evolution(json{{"dt", 0.0}, {"t_end", 1.0}});
    FAIL("expected config_error");
  } catch (const config_error& e) {
    CHECK(e.field_path == "evolution.dt");
  }
}

TEST_CASE("train block builder: explicit components and generator") {
  const auto nl =
      config::make_nonlinearity(json{{"kind", "power"}, {"alpha", 2.0}});
  const Grid g = Grid::line(64.0, 512);

  const json explicit_block = {
      {"components", json::array({json{{"omega", 1.0}, {"v", 0.0}},
                                  json{{"omega", 0.64}, {"v", 5.0}}})},
      {"r0", 2.0}};
  const TrainSpec t = config::make_train(explicit_block, nl, g);
  REQUIRE(t.components.size() == 2);
  CHECK(t.components[1].omega == 0.64);
  CHECK(t.components[1].v.x == 5.0);
  CHECK(!t.left_kink.has_value());

  // geometric generator with a tail cut chooses the count itself
  const json gen_block = {{"generator", json{{"omega1", 1.0},
                                             {"ratio", 0.25},
                                             {"v_sharp", 20.0},
                                             {"eps_tail", 1e-3}}},
                          {"r0", 2.0}};
  const TrainSpec gt = config::make_train(gen_block, nl, g);
  CHECK(gt.components.size() == 24);
  CHECK(gt.derived.v_star_weighted == doctest::Approx(20.0));

  const json gen_count = {{"generator", json{{"omega1", 1.0},
                                             {"ratio", 0.25},
                                             {"v_sharp", 20.0},
                                             {"count", 4}}}};
  CHECK(config::make_train(gen_count, nl, g).components.size() == 4);
}

TEST_CASE("built-in verify document parses") {
  const json j = experiments::default_verify_config();
  const auto cfg = config::parse_config(j);
  CHECK(cfg.experiment == config::ExperimentKind::verify);
}
