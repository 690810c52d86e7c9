// nlslab CLI: config-driven experiment runner.
//   nlslab run <config.json> [--out dir] [--threads n]
//   nlslab sweep <config.json> --param <dotted.path> --values a,b,c
//   nlslab verify [config.json]
// Exit codes: 0 pass, 1 acceptance failure, 2 config error, 3 runtime error.

#include <cctype>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nlslab/config.hpp"
#include "nlslab/errors.hpp"
#include "nlslab/experiments.hpp"
#include "nlslab/version.hpp"

namespace {

std::vector<double> parse_values(const std::string& csv) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= csv.size()) {
    const std::size_t comma = csv.find(',', start);
    const std::string tok =
        csv.substr(start, comma == std::string::npos ? comma : comma - start);
    try {
      std::size_t used = 0;
      const double v = std::stod(tok, &used);
      while (used < tok.size() && std::isspace(static_cast<unsigned char>(tok[used])))
        ++used;
      if (used != tok.size()) throw std::invalid_argument(tok);
      out.push_back(v);
    } catch (const std::exception&) {
      throw nlslab::config_error("values", "not a number: '" + tok + "'");
    }
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return out;
}

unsigned effective_threads(unsigned flag) {
  if (flag > 0) return flag;
  if (const char* env = std::getenv("NLSLAB_THREADS")) {
    const long n = std::strtol(env, nullptr, 10);
    if (n > 0) return static_cast<unsigned>(n);
  }
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nlslab: multi-soliton, soliton-train and kink-train "
               "experiments for the nonlinear Schrodinger equation"};
  app.set_version_flag("--version", std::string(nlslab::version_string));
  app.require_subcommand(1);

  std::string config_path, out_dir, param, values_csv;
  unsigned threads = 0;

  CLI::App* run = app.add_subcommand("run", "run one experiment from a config");
  run->add_option("config", config_path, "JSON config file")->required();

  CLI::App* sweep =
      app.add_subcommand("sweep", "rerun an experiment over a swept scalar");
  sweep->add_option("config", config_path, "JSON config file")->required();
  sweep->add_option("--param", param, "dotted path of the swept scalar")
      ->required();
  sweep->add_option("--values", values_csv, "comma-separated values")
      ->required();

  CLI::App* verify =
      app.add_subcommand("verify", "run the property suite (bundled config "
                         "when none is given)");
  verify->add_option("config", config_path, "JSON config file");

  for (CLI::App* sub : {run, sweep, verify}) {
    sub->add_option("--out", out_dir, "output directory (overrides config)");
    sub->add_option("--threads", threads,
                    "worker thread budget (or NLSLAB_THREADS)");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    nlslab::config::ExperimentConfig cfg =
        config_path.empty()
            ? nlslab::config::parse_config(
                  nlslab::experiments::default_verify_config())
            : nlslab::config::load_config(config_path);
    if (verify->parsed()) cfg.experiment = nlslab::config::ExperimentKind::verify;
    const std::string out = out_dir.empty() ? cfg.out_dir : out_dir;
    const unsigned n_threads = effective_threads(threads);

    if (sweep->parsed()) {
      const auto values = parse_values(values_csv);
      const auto rr =
          nlslab::experiments::run_sweep(cfg, param, values, out, n_threads);
      std::cout << "sweep " << param << " over " << values.size()
                << " values: " << (rr.exit_code == 0 ? "ok" : "had failures")
                << "; artifacts in " << out << "\n";
      return rr.exit_code;
    }

    const auto rr = nlslab::experiments::run_experiment(cfg, out, n_threads);
    if (cfg.experiment == nlslab::config::ExperimentKind::verify) {
      for (const auto& c : rr.summary.at("checks")) {
        std::cout << (c.at("result").get<std::string>() == "pass" ? "pass  "
                                                                  : "FAIL  ")
                  << c.at("name").get<std::string>() << "\n";
      }
      std::cout << (rr.exit_code == 0 ? "all checks passed"
                                      : "some checks FAILED")
                << "; artifacts in " << out << "\n";
    } else {
      std::cout << nlslab::config::to_string(cfg.experiment)
                << ": done; artifacts in " << out << "\n";
    }
    return rr.exit_code;
  } catch (const nlslab::config_error& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "runtime error: " << e.what() << "\n";
    return 3;
  }
}
