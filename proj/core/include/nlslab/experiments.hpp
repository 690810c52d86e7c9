#pragma once

#include <string>
#include <vector>

#include "nlslab/config.hpp"

namespace nlslab {
namespace experiments {

// Exit codes shared by the library-level runners and the CLI:
// 0 pass, 1 acceptance failure (verify), 2 config error, 3 runtime error.
struct RunResult {
  int exit_code = 0;
  config::json summary;
};

struct CheckResult {
  std::string name;
  bool pass = false;
  double value = 0.0;      // measured quantity
  double threshold = 0.0;  // bound it was compared against
  std::string message;     // failure context (exceptions, etc.)
};

// Dispatch one experiment into out_dir; writes the experiment's artifacts
// plus manifest.json (always last). Throws config_error / nlslab errors;
// the verify experiment aggregates its failures into exit_code 1 instead.
RunResult run_experiment(const config::ExperimentConfig& cfg,
                         const std::string& out_dir, unsigned threads = 1);

// Re-run the experiment once per value of the swept scalar; one summary row
// per value in sweep.csv. Row failures are recorded and do not stop the
// sweep. Rows may run concurrently up to the thread budget.
RunResult run_sweep(const config::ExperimentConfig& cfg,
                    const std::string& param,
                    const std::vector<double>& values,
                    const std::string& out_dir, unsigned threads = 1);

// The fast property suite behind `nlslab verify`; every check runs (no
// fail-fast). Writes verify_results.csv and summary.json into out_dir.
std::vector<CheckResult> verify_suite(const std::string& out_dir);

// Built-in config used when `nlslab verify` is given no file.
config::json default_verify_config();

}  // namespace experiments
}  // namespace nlslab
