#pragma once

#include <stdexcept>
#include <string>

namespace nlslab {

// Every failure mode gets a named type so callers (and the CLI exit-code
// mapping) can distinguish config mistakes from runtime breakdowns.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid experiment configuration; carries the dotted path of the offending
// field, e.g. "grid.counts[0]".
struct config_error : error {
  std::string field_path;
  config_error(std::string path, const std::string& what)
      : error(path.empty() ? what : path + ": " + what),
        field_path(std::move(path)) {}
};

// A precondition on a numeric parameter failed (not a config-file issue).
struct parameter_error : error {
  using error::error;
};

// Argument outside the mathematical domain of an operation (negative s in an
// integral bound, tabulated value outside the table range, ...).
struct domain_error : error {
  using error::error;
};

struct grid_mismatch : error {
  using error::error;
};

// A localized component does not fit the periodic box: its boundary amplitude
// exceeds the stated fraction of its peak.
struct truncation_error : error {
  double boundary_magnitude;
  truncation_error(const std::string& what, double mag)
      : error(what), boundary_magnitude(mag) {}
};

// The system {h(b)=0, integral of h vanishes, h'(b)>0} has no admissible root.
struct no_kink : error {
  using error::error;
};

// Shooting could not bracket a nodeless decaying solution (reported as
// "not found", never as a nonexistence proof).
struct no_ground_state : error {
  using error::error;
};

struct blowup_in_shooting : error {
  using error::error;
};

// |c| >= sqrt(2): at or above the speed of sound no kink of the
// Gross-Pitaevskii family exists.
struct speed_above_sound : error {
  using error::error;
};

// The first integral H(phi) went negative while integrating a kink profile:
// the supplied constants are numerically inconsistent.
struct first_integral_negative : error {
  using error::error;
};

// The localized unknown grew a tail at the periodic boundary beyond
// 1e-6 of its peak; the box is too small for the experiment horizon.
struct boundary_contamination : error {
  using error::error;
};

struct insufficient_data : error {
  using error::error;
};

// Sup-norm exceeded the blowup threshold or values went non-finite.
struct numerical_blowup : error {
  double last_good_time;
  numerical_blowup(const std::string& what, double t)
      : error(what), last_good_time(t) {}
};

}  // namespace nlslab
