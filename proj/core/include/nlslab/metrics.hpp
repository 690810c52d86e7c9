#pragma once

#include <optional>
#include <vector>

#include "nlslab/field.hpp"
#include "nlslab/nonlinearity.hpp"

namespace nlslab {

struct MetricRecord {
  double time = 0.0;
  double mass = 0.0;    // ||u||_2^2 / 2
  double energy = 0.0;  // ||grad u||_2^2 / 2 - int F(|u|)
  Vec momentum{};       // Im int conj(u) grad(u)
  std::optional<double> l2_dist;
  std::optional<double> h1_dist;
  double sup_norm = 0.0;
};

struct Distances {
  double l2 = 0.0;
  double h1 = 0.0;
  double sup = 0.0;
};

// Exponents with 2/q + d/r = d/2. Forbidden endpoint (d,q,r) = (2,2,inf) is
// kept out by sampling q strictly above 2.1 in dimension two.
struct AdmissiblePair {
  double q = 0.0;
  double r = 0.0;
};

MetricRecord conserved(const Field& u, const Nonlinearity& nl);

Distances distances(const Field& u, const Field& ref);

// L^r space norm (plain-sum quadrature; r = inf as the sup norm).
double lp_norm(const Field& u, double r);

double l2_norm(const Field& u);
double h1_norm(const Field& u);  // sqrt(||u||_2^2 + ||grad u||_2^2), spectral

// Anchor (inf, 2) plus count-1 pairs sampled along the admissibility line.
std::vector<AdmissiblePair> admissible_pairs(int d, std::size_t count = 5);

// Max over the supplied finite pair set of the discrete L^q_t L^r_x norm
// (time trapezoid); a lower bound of the true supremum over all pairs.
double strichartz_norm(const std::vector<Field>& snapshots,
                       const std::vector<double>& times,
                       const std::vector<AdmissiblePair>& pairs);

// table[i][p]: discrete L^q_t L^r_x norm of pair p over the suffix window
// [times[i], times.back()]. Row i is nonincreasing in i for each p.
std::vector<std::vector<double>> strichartz_suffix_table(
    const std::vector<Field>& snapshots, const std::vector<double>& times,
    const std::vector<AdmissiblePair>& pairs);

struct FitResult {
  double rate = 0.0;       // negated log-slope; positive = decay
  double intercept = 0.0;  // fitted log-amplitude at t = 0
  double r_squared = 0.0;
};

// Least squares on log(values) vs times; at least 3 points, values positive.
FitResult fit_exponential_rate(const std::vector<double>& times,
                               const std::vector<double>& values);

// Scalar coercivity diagnostic S = E + (omega0 + |v0|^2/4) M + v0 . P.
double action(const MetricRecord& m, double omega0, Vec v0);

}  // namespace nlslab
