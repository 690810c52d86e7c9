#include "nlslab/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlslab/errors.hpp"
#include "nlslab/fft.hpp"
#include "nlslab/numerics.hpp"

namespace nlslab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// sum_k |k|^2 |u_hat_k|^2 and the spectral momentum, shared workspace
struct SpectralSums {
  double kinetic = 0.0;  // int |grad u|^2
  Vec momentum{};        // Im int conj(u) grad u
};

SpectralSums spectral_sums(const Field& u) {
  const Grid& g = u.grid;
  const std::size_t n = g.size();
  std::vector<cplx> uh(n);
  fft::forward(g, u.values.data(), uh.data());

  std::vector<double> kin(n);
  std::vector<double> mom_x(n), mom_y(n);
  const std::size_t ny = g.d == 2 ? g.counts[1] : 1;
  for (std::size_t idx = 0; idx < n; ++idx) {
    const double kx = g.wavenumber(0, idx / ny);
    const double ky = g.d == 2 ? g.wavenumber(1, idx % ny) : 0.0;
    const double p = std::norm(uh[idx]);
    kin[idx] = (kx * kx + ky * ky) * p;
    mom_x[idx] = kx * p;
    mom_y[idx] = ky * p;
  }
  // Parseval: sum_x |.|^2 = (1/n) sum_k |hat|^2; integral adds cell volume
  const double scale = g.cell() / static_cast<double>(n);
  SpectralSums s;
  s.kinetic = scale * numerics::pairwise_sum(kin);
  // Im int conj(u) grad u = (1/n) sum_k k |u_hat|^2 * cell
  s.momentum = Vec{scale * numerics::pairwise_sum(mom_x),
                   scale * numerics::pairwise_sum(mom_y)};
  return s;
}

}  // namespace

MetricRecord conserved(const Field& u, const Nonlinearity& nl) {
  const std::size_t n = u.size();
  std::vector<double> m2(n), fint(n);
  double sup = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = std::abs(u.values[i]);
    m2[i] = a * a;
    fint[i] = nl.F(a);
    sup = std::max(sup, a);
  }
  const double cell = u.grid.cell();
  const auto s = spectral_sums(u);

  MetricRecord r;
  r.time = u.time_tag;
  r.mass = 0.5 * cell * numerics::pairwise_sum(m2);
  r.energy = 0.5 * s.kinetic - cell * numerics::pairwise_sum(fint);
  r.momentum = s.momentum;
  r.sup_norm = sup;
  return r;
}

Distances distances(const Field& u, const Field& ref) {
  require_same_grid(u, ref);
  const Grid& g = u.grid;
  const std::size_t n = g.size();
  Field diff(g, u.time_tag);
  double sup = 0.0;
  std::vector<double> m2(n);
  for (std::size_t i = 0; i < n; ++i) {
    diff.values[i] = u.values[i] - ref.values[i];
    const double a = std::abs(diff.values[i]);
    m2[i] = a * a;
    sup = std::max(sup, a);
  }
  const double l2sq = g.cell() * numerics::pairwise_sum(m2);
  const auto s = spectral_sums(diff);
  Distances d;
  d.l2 = std::sqrt(l2sq);
  d.h1 = std::sqrt(l2sq + s.kinetic);
  d.sup = sup;
  return d;
}

double l2_norm(const Field& u) {
  const std::size_t n = u.size();
  std::vector<double> m2(n);
  for (std::size_t i = 0; i < n; ++i) m2[i] = std::norm(u.values[i]);
  return std::sqrt(u.grid.cell() * numerics::pairwise_sum(m2));
}

double h1_norm(const Field& u) {
  const double l2 = l2_norm(u);
  return std::sqrt(l2 * l2 + spectral_sums(u).kinetic);
}

double lp_norm(const Field& u, double r) {
  const std::size_t n = u.size();
  if (std::isinf(r)) {
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      sup = std::max(sup, std::abs(u.values[i]));
    return sup;
  }
  if (r < 1.0) throw parameter_error("lp_norm: r must be >= 1");
  std::vector<double> p(n);
  for (std::size_t i = 0; i < n; ++i)
    p[i] = std::pow(std::abs(u.values[i]), r);
  return std::pow(u.grid.cell() * numerics::pairwise_sum(p), 1.0 / r);
}

std::vector<AdmissiblePair> admissible_pairs(int d, std::size_t count) {
  if (d < 1) throw parameter_error("admissible_pairs: d must be >= 1");
  if (count == 0) throw parameter_error("admissible_pairs: count must be >= 1");
  std::vector<AdmissiblePair> pairs;
  pairs.push_back({kInf, 2.0});
  if (count == 1) return pairs;
  // beta = 2/q ranges over (0, beta_max]; r from d/r = d/2 - beta
  const double beta_max = d == 1 ? 0.5 : (d == 2 ? 2.0 / 2.2 : 1.0);
  for (std::size_t k = 1; k < count; ++k) {
    const double beta = beta_max * static_cast<double>(k) /
                        static_cast<double>(count - 1);
    const double q = 2.0 / beta;
    const double denom = d / 2.0 - beta;
    const double r = denom <= 1e-15 ? kInf : d / denom;
    pairs.push_back({q, r});
  }
  return pairs;
}

double strichartz_norm(const std::vector<Field>& snapshots,
                       const std::vector<double>& times,
                       const std::vector<AdmissiblePair>& pairs) {
  if (pairs.empty()) throw parameter_error("strichartz_norm: empty pair set");
  if (snapshots.size() != times.size())
    throw parameter_error("strichartz_norm: snapshot/time count mismatch");
  if (snapshots.empty()) return 0.0;

  const std::size_t n = snapshots.size();
  double best = 0.0;
  std::vector<double> space(n);
  for (const auto& p : pairs) {
    for (std::size_t i = 0; i < n; ++i) space[i] = lp_norm(snapshots[i], p.r);
    double val;
    if (std::isinf(p.q)) {
      val = *std::max_element(space.begin(), space.end());
    } else {
      double acc = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i)
        acc += 0.5 * (times[i + 1] - times[i]) *
               (std::pow(space[i], p.q) + std::pow(space[i + 1], p.q));
      val = std::pow(acc, 1.0 / p.q);
    }
    best = std::max(best, val);
  }
  return best;
}

std::vector<std::vector<double>> strichartz_suffix_table(
    const std::vector<Field>& snapshots, const std::vector<double>& times,
    const std::vector<AdmissiblePair>& pairs) {
  if (pairs.empty())
    throw parameter_error("strichartz_suffix_table: empty pair set");
  if (snapshots.size() != times.size())
    throw parameter_error("strichartz_suffix_table: snapshot/time mismatch");
  const std::size_t n = snapshots.size();
  std::vector<std::vector<double>> table(n,
                                         std::vector<double>(pairs.size()));
  if (n == 0) return table;

  std::vector<double> space(n);
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    for (std::size_t i = 0; i < n; ++i)
      space[i] = lp_norm(snapshots[i], pairs[p].r);
    if (std::isinf(pairs[p].q)) {
      double run = 0.0;
      for (std::size_t i = n; i-- > 0;) {
        run = std::max(run, space[i]);
        table[i][p] = run;
      }
    } else {
      double acc = 0.0;  // trapezoid of space^q over [t_i, t_end]
      table[n - 1][p] = 0.0;
      for (std::size_t i = n - 1; i-- > 0;) {
        acc += 0.5 * (times[i + 1] - times[i]) *
               (std::pow(space[i], pairs[p].q) +
                std::pow(space[i + 1], pairs[p].q));
        table[i][p] = std::pow(acc, 1.0 / pairs[p].q);
      }
    }
  }
  return table;
}

FitResult fit_exponential_rate(const std::vector<double>& times,
                               const std::vector<double>& values) {
  if (times.size() != values.size() || times.size() < 3)
    throw insufficient_data("fit_exponential_rate needs at least 3 points");
  std::vector<double> logs(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] > 0.0))
      throw domain_error("fit_exponential_rate: values must be positive");
    logs[i] = std::log(values[i]);
  }
  const auto fit = numerics::fit_line(times, logs);
  return FitResult{-fit.slope, fit.intercept, fit.r_squared};
}

double action(const MetricRecord& m, double omega0, Vec v0) {
  return m.energy + (omega0 + 0.25 * v0.norm2()) * m.mass +
         v0.dot(m.momentum);
}

}  // namespace nlslab
