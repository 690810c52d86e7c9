#include "nlslab/train.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "nlslab/errors.hpp"

namespace nlslab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vec effective_speed(const WaveSpec& w) {
  return Vec{w.v.x + w.c, w.v.y};
}

double japanese_bracket(const Vec& v) { return std::sqrt(1.0 + v.norm2()); }

}  // namespace

std::vector<WaveSpec> all_components(const TrainSpec& t) {
  std::vector<WaveSpec> ws;
  ws.reserve(t.components.size() + 2);
  if (t.left_kink) ws.push_back(*t.left_kink);
  ws.insert(ws.end(), t.components.begin(), t.components.end());
  if (t.right_kink) ws.push_back(*t.right_kink);
  return ws;
}

TrainDerived train_derived(const TrainSpec& t, double r0) {
  TrainDerived d;
  d.r0 = r0;
  const auto ws = all_components(t);
  if (ws.empty()) return d;

  const double alpha =
      t.nl ? t.nl->exponents().alpha1 : std::numeric_limits<double>::quiet_NaN();
  const double alpha2 =
      t.nl ? t.nl->exponents().alpha2 : std::numeric_limits<double>::quiet_NaN();
  const int dim = ws.front().profile ? ws.front().profile->d : 1;

  double omega_min = kInf, vplain = kInf, vweight = kInf;
  double Vsum = 0.0, isum = 0.0;
  for (std::size_t j = 0; j < ws.size(); ++j) {
    const double wj = ws[j].omega;
    omega_min = std::min(omega_min, wj);
    if (wj > 0.0) {
      Vsum += japanese_bracket(effective_speed(ws[j])) *
              std::pow(wj, 1.0 / alpha - dim / 4.0);
      isum += std::pow(wj, 1.0 / alpha - dim / (2.0 * r0));
    }
    for (std::size_t k = 0; k < ws.size(); ++k) {
      if (k == j) continue;
      const Vec dv{effective_speed(ws[k]).x - effective_speed(ws[j]).x,
                   effective_speed(ws[k]).y - effective_speed(ws[j]).y};
      const double sep = dv.norm();
      if (k > j) vplain = std::min(vplain, sep);
      if (wj > 0.0) vweight = std::min(vweight, std::sqrt(wj) * sep);
    }
  }
  d.omega_star = 0.5 * omega_min;
  d.v_star_plain = vplain;
  d.v_star_weighted = vweight;
  d.V_star = Vsum;
  d.V_star_required = std::isfinite(alpha) && std::isfinite(alpha2) &&
                      alpha < alpha2 / (2.0 + alpha2);
  d.integrability_sum = isum;
  d.predicted_rate =
      std::isfinite(vplain) ? std::sqrt(d.omega_star) * vplain : kInf;
  return d;
}

TrainSpec make_train(std::shared_ptr<const Nonlinearity> nl,
                     std::vector<WaveSpec> components,
                     std::optional<WaveSpec> left_kink,
                     std::optional<WaveSpec> right_kink, double r0) {
  if (!nl) throw parameter_error("make_train: null nonlinearity");
  if (r0 <= 0) throw parameter_error("make_train: r0 must be positive");
  TrainSpec t;
  t.nl = std::move(nl);
  t.components = std::move(components);
  t.left_kink = std::move(left_kink);
  t.right_kink = std::move(right_kink);
  for (const auto& w : all_components(t))
    if (!w.profile) throw parameter_error("make_train: component without profile");
  t.derived = train_derived(t, r0);
  return t;
}

Field sum_profile(const TrainSpec& t, const Grid& grid, double time) {
  return realize_sum(all_components(t), grid, time);
}

namespace {

void require(ValidationReport& rep, bool cond, const std::string& msg) {
  if (!cond) {
    rep.ok = false;
    rep.messages.push_back(msg);
  }
}

}  // namespace

ValidationReport validate_multi_soliton_params(const TrainSpec& t) {
  ValidationReport rep;
  rep.derived = t.derived;
  require(rep, !all_components(t).empty(), "train has no components");
  int dim = -1;
  for (const auto& w : t.components) {
    if (!w.profile) continue;
    if (dim < 0) dim = w.profile->d;
    require(rep, w.profile->kind == ProfileKind::GroundState,
            "soliton slot holds a non ground-state profile");
    require(rep, w.omega > 0, "soliton frequency must be positive");
    require(rep, w.profile->d == dim, "components mix dimensions");
  }
  const bool kinks = t.left_kink.has_value() || t.right_kink.has_value();
  if (kinks) {
    require(rep, dim <= 1, "kink-bounded trains are one-dimensional");
    if (t.left_kink) {
      require(rep, t.left_kink->profile->kind == ProfileKind::Kink,
              "left kink slot holds a non-kink profile");
      require(rep, !t.left_kink->profile->complex_valued,
              "left kink must be a real kink profile");
      require(rep, !t.left_kink->mirrored, "left kink must not be mirrored");
    }
    if (t.right_kink) {
      require(rep, t.right_kink->profile->kind == ProfileKind::Kink,
              "right kink slot holds a non-kink profile");
      require(rep, !t.right_kink->profile->complex_valued,
              "right kink must be a real kink profile");
      require(rep, t.right_kink->mirrored, "right kink must be mirrored");
    }
    // strict speed ordering v_0 < v_1 < ... < v_{N+1}
    std::vector<double> speeds;
    if (t.left_kink) speeds.push_back(t.left_kink->v.x + t.left_kink->c);
    for (const auto& w : t.components) speeds.push_back(w.v.x + w.c);
    if (t.right_kink) speeds.push_back(t.right_kink->v.x + t.right_kink->c);
    bool sorted = true;
    for (std::size_t i = 1; i < speeds.size(); ++i)
      sorted = sorted && speeds[i - 1] < speeds[i];
    require(rep, sorted,
            "speeds must increase strictly from the left kink to the right");
  }
  require(rep, rep.derived.omega_star > 0, "omega_star must be positive");
  require(rep, rep.derived.v_star_plain > 0,
          "component speeds must be pairwise distinct");
  return rep;
}

namespace {

// shared infinite-train conditions (weighted separation + summability)
void check_admissibility(ValidationReport& rep, const TrainSpec& t,
                         bool include_kinks) {
  const auto& dv = rep.derived;
  const auto ex = t.nl->exponents();
  const int dim = t.components.empty() || !t.components.front().profile
                      ? 1
                      : t.components.front().profile->d;
  require(rep, std::isfinite(ex.alpha1) && ex.alpha1 > 0,
          "nonlinearity exposes no exponent metadata");
  if (!std::isfinite(ex.alpha1)) return;
  require(rep,
          ex.alpha1 <= ex.alpha15 && ex.alpha15 <= ex.alpha2 &&
              ex.alpha2 < Nonlinearity::alpha_max(dim),
          "exponent chain alpha1 <= alpha15 <= alpha2 < alpha_max violated");
  require(rep, dv.r0 > std::max(1.0, dim * ex.alpha1 / 2.0),
          "integrability index r0 must exceed max(1, d*alpha/2)");
  require(rep, dv.v_star_weighted > 0,
          "weighted speed separation must be positive");
  const double e_int = 1.0 / ex.alpha1 - dim / (2.0 * dv.r0);
  require(rep, e_int > 0,
          "integrability exponent 1/alpha - d/(2 r0) must be positive");
  if (dv.V_star_required) {
    const double e_grad = 1.0 / ex.alpha1 - dim / 4.0;
    require(rep, e_grad > 0 && std::isfinite(dv.V_star),
            "gradient-weighted sum must converge for alpha below "
            "alpha2/(2+alpha2)");
  }
  for (const auto& w : t.components)
    require(rep, w.profile && w.profile->kind == ProfileKind::GroundState &&
                     w.omega > 0,
            "train components must be ground states with positive frequency");
  if (!include_kinks)
    require(rep, !t.left_kink && !t.right_kink,
            "pure soliton train admits no kink");
}

}  // namespace

ValidationReport validate_train_admissibility(const TrainSpec& t) {
  ValidationReport rep;
  rep.derived = t.derived;
  require(rep, !t.components.empty(), "train has no soliton components");
  if (!t.nl) {
    require(rep, false, "train has no nonlinearity");
    return rep;
  }
  check_admissibility(rep, t, /*include_kinks=*/false);
  return rep;
}

ValidationReport validate_kink_train_window(const TrainSpec& t) {
  ValidationReport rep;
  rep.derived = t.derived;
  if (!t.nl) {
    require(rep, false, "train has no nonlinearity");
    return rep;
  }
  require(rep, t.nl->kind() == NonlinearityKind::DoublePower,
          "kink trains require the double-power family");
  if (t.nl->kind() == NonlinearityKind::DoublePower) {
    const double a = t.nl->alpha(), b = t.nl->beta();
    const bool window =
        (a > 0 && a < 4.0 / 3.0) ||
        (a >= 4.0 / 3.0 && a < std::sqrt(2.0) && std::abs(b - 2.0 / a) < 1e-12);
    require(rep, window,
            "exponents outside the admissible window (alpha < 4/3, or "
            "4/3 <= alpha < sqrt(2) with beta = 2/alpha)");
  }
  require(rep, t.left_kink.has_value(), "kink train needs a left kink");
  require(rep, !t.right_kink.has_value(),
          "kink train carries exactly one kink");
  if (t.left_kink && t.left_kink->profile) {
    const auto& kp = *t.left_kink->profile;
    require(rep, kp.kind == ProfileKind::Kink && !kp.complex_valued,
            "left kink must be a real kink profile");
    try {
      const auto kc = kink_constants(*t.nl);
      require(rep, std::abs(kp.omega - kc.omega0) <= 1e-10,
              "kink frequency must be pinned at the kink constant omega0");
    } catch (const no_kink&) {
      require(rep, false, "nonlinearity admits no kink");
    }
    const double vk = t.left_kink->v.x + t.left_kink->c;
    bool slower = true, sorted = true;
    double prev = vk;
    for (const auto& w : t.components) {
      const double s = w.v.x + w.c;
      slower = slower && vk < s;
      sorted = sorted && prev < s;
      prev = s;
    }
    require(rep, slower && sorted,
            "speeds must increase strictly from the kink through the train");
  }
  require(rep, !t.components.empty(), "kink train has no soliton components");
  check_admissibility(rep, t, /*include_kinks=*/true);
  return rep;
}

TrainParams generate_train_params(double omega1, double ratio, double v_sharp,
                                  std::size_t count) {
  if (omega1 <= 0) throw parameter_error("generate_train_params: omega1 <= 0");
  if (!(ratio > 0 && ratio < 1))
    throw parameter_error("generate_train_params: ratio must lie in (0,1)");
  if (v_sharp < 0) throw parameter_error("generate_train_params: v_sharp < 0");
  if (count == 0) throw parameter_error("generate_train_params: empty train");
  TrainParams p;
  p.omegas.resize(count);
  p.velocities.resize(count);
  double w = omega1, v = 0.0;
  for (std::size_t j = 0; j < count; ++j) {
    if (j > 0) {
      w *= ratio;
      v += v_sharp / std::sqrt(w);
    }
    p.omegas[j] = w;
    p.velocities[j] = v;
  }
  return p;
}

std::size_t truncate_train(double omega1, double ratio, double alpha, int d,
                           double r0, double eps_tail) {
  if (omega1 <= 0) throw parameter_error("truncate_train: omega1 <= 0");
  if (!(ratio > 0 && ratio < 1))
    throw parameter_error("truncate_train: ratio must lie in (0,1)");
  if (alpha <= 0) throw parameter_error("truncate_train: alpha <= 0");
  if (eps_tail <= 0) throw parameter_error("truncate_train: eps_tail <= 0");
  const double e = 1.0 / alpha - d / (2.0 * r0);
  if (e <= 0)
    throw parameter_error(
        "truncate_train: integrability exponent 1/alpha - d/(2 r0) <= 0");
  const double q = std::pow(ratio, e);
  std::size_t N = 1;
  while (std::pow(q, static_cast<double>(N)) / (1.0 - q) >= eps_tail) {
    if (++N > 100000)
      throw parameter_error("truncate_train: tail bound not reached");
  }
  return N;
}

}  // namespace nlslab
