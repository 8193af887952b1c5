#include "sphereflow/estimate_harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "sphereflow/chord_arc.hpp"
#include "sphereflow/error.hpp"

namespace sphereflow {

namespace {

constexpr double kPi = std::numbers::pi;

double shrink_factor(double T, double t) { return -std::expm1(-2.0 * (T - t)); }

}  // namespace

BoundCheck make_check(std::string name, std::vector<std::size_t> steps,
                      std::vector<double> margins, double tolerance) {
  BoundCheck c;
  c.name = std::move(name);
  c.tolerance = tolerance;
  c.steps = std::move(steps);
  c.margins = std::move(margins);
  if (c.margins.empty()) {
    c.pass = false;
    c.min_margin = std::numeric_limits<double>::quiet_NaN();
    c.note = "no data";
    return c;
  }
  const auto it = std::min_element(c.margins.begin(), c.margins.end());
  c.min_margin = *it;
  c.worst_step = c.steps[static_cast<std::size_t>(std::distance(c.margins.begin(), it))];
  c.pass = c.min_margin >= -tolerance;
  return c;
}

DecayFit decay_constants(double a, double T) {
  DecayFit f;
  f.delta = 1.0 / (1.0 + 2.0 * a * a / (kPi * kPi));
  f.C_const = (2.0 * a * a / (4.0 * kPi * kPi)) * std::pow(std::expm1(2.0 * T), -f.delta);
  return f;
}

BoundCheck check_chord_arc(const std::vector<Checkpoint>& checkpoints, double a, double c_disc) {
  std::vector<std::size_t> steps;
  std::vector<double> margins;
  for (const auto& cp : checkpoints) {
    const double h = cp.curve.max_segment();
    const double allowance = c_disc * h * h * cp.curve.length();
    steps.push_back(cp.step);
    margins.push_back(min_Z(cp.curve, {a, cp.tau}).min_value + allowance);
  }
  return make_check("chord_arc", std::move(steps), std::move(margins), 0.0);
}

BoundCheck check_curvature_bound(const DiagnosticsSeries& series, double a, double tolerance) {
  std::vector<std::size_t> steps;
  std::vector<double> margins;
  for (const auto& r : series) {
    const double bound = std::pow(2.0 * kPi / r.L, 2) *
                         (1.0 + (2.0 * a * a / (kPi * kPi)) * std::exp(-8.0 * kPi * kPi * r.tau));
    steps.push_back(r.step);
    margins.push_back(1.0 - (r.max_abs_kappa * r.max_abs_kappa + 1.0) / bound);
  }
  return make_check("curvature_bound", std::move(steps), std::move(margins), tolerance);
}

BoundCheck check_length_sandwich(const DiagnosticsSeries& series, double T_est, double a,
                                 double tolerance) {
  const double widen = std::sqrt(1.0 + 2.0 * a * a / (kPi * kPi));
  std::vector<std::size_t> steps;
  std::vector<double> margins;
  for (const auto& r : series) {
    if (r.t >= T_est) continue;
    const double lower = 2.0 * kPi * std::sqrt(shrink_factor(T_est, r.t));
    const double upper = widen * lower;
    steps.push_back(r.step);
    margins.push_back(std::min(r.L / lower - 1.0, 1.0 - r.L / upper));
  }
  return make_check("length_sandwich", std::move(steps), std::move(margins), tolerance);
}

BoundCheck check_improved_length(const DiagnosticsSeries& series, double T_est, double a,
                                 double tolerance) {
  const DecayFit fit = decay_constants(a, T_est);
  std::vector<std::size_t> steps;
  std::vector<double> margins;
  for (const auto& r : series) {
    if (r.t >= T_est) continue;
    const double growth = std::pow(std::expm1(2.0 * (T_est - r.t)), fit.delta);
    const double bound_sq = 4.0 * kPi * kPi * shrink_factor(T_est, r.t) *
                            (1.0 + fit.C_const / (fit.delta + 1.0) * growth);
    steps.push_back(r.step);
    margins.push_back(1.0 - r.L / std::sqrt(bound_sq));
  }
  return make_check("improved_length", std::move(steps), std::move(margins), tolerance);
}

BoundCheck check_tau_bracket(const DiagnosticsSeries& series, double T_est, double a,
                             double tolerance) {
  std::vector<std::size_t> steps;
  std::vector<double> margins;
  for (const auto& r : series) {
    if (r.t >= T_est) continue;
    const double log_ratio = -std::log(std::expm1(2.0 * (T_est - r.t)) / std::expm1(2.0 * T_est));
    const double lower = log_ratio / (8.0 * kPi * kPi + 16.0 * a * a);
    const double upper = log_ratio / (8.0 * kPi * kPi);
    steps.push_back(r.step);
    margins.push_back(upper > 0.0 ? std::min(r.tau - lower, upper - r.tau) / upper : 0.0);
  }
  return make_check("tau_bracket", std::move(steps), std::move(margins), tolerance);
}

RoundnessReport check_roundness(const std::vector<Checkpoint>& checkpoints, double T_est,
                                const Vec3& z_est, double tolerance) {
  RoundnessReport rep;
  const Checkpoint* last = nullptr;
  double last_dev = 0.0;
  for (const auto& cp : checkpoints) {
    if (cp.t >= T_est) continue;
    const double scale = std::sqrt(shrink_factor(T_est, cp.t));
    const FrameField frame = frame_field(cp.curve);
    const std::size_t n = cp.curve.size();
    double worst = 0.0;
    double mean_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double dev = scale * std::abs(frame.kappa_bar[i]) - 1.0;
      worst = std::max(worst, std::abs(dev));
      mean_sq += dev * dev * 0.5 * (frame.ds[(i + n - 1) % n] + frame.ds[i]);
    }
    rep.mean_sq_deviation.push_back(mean_sq / cp.curve.length());
    rep.max_deviation.push_back(worst);
    rep.empirical_C0 = std::max(rep.empirical_C0, scale * frame.max_abs_kappa());
    last = &cp;
    last_dev = worst;
  }
  if (last == nullptr) {
    rep.check = make_check("roundness", {}, {}, tolerance);
    return rep;
  }
  const auto rescaled = rescaled_curve(last->curve, last->t, T_est, z_est);
  rep.final_radius = fit_circle(rescaled.planar).radius;
  rep.check = make_check("roundness", {last->step}, {-last_dev}, tolerance);
  return rep;
}

double fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += x[k];
    my += y[k];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (x[k] - mx) * (y[k] - my);
    sxx += (x[k] - mx) * (x[k] - mx);
  }
  return sxy / sxx;
}

GreatCircleReport check_great_circle(const DiagnosticsSeries& series, OutcomeKind kind,
                                     double max_slope) {
  if (kind != OutcomeKind::GreatCircleConvergence) {
    throw Error(ErrorKind::PreconditionViolation, "great-circle check needs an infinite-time run");
  }
  if (series.empty()) {
    throw Error(ErrorKind::InsufficientData, "empty diagnostics series");
  }
  constexpr double kLengthTolerance = 1e-3;
  constexpr double kNoiseFloor = 1e-10;

  GreatCircleReport rep;
  const auto& last = series.back();
  rep.final_length_error = std::abs(last.L - 2.0 * kPi);

  const double t_half = 0.5 * last.t;
  std::vector<double> ts, logs;
  double max_kappa = 0.0;
  for (const auto& r : series) {
    max_kappa = std::max(max_kappa, r.max_abs_kappa);
    if (r.t >= t_half && r.max_abs_kappa > 0.0) {
      ts.push_back(r.t);
      logs.push_back(std::log(r.max_abs_kappa * r.max_abs_kappa));
    }
  }

  std::vector<std::size_t> steps{last.step};
  std::vector<double> margins{kLengthTolerance - rep.final_length_error};
  std::string note;
  if (max_kappa < kNoiseFloor) {
    note = "curvature at noise floor throughout; slope not fitted";
    rep.fitted_slope = std::numeric_limits<double>::quiet_NaN();
  } else if (ts.size() < 3) {
    note = "too few records in the final half";
    rep.fitted_slope = std::numeric_limits<double>::quiet_NaN();
    margins.push_back(-std::numeric_limits<double>::infinity());
    steps.push_back(last.step);
  } else {
    rep.fitted_slope = fit_slope(ts, logs);
    margins.push_back(max_slope - rep.fitted_slope);
    steps.push_back(last.step);
  }
  rep.check = make_check("great_circle", std::move(steps), std::move(margins), 0.0);
  rep.check.note = note;
  return rep;
}

}  // namespace sphereflow
