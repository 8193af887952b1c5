#include "sphereflow/flow_engine.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "sphereflow/chord_arc.hpp"
#include "sphereflow/cyclic_tridiagonal.hpp"
#include "sphereflow/error.hpp"

namespace sphereflow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPiSq = 4.0 * kPi * kPi;

std::vector<Vec3> symmetrized(std::span<const Vec3> pts) {
  const std::size_t n = pts.size();
  const std::size_t half = n / 2;
  std::vector<Vec3> out(n);
  for (std::size_t i = 0; i < half; ++i) {
    const Vec3 q = normalized(0.5 * (pts[i] - pts[i + half]));
    out[i] = q;
    out[i + half] = -q;
  }
  return out;
}

// 1 - e^{-2 (T - t)}, accurate when T - t is small.
double shrink_factor(double T, double t) { return -std::expm1(-2.0 * (T - t)); }

DiagnosticsRecord diagnose(const FlowState& s, double a) {
  const FrameField frame = frame_field(s.curve);
  DiagnosticsRecord r;
  r.step = s.step;
  r.t = s.t;
  r.tau = s.tau;
  r.L = s.curve.length();
  r.max_abs_kappa = frame.max_abs_kappa();
  r.int_kappa_sq = frame.integral_kappa_squared();
  r.total_space_curvature = total_space_curvature(s.curve);
  r.n = s.curve.size();
  const double bound = std::pow(2.0 * kPi / r.L, 2) *
                       (1.0 + (2.0 * a * a / (kPi * kPi)) * std::exp(-8.0 * kPi * kPi * s.tau));
  r.curvature_bound_margin = 1.0 - (r.max_abs_kappa * r.max_abs_kappa + 1.0) / bound;
  return r;
}

}  // namespace

double dt_max(const FlowState& state, double c_cfl) {
  const double h = state.curve.min_segment();
  return c_cfl * h * h;
}

FlowState step(const FlowState& state, double dt, const StepOptions& options) {
  const DiscreteCurve& curve = state.curve;
  const std::size_t n = curve.size();
  const double limit = dt_max(state, options.c_cfl);
  if (!(dt > 0.0) || dt > limit * (1.0 + 1e-12)) {
    throw Error(ErrorKind::StepTooLarge,
                "dt = " + std::to_string(dt) + " exceeds dt_max = " + std::to_string(limit));
  }

  // (I - dt D_ss) gamma^{k+1} = (1 + dt) gamma^k on the current (frozen) spacing.
  const auto ds = curve.segment_lengths();
  std::vector<double> lower(n), diag(n), upper(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double hm = ds[(i + n - 1) % n];
    const double hp = ds[i];
    lower[i] = -dt * 2.0 / (hm * (hm + hp));
    upper[i] = -dt * 2.0 / (hp * (hm + hp));
    diag[i] = 1.0 - lower[i] - upper[i];
  }
  const CyclicTridiagonal system(std::move(lower), std::move(diag), std::move(upper));

  std::vector<double> cx(n), cy(n), cz(n);
  for (std::size_t i = 0; i < n; ++i) {
    cx[i] = (1.0 + dt) * curve[i].x;
    cy[i] = (1.0 + dt) * curve[i].y;
    cz[i] = (1.0 + dt) * curve[i].z;
  }
  system.solve(cx);
  system.solve(cy);
  system.solve(cz);

  std::vector<Vec3> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 p{cx[i], cy[i], cz[i]};
    const double r = norm(p);
    if (!std::isfinite(r) || r == 0.0) {
      throw Error(ErrorKind::Degenerate, "non-finite vertex after implicit solve");
    }
    pts[i] = p / r;
  }
  if (options.symmetrize) pts = symmetrized(pts);

  DiscreteCurve next = reparametrize_uniform(make_curve(std::move(pts)),
                                             options.n_out == 0 ? n : options.n_out);
  if (options.symmetrize) next = make_curve(symmetrized(next.points()));

  if (next.length() < options.degenerate_length) {
    throw Error(ErrorKind::Degenerate, "length " + std::to_string(next.length()) + " below floor");
  }
  if (options.check_simple && !validate_simple(next)) {
    throw Error(ErrorKind::SelfIntersection,
                "curve self-intersects after step " + std::to_string(state.step + 1));
  }

  const double L0 = curve.length();
  const double L1 = next.length();
  FlowState out{std::move(next), state.t + dt, state.tau, state.step + 1};
  out.tau += 0.5 * dt * (1.0 / (L0 * L0) + 1.0 / (L1 * L1));
  return out;
}

RunResult run(const DiscreteCurve& initial, const RunParams& params, const StepObserver& observer) {
  RunResult result;
  result.a = params.a ? *params.a : admissible_a(initial);
  const double a = result.a;

  FlowState state{initial, 0.0, 0.0, 0};
  auto add_checkpoint = [&](DiagnosticsRecord& rec) {
    rec.min_Z = min_Z(state.curve, {a, state.tau}).min_value;
    result.checkpoints.push_back({state.step, state.t, state.tau, state.curve});
  };

  DiagnosticsRecord rec = diagnose(state, a);
  add_checkpoint(rec);
  result.series.push_back(rec);
  if (observer) observer(state, rec);

  double L_reference = initial.length();
  std::size_t n_current = initial.size();

  enum class Stop { none, shrink, plateau };
  Stop stop = Stop::none;
  while (stop == Stop::none) {
    if (state.t >= params.t_max) {
      throw Error(ErrorKind::NonConvergent,
                  "t_max = " + std::to_string(params.t_max) + " reached without classification");
    }

    StepOptions opts;
    opts.c_cfl = params.c_cfl;
    opts.symmetrize = params.symmetrize;
    opts.check_simple = params.simplicity_every > 0 && (state.step + 1) % params.simplicity_every == 0;
    bool resampled = false;
    const double L = state.curve.length();
    if (params.halve_vertices && L <= 0.5 * L_reference && n_current / 2 >= params.n_min &&
        n_current % 2 == 0) {
      n_current /= 2;
      L_reference = L;
      resampled = true;
    }
    opts.n_out = n_current;

    double dt = std::min(params.dt, dt_max(state, params.c_cfl));
    if (params.accuracy > 0.0) {
      dt = std::min(dt, params.accuracy / (1.0 + rec.max_abs_kappa * rec.max_abs_kappa));
    }
    FlowState next = step(state, dt, opts);
    const double L_prev = state.curve.length();
    state = std::move(next);

    rec = diagnose(state, a);
    rec.resampled = resampled;
    rec.dL_dt_observed = (rec.L - L_prev) / dt;

    if (rec.L < params.L_floor) {
      stop = Stop::shrink;
    } else if (rec.max_abs_kappa < params.kappa_plateau) {
      stop = Stop::plateau;
    } else if (params.plateau_window > 0 && result.series.size() > params.plateau_window) {
      const double earlier = result.series[result.series.size() - params.plateau_window].max_abs_kappa;
      if (rec.max_abs_kappa < 1e-3 && rec.max_abs_kappa >= 0.99 * earlier) stop = Stop::plateau;
    }

    const bool checkpoint = stop != Stop::none ||
                            (params.checkpoint_every > 0 && state.step % params.checkpoint_every == 0);
    if (checkpoint) add_checkpoint(rec);
    result.series.push_back(rec);
    if (observer) observer(state, rec);
  }

  Outcome& out = result.outcome;
  if (stop == Stop::shrink) {
    out.kind = OutcomeKind::FiniteTimeShrink;
    out.T_est = estimate_extinction(result.series);
    out.z_est = mean_direction(state.curve);
    out.fit_residual = extinction_fit_residual(result.series, out.T_est);
  } else {
    out.kind = OutcomeKind::GreatCircleConvergence;
    out.axis = best_fit_axis(state.curve);
    double sq = 0.0;
    for (const auto& p : state.curve.points()) sq += dot(p, out.axis) * dot(p, out.axis);
    out.fit_residual = std::sqrt(sq / static_cast<double>(state.curve.size()));
  }
  return result;
}

namespace {

std::vector<std::size_t> extinction_window(const DiagnosticsSeries& series) {
  if (series.empty()) return {};
  const double L_final = series.back().L;
  std::vector<std::size_t> idx;
  for (std::size_t k = 0; k < series.size(); ++k) {
    if (series[k].L < 0.5 && series[k].L <= 10.0 * L_final) idx.push_back(k);
  }
  return idx;
}

}  // namespace

double estimate_extinction(const DiagnosticsSeries& series) {
  const auto idx = extinction_window(series);
  if (idx.size() < 50) {
    throw Error(ErrorKind::InsufficientData,
                "extinction fit needs 50 records in the final decade of L below 0.5, found " +
                    std::to_string(idx.size()));
  }

  // Each record alone pins T exactly under the model; start from their mean.
  double T = 0.0;
  for (std::size_t k : idx) {
    const auto& r = series[k];
    T += r.t - 0.5 * std::log1p(-r.L * r.L / kTwoPiSq);
  }
  T /= static_cast<double>(idx.size());

  // Gauss-Newton on relative residuals (model - L^2) / L^2.
  for (int iter = 0; iter < 50; ++iter) {
    double jr = 0.0;
    double jj = 0.0;
    for (std::size_t k : idx) {
      const auto& r = series[k];
      const double L2 = r.L * r.L;
      const double model = kTwoPiSq * shrink_factor(T, r.t);
      const double jac = 2.0 * kTwoPiSq * std::exp(-2.0 * (T - r.t)) / L2;
      jr += jac * (model - L2) / L2;
      jj += jac * jac;
    }
    const double delta = jr / jj;
    T -= delta;
    if (std::abs(delta) <= 1e-15 * std::max(1.0, std::abs(T))) break;
  }
  return T;
}

double extinction_fit_residual(const DiagnosticsSeries& series, double T_est) {
  const auto idx = extinction_window(series);
  if (idx.empty()) return 0.0;
  double sum = 0.0;
  for (std::size_t k : idx) {
    const auto& r = series[k];
    const double L2 = r.L * r.L;
    const double rel = (kTwoPiSq * shrink_factor(T_est, r.t) - L2) / L2;
    sum += rel * rel;
  }
  return std::sqrt(sum / static_cast<double>(idx.size()));
}

RescaledCurve rescaled_curve(const DiscreteCurve& curve, double t, double T_est, const Vec3& z) {
  const Vec3 seed = std::abs(z.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  const Vec3 e1 = normalized(reject(seed, z));
  const Vec3 e2 = cross(z, e1);

  RescaledCurve out;
  out.scale = std::sqrt(shrink_factor(T_est, t));
  out.planar.reserve(curve.size());
  out.out_of_plane.reserve(curve.size());
  for (const auto& p : curve.points()) {
    const Vec3 v = (p - z) / out.scale;
    out.planar.push_back({dot(v, e1), dot(v, e2)});
    out.out_of_plane.push_back(dot(v, z));
  }
  return out;
}

CircleFit fit_circle(const std::vector<std::array<double, 2>>& points) {
  // Minimize sum (x^2 + y^2 + D x + E y + F)^2 about the centroid.
  const auto n = static_cast<double>(points.size());
  double mx = 0.0, my = 0.0;
  for (const auto& p : points) {
    mx += p[0];
    my += p[1];
  }
  mx /= n;
  my /= n;

  double sxx = 0, sxy = 0, syy = 0, sx = 0, sy = 0, sxr = 0, syr = 0, sr = 0;
  for (const auto& p : points) {
    const double x = p[0] - mx;
    const double y = p[1] - my;
    const double r = x * x + y * y;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
    sx += x;
    sy += y;
    sxr += x * r;
    syr += y * r;
    sr += r;
  }
  // Normal equations M [D E F]^T = -[sxr syr sr]^T, solved by Cramer's rule.
  const double m[3][3] = {{sxx, sxy, sx}, {sxy, syy, sy}, {sx, sy, n}};
  const double b[3] = {-sxr, -syr, -sr};
  auto det3 = [](const double (&a)[3][3]) {
    return a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
           a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
           a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
  };
  const double det = det3(m);
  double sol[3];
  for (int c = 0; c < 3; ++c) {
    double mc[3][3];
    for (int r = 0; r < 3; ++r) {
      for (int k = 0; k < 3; ++k) mc[r][k] = (k == c) ? b[r] : m[r][k];
    }
    sol[c] = det3(mc) / det;
  }

  CircleFit fit;
  const double cx = -0.5 * sol[0];
  const double cy = -0.5 * sol[1];
  fit.center = {cx + mx, cy + my};
  fit.radius = std::sqrt(cx * cx + cy * cy - sol[2]);
  double sq = 0.0;
  for (const auto& p : points) {
    const double dev = std::hypot(p[0] - fit.center[0], p[1] - fit.center[1]) - fit.radius;
    sq += dev * dev;
  }
  fit.rms = std::sqrt(sq / n);
  return fit;
}

}  // namespace sphereflow
