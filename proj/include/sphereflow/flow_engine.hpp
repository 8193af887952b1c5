#pragma once

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <vector>

#include "sphereflow/sphere_geometry.hpp"
#include "sphereflow/vec3.hpp"

namespace sphereflow {

/// Curve shortening flow d_t gamma = kappa_vec on S^2. In R^3 this reads
/// d_t gamma = gamma_ss + gamma for arclength s.
struct FlowState {
  DiscreteCurve curve;
  double t = 0.0;
  double tau = 0.0;  // trapezoidal integral of L^{-2} dt
  std::size_t step = 0;
};

struct StepOptions {
  double c_cfl = 1.0;                 // dt <= c_cfl (min ds)^2
  std::size_t n_out = 0;              // vertex count after reparametrization, 0 keeps n
  bool symmetrize = false;            // re-impose gamma(u + pi) = -gamma(u)
  bool check_simple = false;          // run validate_simple on the result
  double degenerate_length = 1e-6;
};

double dt_max(const FlowState& state, double c_cfl);

/// One semi-implicit step: gamma_ss implicit (cyclic tridiagonal solve per coordinate),
/// the +gamma term explicit, projection to S^2, then uniform reparametrization.
/// Errors: StepTooLarge, SelfIntersection (when check_simple), Degenerate.
FlowState step(const FlowState& state, double dt, const StepOptions& options = {});

struct DiagnosticsRecord {
  std::size_t step = 0;
  double t = 0.0;
  double tau = 0.0;
  double L = 0.0;
  double max_abs_kappa = 0.0;
  double min_Z = std::numeric_limits<double>::quiet_NaN();  // checkpoint steps only
  double dL_dt_observed = std::numeric_limits<double>::quiet_NaN();
  double curvature_bound_margin = 0.0;  // 1 - max(kappa^2 + 1) / bound
  // In-memory only; not part of the diagnostics CSV.
  double int_kappa_sq = 0.0;
  double total_space_curvature = 0.0;
  std::size_t n = 0;
  bool resampled = false;  // vertex count changed on this step
};

using DiagnosticsSeries = std::vector<DiagnosticsRecord>;

struct Checkpoint {
  std::size_t step = 0;
  double t = 0.0;
  double tau = 0.0;
  DiscreteCurve curve;
};

enum class OutcomeKind { FiniteTimeShrink, GreatCircleConvergence };

struct Outcome {
  OutcomeKind kind = OutcomeKind::FiniteTimeShrink;
  double T_est = 0.0;  // FiniteTimeShrink
  Vec3 z_est;          // FiniteTimeShrink: limit point
  Vec3 axis;           // GreatCircleConvergence: pole of the limit circle
  double fit_residual = 0.0;
};

struct RunParams {
  double dt = 1e-4;
  double t_max = 10.0;
  double L_floor = 0.05;
  std::optional<double> a;  // barrier parameter; admissible_a(initial) when absent
  double c_cfl = 1.0;
  double accuracy = 2e-3;   // when > 0: dt <= accuracy / max(1 + kappa^2)
  std::size_t n_min = 64;   // halving schedule floor
  bool halve_vertices = true;
  bool symmetrize = false;
  std::size_t checkpoint_every = 100;
  std::size_t simplicity_every = 25;
  double kappa_plateau = 1e-7;        // great-circle stop: max |kappa| below this
  std::size_t plateau_window = 500;   // or max |kappa| stalled over this many steps
};

struct RunResult {
  DiagnosticsSeries series;
  std::vector<Checkpoint> checkpoints;
  Outcome outcome;
  double a = 0.0;
};

/// Optional observer called after each accepted step (for streaming output).
using StepObserver = std::function<void(const FlowState&, const DiagnosticsRecord&)>;

/// Integrates from the initial curve until L < L_floor (finite-time shrink), the curvature
/// reaches the great-circle plateau, or t > t_max (Error{NonConvergent}).
RunResult run(const DiscreteCurve& initial, const RunParams& params,
              const StepObserver& observer = {});

/// Fits L^2 = 4 pi^2 (1 - e^{-2 (T - t)}) over the final decade of L (records with
/// L <= 10 L_final and L < 0.5), weighting residuals relative to L^2. Needs >= 50 records
/// there, otherwise Error{InsufficientData}.
double estimate_extinction(const DiagnosticsSeries& series);

/// Relative RMS residual of the extinction model over the fitted window.
double extinction_fit_residual(const DiagnosticsSeries& series, double T_est);

struct RescaledCurve {
  std::vector<std::array<double, 2>> planar;  // coordinates in an orthonormal basis of T_z S^2
  std::vector<double> out_of_plane;           // component along z
  double scale = 0.0;                         // sqrt(1 - e^{-2 (T - t)})
};

/// (p_i - z) / sqrt(1 - e^{-2 (T - t)}) in the tangent plane at z. Requires T_est > t.
RescaledCurve rescaled_curve(const DiscreteCurve& curve, double t, double T_est, const Vec3& z);

struct CircleFit {
  std::array<double, 2> center{};
  double radius = 0.0;
  double rms = 0.0;  // RMS of |x - center| - radius
};

/// Algebraic (Kasa) least-squares circle through planar points.
CircleFit fit_circle(const std::vector<std::array<double, 2>>& points);

}  // namespace sphereflow
