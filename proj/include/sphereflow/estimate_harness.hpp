#pragma once

// Assertions over completed runs: every check turns one of the sharp estimates into a
// per-step (or per-checkpoint) margin series and a pass/fail verdict.

#include <cstddef>
#include <string>
#include <vector>

#include "sphereflow/flow_engine.hpp"

namespace sphereflow {

struct BoundCheck {
  std::string name;
  std::vector<std::size_t> steps;
  std::vector<double> margins;  // >= 0 means the bound holds with room to spare
  double min_margin = 0.0;
  std::size_t worst_step = 0;
  double tolerance = 0.0;
  bool pass = false;
  std::string note;
};

/// Builds a BoundCheck from its margin series: pass iff min_margin >= -tolerance.
BoundCheck make_check(std::string name, std::vector<std::size_t> steps,
                      std::vector<double> margins, double tolerance);

struct DecayFit {
  double delta = 1.0;    // 1 / (1 + 2 a^2 / pi^2)
  double C_const = 0.0;  // (2 a^2 / 4 pi^2) (e^{2T} - 1)^{-delta}
  double fitted_slope = 0.0;
};

DecayFit decay_constants(double a, double T);

/// Chord-arc estimate at each checkpoint. Margin: min_Z(curve, {a, tau}) + c (max ds)^2 L,
/// tolerance 0.
BoundCheck check_chord_arc(const std::vector<Checkpoint>& checkpoints, double a,
                           double c_disc = 10.0);

/// Per step: margin 1 - max(kappa^2 + 1) / ((2 pi / L)^2 (1 + (2 a^2/pi^2) e^{-8 pi^2 tau})).
BoundCheck check_curvature_bound(const DiagnosticsSeries& series, double a,
                                 double tolerance = 0.02);

/// Per step: 2 pi sqrt(1 - e^{-2(T-t)}) <= L <= 2 pi sqrt((1 + 2a^2/pi^2)(1 - e^{-2(T-t)})),
/// margins relative to each side.
BoundCheck check_length_sandwich(const DiagnosticsSeries& series, double T_est, double a,
                                 double tolerance = 0.01);

/// Per step: L^2 <= 4 pi^2 (1 - e^{-2(T-t)}) (1 + C/(delta+1) (e^{2(T-t)} - 1)^delta).
BoundCheck check_improved_length(const DiagnosticsSeries& series, double T_est, double a,
                                 double tolerance = 0.01);

/// Per step: -log(r)/(8 pi^2 + 16 a^2) <= tau <= -log(r)/(8 pi^2),
/// r = (e^{2(T-t)} - 1)/(e^{2T} - 1). Margins relative to the upper end.
BoundCheck check_tau_bracket(const DiagnosticsSeries& series, double T_est, double a,
                             double tolerance = 0.01);

struct RoundnessReport {
  BoundCheck check;                    // verdict on the final checkpoint
  std::vector<double> mean_sq_deviation;  // (1/L) sum |sqrt(1-e^{-2(T-t)}) |kappa_bar| - 1|^2 ds
  std::vector<double> max_deviation;
  double final_radius = 0.0;           // best-fit circle radius of the rescaled curve
  double empirical_C0 = 0.0;           // sup over checkpoints of sqrt(1-e^{-2(T-t)}) max|kappa|
};

/// Rescaled space curvature sqrt(1 - e^{-2(T-t)}) |kappa_bar| -> 1. The verdict uses the
/// max deviation at the final checkpoint; earlier checkpoints only contribute the trend.
RoundnessReport check_roundness(const std::vector<Checkpoint>& checkpoints, double T_est,
                                const Vec3& z_est, double tolerance = 0.05);

struct GreatCircleReport {
  BoundCheck check;
  double final_length_error = 0.0;  // |L_final - 2 pi|
  double fitted_slope = 0.0;        // d log(max kappa^2) / dt over the final half
};

/// Infinite-time case: |L_final - 2 pi| <= 1e-3 and the fitted slope of log(max kappa^2)
/// against t over the final half of the run <= max_slope. Runs whose curvature is at the
/// noise floor throughout (a great circle from the start) pass trivially.
/// Error{PreconditionViolation} when fed a finite-time outcome.
GreatCircleReport check_great_circle(const DiagnosticsSeries& series, OutcomeKind kind,
                                     double max_slope = -1.5);

/// Least-squares slope of y against x.
double fit_slope(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace sphereflow
