#pragma once

// Comparison profile for the chord-arc estimate,
//
//   phi(z; a) = a^{-1} arctan((a / pi) sin(pi z)),     phi(z; 0) = sin(pi z) / pi,
//
// together with its closed-form derivatives and the analytic quantities used to certify
// its key properties on grids: the composition with h(d) = arccos(1 - d^2 / 2), the
// function F(phi) whose sign controls concavity of h(L phi), the quotient bound q(X, Y),
// and the residual of the parabolic comparison inequality the profile satisfies with
// equality when its parameter decays as a e^{-4 pi^2 tau}.

#include <cstddef>
#include <string>
#include <vector>

namespace sphereflow {

struct BarrierParams {
  double a = 0.0;    // barrier parameter at tau = 0
  double tau = 0.0;  // rescaled time, integral of L^{-2} dt

  /// a e^{-4 pi^2 tau}
  double effective() const;
};

struct BarrierEval {
  double phi = 0.0;
  double phi_prime = 0.0;
  double phi_double_prime = 0.0;
};

double phi(double z, double a);

/// phi, phi' and phi'' at z. a = 0 gives the sin(pi z) / pi limit.
BarrierEval phi_derivatives(double z, double a);

/// d phi / d a = (1/a) [ (sin(pi z)/pi) / (1 + (a/pi)^2 sin^2(pi z)) - phi ]; zero at a = 0.
double dphi_da(double z, double a);

/// Spherical distance of a chord of length d: arccos(1 - d^2/2), computed as 2 asin(d/2).
/// Throws Error{DomainError} if d < 0 or d > 2 + 1e-12.
double h(double d);

/// F(phi) for the barrier with parameter a on a curve of length L.
/// Throws Error{DomainError} unless 0 < phi_val < (1/a) arctan(a / pi).
double F_value(double phi_val, double a, double L);

/// q(X, Y) = [1/(1+Y^2)] [(Y^2 - X^2) / (atan^2 Y - atan^2 X)] [atan(X) / X], with the
/// X = 0 limit atan(X)/X = 1. Requires 0 <= X < Y.
double q(double X, double Y);

/// Residual R = d_tau phi - 4(phi'' + pi^2 phi) - 8 pi phi' / tan(pi z) + 8 pi phi'^2 / sin(pi z)
/// for phi(.; a e^{-4 pi^2 tau}). Vanishes identically; z must lie in (0, 1).
double comparison_residual(double z, double a, double tau);

/// Closed-form d_tau phi at fixed z, using d a_eff / d tau = -4 pi^2 a_eff.
double dphi_dtau(double z, double a, double tau);

/// Smallest parameter for which L phi <= 2 everywhere: the root a0 of
/// (1/a0) arctan(a0 / pi) = 2 / L. Only meaningful for L > 2 pi; returns 0 otherwise.
double a0_for_length(double L);

/// max_z phi(z; a) = phi(1/2; a).
double phi_max(double a);

struct PropertyResult {
  std::string property;     // "symmetry", "slope_bound", "concavity", "h_concavity"
  std::size_t grid = 0;     // number of grid intervals
  double min_margin = 0.0;  // > 0 (or >= -tolerance for symmetry) when the property holds
  double worst_point = 0.0; // z at which min_margin is attained
  bool holds = false;
  std::string note;         // set when the property was skipped
};

struct PropertyReport {
  double a = 0.0;
  double L = 0.0;
  std::vector<PropertyResult> results;

  bool all_hold() const;
};

/// Grid verification of the four barrier properties:
///  (i)   phi(1 - z) = phi(z);
///  (ii)  |phi'| <= 1 (margin 1 - max |phi'| on interior points);
///  (iii) strict concavity (margin -max second difference of phi);
///  (iv)  strict concavity of z -> h(L phi(z)), which requires L max phi <= 2.
/// grid >= 1000. Throws Error{PreconditionViolation} when include_h_concavity is set and
/// L max phi > 2.
PropertyReport check_properties(double a, double L, std::size_t grid,
                                bool include_h_concavity = true);

struct GridScan {
  std::size_t points = 0;
  double min_margin = 0.0;    // positive when the inequality holds everywhere on the grid
  double worst_x = 0.0;
  double worst_y = 0.0;       // unused by one-dimensional scans
};

/// -F(phi) over `points` interior samples of (0, phi_max(a)).
GridScan scan_F(double a, double L, std::size_t points);

/// 1 - q(X, Y) on X = k x_max / n for k = 0..n-1 and Y = X + m (x_max - X) / n for m = 1..n.
GridScan scan_q(double x_max, std::size_t n);

}  // namespace sphereflow
