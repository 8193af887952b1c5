#include "sphereflow/barrier.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "sphereflow/error.hpp"

namespace sphereflow {

namespace {

constexpr double kPi = std::numbers::pi;

double base_profile(double z) { return std::sin(kPi * z) / kPi; }

// x / (1 + x^2) - atan(x), with a series for small x where the difference cancels.
double arctan_defect(double x) {
  if (std::abs(x) < 1e-3) {
    const double x2 = x * x;
    return x * x2 * (-2.0 / 3.0 + x2 * (4.0 / 5.0 - x2 * 6.0 / 7.0));
  }
  return x / (1.0 + x * x) - std::atan(x);
}

}  // namespace

double BarrierParams::effective() const { return a * std::exp(-4.0 * kPi * kPi * tau); }

double phi(double z, double a) {
  const double c = base_profile(z);
  if (a == 0.0) return c;
  return std::atan(a * c) / a;
}

BarrierEval phi_derivatives(double z, double a) {
  // phi = Psi(C(z)) with Psi(x) = atan(a x) / a and C(z) = sin(pi z) / pi; tan(a phi) = a C.
  const double c = base_profile(z);
  const double cos_pz = std::cos(kPi * z);
  const double ac = a * c;
  const double denom = 1.0 + ac * ac;
  BarrierEval e;
  e.phi = (a == 0.0) ? c : std::atan(ac) / a;
  e.phi_prime = cos_pz / denom;
  e.phi_double_prime = c * (kPi * kPi * ac * ac - kPi * kPi - 2.0 * a * a) / (denom * denom);
  return e;
}

double dphi_da(double z, double a) {
  if (a == 0.0) return 0.0;
  return arctan_defect(a * base_profile(z)) / (a * a);
}

double dphi_dtau(double z, double a, double tau) {
  const double a_eff = BarrierParams{a, tau}.effective();
  return dphi_da(z, a_eff) * (-4.0 * kPi * kPi * a_eff);
}

double h(double d) {
  if (!(d >= 0.0) || d > 2.0 + 1e-12) {
    throw Error(ErrorKind::DomainError, "chord length " + std::to_string(d) + " outside [0, 2]");
  }
  return 2.0 * std::asin(std::min(1.0, 0.5 * d));
}

double F_value(double phi_val, double a, double L) {
  const double upper = phi_max(a);
  if (!(phi_val > 0.0) || !(phi_val < upper)) {
    throw Error(ErrorKind::DomainError,
                "phi = " + std::to_string(phi_val) + " outside (0, " + std::to_string(upper) + ")");
  }
  const double t = std::tan(a * phi_val);
  const double ratio = t / (a * phi_val);
  const double gap = 4.0 - L * L * phi_val * phi_val;
  return (1.0 / (kPi * kPi) - t * t / (a * a)) * (L * L - a * a * gap * ratio) -
         (1.0 + a * a / (kPi * kPi)) * gap * ratio;
}

double q(double X, double Y) {
  const double atan_x = std::atan(X);
  const double atan_y = std::atan(Y);
  const double shrink = (X == 0.0) ? 1.0 : atan_x / X;
  return (1.0 / (1.0 + Y * Y)) * ((Y * Y - X * X) / (atan_y * atan_y - atan_x * atan_x)) * shrink;
}

double comparison_residual(double z, double a, double tau) {
  const double a_eff = BarrierParams{a, tau}.effective();
  const BarrierEval e = phi_derivatives(z, a_eff);
  const double s = std::sin(kPi * z);
  // phi'(1/2) = 0 and 1/tan(pi/2) = 0; the product is taken as exactly zero there.
  const double tan_term = (z == 0.5) ? 0.0 : 8.0 * kPi * e.phi_prime / std::tan(kPi * z);
  return dphi_dtau(z, a, tau) - 4.0 * (e.phi_double_prime + kPi * kPi * e.phi) - tan_term +
         8.0 * kPi * e.phi_prime * e.phi_prime / s;
}

double phi_max(double a) { return phi(0.5, a); }

double a0_for_length(double L) {
  if (L <= 2.0 * kPi) return 0.0;
  const double target = 2.0 / L;
  // phi_max is strictly decreasing in a, from 1/pi at a = 0 towards 0.
  double lo = 0.0;
  double hi = 1.0;
  while (phi_max(hi) > target) hi *= 2.0;
  while (hi - lo > 1e-12 * hi) {
    const double mid = 0.5 * (lo + hi);
    (phi_max(mid) > target ? lo : hi) = mid;
  }
  return hi;
}

bool PropertyReport::all_hold() const {
  return std::all_of(results.begin(), results.end(),
                     [](const PropertyResult& r) { return r.holds || !r.note.empty(); });
}

PropertyReport check_properties(double a, double L, std::size_t grid, bool include_h_concavity) {
  if (grid < 1000) {
    throw Error(ErrorKind::PreconditionViolation, "property grid needs at least 1000 intervals");
  }
  if (include_h_concavity && L * phi_max(a) > 2.0 + 1e-12) {
    throw Error(ErrorKind::PreconditionViolation,
                "L max phi = " + std::to_string(L * phi_max(a)) + " exceeds 2");
  }

  const auto N = static_cast<double>(grid);
  std::vector<double> z(grid + 1), values(grid + 1);
  for (std::size_t k = 0; k <= grid; ++k) {
    z[k] = static_cast<double>(k) / N;
    values[k] = phi(z[k], a);
  }

  auto second_difference_margin = [&](const std::vector<double>& g, PropertyResult& r) {
    r.min_margin = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < grid; ++k) {
      const double m = -(g[k - 1] - 2.0 * g[k] + g[k + 1]);
      if (m < r.min_margin) {
        r.min_margin = m;
        r.worst_point = z[k];
      }
    }
    r.holds = r.min_margin > 0.0;
  };

  PropertyReport report{a, L, {}};

  PropertyResult sym;
  sym.property = "symmetry";
  sym.grid = grid;
  sym.min_margin = 0.0;
  for (std::size_t k = 0; k <= grid; ++k) {
    const double m = -std::abs(values[k] - phi(1.0 - z[k], a));
    if (m < sym.min_margin) {
      sym.min_margin = m;
      sym.worst_point = z[k];
    }
  }
  sym.holds = sym.min_margin >= -1e-14;  // exact up to rounding of sin(pi - pi z)
  report.results.push_back(sym);

  PropertyResult slope;
  slope.property = "slope_bound";
  slope.grid = grid;
  slope.min_margin = std::numeric_limits<double>::infinity();
  for (std::size_t k = 1; k < grid; ++k) {
    const double m = 1.0 - std::abs(phi_derivatives(z[k], a).phi_prime);
    if (m < slope.min_margin) {
      slope.min_margin = m;
      slope.worst_point = z[k];
    }
  }
  slope.holds = slope.min_margin > 0.0;
  report.results.push_back(slope);

  PropertyResult concave;
  concave.property = "concavity";
  concave.grid = grid;
  second_difference_margin(values, concave);
  report.results.push_back(concave);

  PropertyResult h_concave;
  h_concave.property = "h_concavity";
  h_concave.grid = grid;
  if (include_h_concavity) {
    std::vector<double> composed(grid + 1);
    for (std::size_t k = 0; k <= grid; ++k) composed[k] = h(std::min(2.0, L * values[k]));
    second_difference_margin(composed, h_concave);
  } else {
    h_concave.note = "skipped";
  }
  report.results.push_back(h_concave);
  return report;
}

GridScan scan_F(double a, double L, std::size_t points) {
  GridScan g;
  g.points = points;
  g.min_margin = std::numeric_limits<double>::infinity();
  const double top = phi_max(a);
  for (std::size_t k = 1; k <= points; ++k) {
    const double p = top * static_cast<double>(k) / static_cast<double>(points + 1);
    const double m = -F_value(p, a, L);
    if (m < g.min_margin) {
      g.min_margin = m;
      g.worst_x = p;
    }
  }
  return g;
}

GridScan scan_q(double x_max, std::size_t n) {
  GridScan g;
  g.points = n * n;
  g.min_margin = std::numeric_limits<double>::infinity();
  const auto N = static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double X = x_max * static_cast<double>(k) / N;
    for (std::size_t m = 1; m <= n; ++m) {
      const double Y = X + (x_max - X) * static_cast<double>(m) / N;
      const double margin = 1.0 - q(X, Y);
      if (margin < g.min_margin) {
        g.min_margin = margin;
        g.worst_x = X;
        g.worst_y = Y;
      }
    }
  }
  return g;
}

}  // namespace sphereflow
