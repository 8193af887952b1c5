#pragma once

// Curve builders and independent reference computations shared by the unit tests.

#include <array>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "sphereflow/sphere_geometry.hpp"

namespace testing_support {

using sphereflow::Vec3;

inline constexpr double kPi = std::numbers::pi;

inline std::vector<Vec3> parallel_points(double theta, std::size_t n, double phase = 0.0) {
  std::vector<Vec3> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = 2.0 * kPi * (static_cast<double>(i) + phase) / static_cast<double>(n);
    p[i] = {std::sin(theta) * std::cos(u), std::sin(theta) * std::sin(u), std::cos(theta)};
  }
  return p;
}

inline sphereflow::DiscreteCurve parallel(double theta, std::size_t n) {
  return sphereflow::make_curve(parallel_points(theta, n));
}

/// Equator displaced by a single meridian mode, without the library's reparametrization.
inline std::vector<Vec3> wavy_points(std::size_t n, int mode, double amp, double theta0 = kPi / 2) {
  std::vector<Vec3> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    const double th = theta0 + amp * std::sin(mode * u);
    p[i] = {std::sin(th) * std::cos(u), std::sin(th) * std::sin(u), std::cos(th)};
  }
  return p;
}

/// Lemniscate in the tangent plane at the north pole, lifted to the sphere; the crossing
/// at the pole falls strictly inside a segment.
inline std::vector<Vec3> figure_eight_points(std::size_t n) {
  std::vector<Vec3> p(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = 2.0 * kPi * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
    const Vec3 q{0.5 * std::sin(u), 0.5 * std::sin(u) * std::cos(u), 1.0};
    p[i] = q / std::sqrt(sphereflow::dot(q, q));
  }
  return p;
}

/// Brute-force simplicity oracle: gnomonic projection of each segment pair onto the plane
/// tangent at their common midpoint direction, then an orientation-based 2D segment test.
inline bool brute_force_simple(std::span<const Vec3> pts) {
  const std::size_t n = pts.size();
  auto orient = [](const std::array<double, 2>& a, const std::array<double, 2>& b,
                   const std::array<double, 2>& c) {
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0]);
  };
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t m = k + 1; m < n; ++m) {
      if (m == k + 1 || (k == 0 && m == n - 1)) continue;
      const Vec3 a0 = pts[k], a1 = pts[(k + 1) % n], b0 = pts[m], b1 = pts[(m + 1) % n];
      Vec3 c = a0 + a1 + b0 + b1;
      const double cn = std::sqrt(sphereflow::dot(c, c));
      if (cn < 1e-9) continue;
      c = c / cn;
      // All four points must lie in the open hemisphere around c for the projection.
      if (sphereflow::dot(a0, c) <= 0 || sphereflow::dot(a1, c) <= 0 || sphereflow::dot(b0, c) <= 0 ||
          sphereflow::dot(b1, c) <= 0) {
        continue;
      }
      const Vec3 seed = std::abs(c.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
      Vec3 e1 = seed - sphereflow::dot(seed, c) * c;
      e1 = e1 / std::sqrt(sphereflow::dot(e1, e1));
      const Vec3 e2 = sphereflow::cross(c, e1);
      auto g = [&](const Vec3& p) {
        const double s = sphereflow::dot(p, c);
        return std::array<double, 2>{sphereflow::dot(p, e1) / s, sphereflow::dot(p, e2) / s};
      };
      const auto A = g(a0), B = g(a1), C = g(b0), D = g(b1);
      const double d1 = orient(A, B, C), d2 = orient(A, B, D);
      const double d3 = orient(C, D, A), d4 = orient(C, D, B);
      if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        return false;
      }
    }
  }
  return true;
}

}  // namespace testing_support
