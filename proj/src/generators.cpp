#include "sphereflow/generators.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include "sphereflow/error.hpp"

namespace sphereflow {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr std::size_t kOversample = 4;

Vec3 spherical(double theta, double u, const Vec3& axis, const Vec3& e1, const Vec3& e2) {
  return std::sin(theta) * (std::cos(u) * e1 + std::sin(u) * e2) + std::cos(theta) * axis;
}

}  // namespace

std::pair<Vec3, Vec3> tangent_basis(const Vec3& axis) {
  const Vec3 z = normalized(axis);
  const Vec3 seed = std::abs(z.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  const Vec3 e1 = normalized(reject(seed, z));
  return {e1, cross(z, e1)};
}

DiscreteCurve make_parallel(double theta0, const Vec3& axis, std::size_t n) {
  if (!(theta0 > 0.0 && theta0 < kPi)) {
    throw Error(ErrorKind::PreconditionViolation, "polar angle must lie in (0, pi)");
  }
  const Vec3 z = normalized(axis);
  const auto [e1, e2] = tangent_basis(z);
  std::vector<Vec3> pts(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(n);
    pts[i] = spherical(theta0, u, z, e1, e2);
  }
  return make_curve(std::move(pts));
}

DiscreteCurve make_great_circle(const Vec3& axis, std::size_t n) {
  return make_parallel(0.5 * kPi, axis, n);
}

std::vector<double> seeded_phases(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 rng(seed);
  std::vector<double> out(count);
  for (auto& p : out) p = 2.0 * kPi * static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return out;
}

DiscreteCurve make_fourier_perturbed(const FourierSpec& spec, std::size_t n, std::uint64_t seed) {
  if (spec.modes.size() != spec.amplitudes.size()) {
    throw Error(ErrorKind::PreconditionViolation, "modes and amplitudes differ in length");
  }
  if (!spec.phases.empty() && spec.phases.size() != spec.modes.size()) {
    throw Error(ErrorKind::PreconditionViolation, "phases and modes differ in length");
  }
  if (spec.antipodal_symmetric && std::abs(spec.polar_angle - 0.5 * kPi) > 1e-15) {
    throw Error(ErrorKind::PreconditionViolation, "antipodal symmetry needs the great circle as base");
  }
  if (n < kMinVertices) {
    throw Error(ErrorKind::TooFewVertices, "need at least " + std::to_string(kMinVertices) + " vertices");
  }
  const std::vector<double> phases =
      spec.phases.empty() ? seeded_phases(seed, spec.modes.size()) : spec.phases;

  const Vec3 z = normalized(spec.axis);
  const auto [e1, e2] = tangent_basis(z);
  const std::size_t dense = kOversample * n;
  std::vector<Vec3> pts(dense);
  for (std::size_t i = 0; i < dense; ++i) {
    const double u = 2.0 * kPi * static_cast<double>(i) / static_cast<double>(dense);
    double theta = spec.polar_angle;
    for (std::size_t k = 0; k < spec.modes.size(); ++k) {
      if (spec.antipodal_symmetric && spec.modes[k] % 2 == 0) continue;
      theta += spec.amplitudes[k] * std::sin(spec.modes[k] * u + phases[k]);
    }
    pts[i] = spherical(theta, u, z, e1, e2);
  }
  DiscreteCurve curve = reparametrize_uniform(make_curve(std::move(pts)), n);
  if (!validate_simple(curve)) {
    throw Error(ErrorKind::NotSimple, "perturbation amplitudes produce a self-intersecting curve");
  }
  return curve;
}

}  // namespace sphereflow
