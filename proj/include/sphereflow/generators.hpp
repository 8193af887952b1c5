#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "sphereflow/sphere_geometry.hpp"
#include "sphereflow/vec3.hpp"

namespace sphereflow {

/// Circle at polar angle theta0 from axis, vertex 0 on the first basis direction.
DiscreteCurve make_parallel(double theta0, const Vec3& axis, std::size_t n);

DiscreteCurve make_great_circle(const Vec3& axis, std::size_t n);

struct FourierSpec {
  Vec3 axis{0.0, 0.0, 1.0};
  double polar_angle = 1.5707963267948966;  // base parallel; pi/2 is the great circle
  std::vector<int> modes;
  std::vector<double> amplitudes;
  std::vector<double> phases;  // empty: drawn from the seed
  bool antipodal_symmetric = false;
};

/// Phases for random modes: mt19937_64(seed), each phase 2 pi (x >> 11) 2^-53.
std::vector<double> seeded_phases(std::uint64_t seed, std::size_t count);

/// Base parallel displaced along meridians by sum_k A_k sin(m_k u + phi_k), projected, and
/// reparametrized to n equal chords. With antipodal_symmetric only odd modes are kept and the
/// base must be the great circle. Errors: PreconditionViolation, NotSimple.
DiscreteCurve make_fourier_perturbed(const FourierSpec& spec, std::size_t n, std::uint64_t seed);

/// Orthonormal e1, e2 completing axis to a right-handed frame.
std::pair<Vec3, Vec3> tangent_basis(const Vec3& axis);

}  // namespace sphereflow
