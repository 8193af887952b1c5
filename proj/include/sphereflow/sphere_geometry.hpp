#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sphereflow/exec_policy.hpp"
#include "sphereflow/vec3.hpp"

namespace sphereflow {

inline constexpr std::size_t kMinVertices = 8;
inline constexpr double kOnSphereTolerance = 1e-12;

/// Closed polygon of unit vectors approximating a simple curve on S^2.
///
/// Vertex i is joined to vertex (i+1) mod n. Segment lengths are Euclidean chords
/// |p_{i+1} - p_i|, so the total length L is the length of the inscribed polygon.
/// Instances are immutable once built; use make_curve() to construct one.
class DiscreteCurve {
 public:
  std::size_t size() const noexcept { return points_.size(); }
  const Vec3& operator[](std::size_t i) const noexcept { return points_[i]; }
  std::span<const Vec3> points() const noexcept { return points_; }

  /// ds_i = |p_{i+1} - p_i| (cyclic).
  std::span<const double> segment_lengths() const noexcept { return ds_; }
  /// Arclength from vertex 0 to vertex i along increasing index; cumulative()[0] == 0.
  std::span<const double> cumulative() const noexcept { return cumulative_; }
  double length() const noexcept { return length_; }
  double min_segment() const noexcept { return min_ds_; }
  double max_segment() const noexcept { return max_ds_; }

  /// Length of the shorter of the two polygon arcs joining vertices i and j.
  double shorter_arc(std::size_t i, std::size_t j) const noexcept;

  /// Vertex index shifted by k, cyclically.
  std::size_t wrap(std::ptrdiff_t k) const noexcept {
    const auto n = static_cast<std::ptrdiff_t>(points_.size());
    return static_cast<std::size_t>(((k % n) + n) % n);
  }

 private:
  friend DiscreteCurve make_curve(std::vector<Vec3> points);

  std::vector<Vec3> points_;
  std::vector<double> ds_;
  std::vector<double> cumulative_;
  double length_ = 0.0;
  double min_ds_ = 0.0;
  double max_ds_ = 0.0;
};

/// Projects every point onto S^2 and validates the polygon.
/// Throws Error{TooFewVertices} for n < 8 and Error{DegenerateSegment} when two
/// consecutive points coincide after projection.
DiscreteCurve make_curve(std::vector<Vec3> points);

/// Per-vertex Frenet-type frame of a spherical curve, with the convention gamma = N x T
/// and curvature vector kappa_vec = -kappa N.
struct FrameField {
  std::vector<Vec3> tangent;
  std::vector<Vec3> normal;
  std::vector<double> kappa;      // geodesic curvature, signed
  std::vector<double> kappa_bar;  // space curvature, sqrt(1 + kappa^2)
  std::vector<double> ds;         // segment lengths, copied from the curve

  double max_abs_kappa() const;
  /// Trapezoidal quadrature of kappa^2 ds over the closed curve.
  double integral_kappa_squared() const;
};

FrameField frame_field(const DiscreteCurve& curve);

struct ChordData {
  double d = 0.0;    // Euclidean chord |x - y|
  double rho = 0.0;  // spherical distance, cos(rho) = <x, y>
  Vec3 w;            // (x - y) / d
  double ell = 0.0;  // shorter polygon arc between the two vertices
};

/// Throws Error{CoincidentPoints} when the two vertices are closer than 1e-14.
ChordData chord_data(const DiscreteCurve& curve, std::size_t i, std::size_t j);

/// Resamples the curve at n_out vertices with equal chord spacing, keeping vertex 0 fixed.
///
/// Vertices are placed on a periodic cubic spline through the input vertices
/// (parametrized by cumulative chord length) and projected to S^2; a short
/// fixed-point iteration then equalizes the chords of the output polygon.
DiscreteCurve reparametrize_uniform(const DiscreteCurve& curve, std::size_t n_out);

/// True iff no two non-adjacent segments (short great-circle arcs) intersect.
bool validate_simple(const DiscreteCurve& curve, ExecPolicy policy = ExecPolicy::parallel);

/// Discrete total space curvature: the sum of exterior turning angles of the polygon in R^3.
/// For any closed polygon this is at least 2 pi (Fenchel), with equality for planar convex ones.
double total_space_curvature(const DiscreteCurve& curve);

/// Normalized mean of the vertices; the centre of a small curve as a point on S^2.
Vec3 mean_direction(const DiscreteCurve& curve);

/// Unit vector along sum_i p_i x p_{i+1}; the pole of a great circle traversed counterclockwise.
Vec3 best_fit_axis(const DiscreteCurve& curve);

}  // namespace sphereflow
