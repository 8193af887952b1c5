#pragma once

// O(n^2) pair scans over a discrete curve. Each kernel has a serial reference and an
// OpenMP version; reductions are exact minima with a lexicographic (value, i, j)
// tie-break, so both versions return identical results regardless of thread count.

#include <cstddef>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

#include "sphereflow/exec_policy.hpp"
#include "sphereflow/vec3.hpp"

namespace sphereflow {

class DiscreteCurve;

namespace kernels {

struct PairMin {
  double value = std::numeric_limits<double>::infinity();
  std::size_t i = 0;
  std::size_t j = 0;
};

/// Lexicographic (value, i, j) comparison; the reduction operator for every kernel.
constexpr bool better(const PairMin& a, const PairMin& b) {
  if (a.value != b.value) return a.value < b.value;
  if (a.i != b.i) return a.i < b.i;
  return a.j < b.j;
}

/// min over pairs i < j with cyclic index distance >= 2 of d_ij - L * phi(ell_ij / L; a_eff).
PairMin min_z_serial(const DiscreteCurve& curve, double a_eff);
PairMin min_z_parallel(const DiscreteCurve& curve, double a_eff);
PairMin min_z(const DiscreteCurve& curve, double a_eff, ExecPolicy policy);

/// Per-bin minimum chord over all pairs i < j, binned by ell / L in (0, 1/2].
/// Bin k holds z in ((k) / (2 n_bins), (k + 1) / (2 n_bins)]. Empty bins keep value = +inf.
std::vector<PairMin> binned_min_chord_serial(const DiscreteCurve& curve, std::size_t n_bins);
std::vector<PairMin> binned_min_chord_parallel(const DiscreteCurve& curve, std::size_t n_bins);
std::vector<PairMin> binned_min_chord(const DiscreteCurve& curve, std::size_t n_bins,
                                      ExecPolicy policy);

/// Lexicographically first pair of intersecting non-adjacent segments (segment k joins
/// vertex k to k+1), or nullopt when the polygon is simple.
std::optional<std::pair<std::size_t, std::size_t>> first_crossing_serial(const DiscreteCurve& curve);
std::optional<std::pair<std::size_t, std::size_t>> first_crossing_parallel(
    const DiscreteCurve& curve);
std::optional<std::pair<std::size_t, std::size_t>> first_crossing(const DiscreteCurve& curve,
                                                                  ExecPolicy policy);

/// True iff the short great-circle arcs a0-a1 and b0-b1 intersect.
bool arcs_intersect(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1);

}  // namespace kernels
}  // namespace sphereflow
