#include "sphereflow/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "sphereflow/barrier.hpp"
#include "sphereflow/sphere_geometry.hpp"

namespace sphereflow::kernels {

namespace {

using Index = std::ptrdiff_t;

std::size_t bin_of(double z, std::size_t n_bins) {
  const double scaled = std::ceil(z * 2.0 * static_cast<double>(n_bins));
  const auto k = static_cast<std::ptrdiff_t>(scaled) - 1;
  return static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(k, 0, static_cast<Index>(n_bins) - 1));
}

// Scan row i of the pair matrix for min_Z, folding into best.
inline void min_z_row(const DiscreteCurve& curve, double a_eff, std::size_t i, PairMin& best) {
  const std::size_t n = curve.size();
  const double L = curve.length();
  const Vec3& pi = curve[i];
  for (std::size_t j = i + 2; j < n; ++j) {
    if (n - (j - i) < 2) break;
    const double d = distance(pi, curve[j]);
    const double value = d - L * phi(curve.shorter_arc(i, j) / L, a_eff);
    const PairMin candidate{value, i, j};
    if (better(candidate, best)) best = candidate;
  }
}

inline void chord_row(const DiscreteCurve& curve, std::size_t n_bins, std::size_t i,
                      std::vector<PairMin>& bins) {
  const std::size_t n = curve.size();
  const double L = curve.length();
  const Vec3& pi = curve[i];
  for (std::size_t j = i + 1; j < n; ++j) {
    const double z = curve.shorter_arc(i, j) / L;
    const PairMin candidate{distance(pi, curve[j]), i, j};
    auto& slot = bins[bin_of(z, n_bins)];
    if (better(candidate, slot)) slot = candidate;
  }
}

inline bool segments_adjacent(std::size_t k, std::size_t m, std::size_t n) {
  return m == k + 1 || (k == 0 && m == n - 1);
}

inline std::optional<std::pair<std::size_t, std::size_t>> crossing_row(const DiscreteCurve& curve,
                                                                       std::size_t k) {
  const std::size_t n = curve.size();
  const auto ds = curve.segment_lengths();
  const Vec3& a0 = curve[k];
  const Vec3& a1 = curve[(k + 1) % n];
  const Vec3 mid_a = 0.5 * (a0 + a1);
  for (std::size_t m = k + 1; m < n; ++m) {
    if (segments_adjacent(k, m, n)) continue;
    const Vec3& b0 = curve[m];
    const Vec3& b1 = curve[(m + 1) % n];
    const double reach = 0.5 * (ds[k] + ds[m]);
    if (distance(mid_a, 0.5 * (b0 + b1)) > reach + 1e-12) continue;
    if (arcs_intersect(a0, a1, b0, b1)) return std::pair{k, m};
  }
  return std::nullopt;
}

}  // namespace

bool arcs_intersect(const Vec3& a0, const Vec3& a1, const Vec3& b0, const Vec3& b1) {
  const Vec3 na = cross(a0, a1);
  const Vec3 nb = cross(b0, b1);
  const double s0 = dot(na, b0);
  const double s1 = dot(na, b1);
  if (!((s0 < 0.0 && s1 > 0.0) || (s0 > 0.0 && s1 < 0.0))) return false;
  const double t0 = dot(nb, a0);
  const double t1 = dot(nb, a1);
  if (!((t0 < 0.0 && t1 > 0.0) || (t0 > 0.0 && t1 < 0.0))) return false;
  // Both planes also meet at the antipodal point; require the arcs to face the same way.
  return dot(a0 + a1, b0 + b1) > 0.0;
}

PairMin min_z_serial(const DiscreteCurve& curve, double a_eff) {
  PairMin best;
  for (std::size_t i = 0; i < curve.size(); ++i) min_z_row(curve, a_eff, i, best);
  return best;
}

PairMin min_z_parallel(const DiscreteCurve& curve, double a_eff) {
  PairMin best;
  const auto n = static_cast<Index>(curve.size());
#pragma omp parallel
  {
    PairMin local;
#pragma omp for schedule(dynamic, 8) nowait
    for (Index i = 0; i < n; ++i) min_z_row(curve, a_eff, static_cast<std::size_t>(i), local);
#pragma omp critical(sphereflow_min_z)
    if (better(local, best)) best = local;
  }
  return best;
}

PairMin min_z(const DiscreteCurve& curve, double a_eff, ExecPolicy policy) {
  return policy == ExecPolicy::serial ? min_z_serial(curve, a_eff) : min_z_parallel(curve, a_eff);
}

std::vector<PairMin> binned_min_chord_serial(const DiscreteCurve& curve, std::size_t n_bins) {
  std::vector<PairMin> bins(n_bins);
  for (std::size_t i = 0; i < curve.size(); ++i) chord_row(curve, n_bins, i, bins);
  return bins;
}

std::vector<PairMin> binned_min_chord_parallel(const DiscreteCurve& curve, std::size_t n_bins) {
  std::vector<PairMin> bins(n_bins);
  const auto n = static_cast<Index>(curve.size());
#pragma omp parallel
  {
    std::vector<PairMin> local(n_bins);
#pragma omp for schedule(dynamic, 8) nowait
    for (Index i = 0; i < n; ++i) chord_row(curve, n_bins, static_cast<std::size_t>(i), local);
#pragma omp critical(sphereflow_binned)
    for (std::size_t k = 0; k < n_bins; ++k) {
      if (better(local[k], bins[k])) bins[k] = local[k];
    }
  }
  return bins;
}

std::vector<PairMin> binned_min_chord(const DiscreteCurve& curve, std::size_t n_bins,
                                      ExecPolicy policy) {
  return policy == ExecPolicy::serial ? binned_min_chord_serial(curve, n_bins)
                                      : binned_min_chord_parallel(curve, n_bins);
}

std::optional<std::pair<std::size_t, std::size_t>> first_crossing_serial(const DiscreteCurve& curve) {
  for (std::size_t k = 0; k < curve.size(); ++k) {
    if (auto hit = crossing_row(curve, k)) return hit;
  }
  return std::nullopt;
}

std::optional<std::pair<std::size_t, std::size_t>> first_crossing_parallel(
    const DiscreteCurve& curve) {
  const auto n = static_cast<Index>(curve.size());
  std::optional<std::pair<std::size_t, std::size_t>> first;
#pragma omp parallel
  {
    std::optional<std::pair<std::size_t, std::size_t>> local;
#pragma omp for schedule(dynamic, 8) nowait
    for (Index k = 0; k < n; ++k) {
      if (local) continue;  // rows are visited in increasing order within a thread
      local = crossing_row(curve, static_cast<std::size_t>(k));
    }
#pragma omp critical(sphereflow_crossing)
    if (local && (!first || *local < *first)) first = local;
  }
  return first;
}

std::optional<std::pair<std::size_t, std::size_t>> first_crossing(const DiscreteCurve& curve,
                                                                  ExecPolicy policy) {
  return policy == ExecPolicy::serial ? first_crossing_serial(curve)
                                      : first_crossing_parallel(curve);
}

}  // namespace sphereflow::kernels
