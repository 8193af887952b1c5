#include "sphereflow/chord_arc.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "sphereflow/error.hpp"
#include "sphereflow/kernels.hpp"

namespace sphereflow {

bool ChordArcProfile::empty(std::size_t k) const { return std::isnan(psi[k]); }

ChordArcProfile profile(const DiscreteCurve& curve, std::size_t n_bins, ExecPolicy policy) {
  if (n_bins < 16) {
    throw Error(ErrorKind::PreconditionViolation, "profile needs at least 16 bins");
  }
  const auto bins = kernels::binned_min_chord(curve, n_bins, policy);
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double L = curve.length();

  ChordArcProfile prof;
  prof.length = L;
  prof.z_upper.resize(n_bins);
  prof.psi.assign(n_bins, nan);
  prof.z_at_min.assign(n_bins, nan);
  prof.argmin_pairs.assign(n_bins, {0, 0});
  for (std::size_t k = 0; k < n_bins; ++k) {
    prof.z_upper[k] = static_cast<double>(k + 1) / (2.0 * static_cast<double>(n_bins));
    if (std::isinf(bins[k].value)) {
      ++prof.empty_bins;
      continue;
    }
    prof.psi[k] = bins[k].value;
    prof.z_at_min[k] = curve.shorter_arc(bins[k].i, bins[k].j) / L;
    prof.argmin_pairs[k] = {bins[k].i, bins[k].j};
  }
  return prof;
}

ZReport min_Z(const DiscreteCurve& curve, BarrierParams params, ExecPolicy policy) {
  const double a_eff = params.effective();
  const auto best = kernels::min_z(curve, a_eff, policy);
  return {best.value, best.i, best.j, a_eff};
}

double admissible_a(const DiscreteCurve& curve, double rel_tol, ExecPolicy policy) {
  constexpr double kCap = 1e6;
  auto ok = [&](double a) { return min_Z(curve, {a, 0.0}, policy).min_value >= 0.0; };
  if (ok(0.0)) return 0.0;

  double hi = 1.0;
  while (!ok(hi)) {
    if (hi >= kCap) {
      throw Error(ErrorKind::NotAdmissible, "no barrier parameter up to 1e6 keeps Z >= 0");
    }
    hi = std::min(2.0 * hi, kCap);
  }
  double lo = (hi == 1.0) ? 0.0 : 0.5 * hi;
  while (hi - lo > rel_tol * hi) {
    const double mid = 0.5 * (lo + hi);
    (ok(mid) ? hi : lo) = mid;
  }
  return hi;
}

double cubic_fit(const ChordArcProfile& prof) {
  double ell_min = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < prof.bins(); ++k) {
    if (!prof.empty(k)) ell_min = std::min(ell_min, prof.z_at_min[k] * prof.length);
  }
  double num = 0.0;
  double den = 0.0;
  std::size_t used = 0;
  for (std::size_t k = 0; k < prof.bins(); ++k) {
    if (prof.empty(k)) continue;
    const double ell = prof.z_at_min[k] * prof.length;
    if (ell > 10.0 * ell_min) continue;
    const double ell3 = ell * ell * ell;
    num += ell3 * (ell - prof.psi[k]);
    den += ell3 * ell3;
    ++used;
  }
  if (used < 8) {
    throw Error(ErrorKind::InsufficientData,
                "cubic fit needs 8 nonempty bins in the smallest decade, found " +
                    std::to_string(used));
  }
  return num / den;
}

}  // namespace sphereflow
