#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "sphereflow/barrier.hpp"
#include "sphereflow/exec_policy.hpp"
#include "sphereflow/sphere_geometry.hpp"

namespace sphereflow {

/// Euclidean chord-arc profile psi(z) = min { d(x, y) : ell(x, y) / L in bin(z) } over vertex
/// pairs, with z the normalized shorter-arc length in (0, 1/2].
struct ChordArcProfile {
  double length = 0.0;
  std::vector<double> z_upper;    // bin k covers (z_upper[k] - 1/(2 n_bins), z_upper[k]]
  std::vector<double> psi;        // min chord in the bin; NaN when the bin is empty
  std::vector<double> z_at_min;   // normalized arc of the minimizing pair; NaN when empty
  std::vector<std::pair<std::size_t, std::size_t>> argmin_pairs;
  std::size_t empty_bins = 0;

  std::size_t bins() const noexcept { return psi.size(); }
  bool empty(std::size_t k) const;
};

/// n_bins >= 16, otherwise Error{PreconditionViolation}. Empty bins are counted, not fatal.
ChordArcProfile profile(const DiscreteCurve& curve, std::size_t n_bins,
                        ExecPolicy policy = ExecPolicy::parallel);

struct ZReport {
  double min_value = 0.0;  // min over admissible pairs of d - L phi(ell / L; a_eff)
  std::size_t i = 0;
  std::size_t j = 0;
  double a_eff = 0.0;
};

/// Pairs at cyclic index distance < 2 are excluded.
ZReport min_Z(const DiscreteCurve& curve, BarrierParams params,
              ExecPolicy policy = ExecPolicy::parallel);

/// Smallest a >= 0 with min_Z(curve, {a, 0}) >= 0, to relative tolerance rel_tol.
/// The upper bracket starts at 1 and doubles; Error{NotAdmissible} past 1e6.
double admissible_a(const DiscreteCurve& curve, double rel_tol = 1e-6,
                    ExecPolicy policy = ExecPolicy::parallel);

/// Least-squares coefficient c in psi(ell) = ell - c ell^3 over the smallest decade of
/// nonempty bins (ell in [ell_min, 10 ell_min]). Compare with (1 + max kappa^2) / 24.
/// Needs at least 8 points in the decade, otherwise Error{InsufficientData}.
double cubic_fit(const ChordArcProfile& prof);

}  // namespace sphereflow
