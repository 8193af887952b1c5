#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace sphereflow {

/// Periodic tridiagonal system
///
///   lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i],   indices mod n,
///
/// solved by the Thomas algorithm with a Sherman-Morrison correction for the two corner
/// entries. The factorization is computed once and reused for several right-hand sides.
/// Requires n >= 3 and a matrix for which the reduced (non-cyclic) system needs no pivoting,
/// e.g. strict diagonal dominance.
class CyclicTridiagonal {
 public:
  CyclicTridiagonal(std::vector<double> lower, std::vector<double> diag,
                    std::vector<double> upper);

  std::size_t size() const noexcept { return diag_mod_.size(); }

  /// Overwrites rhs with the solution.
  void solve(std::span<double> rhs) const;

 private:
  void thomas(std::span<double> x) const;

  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<double> diag_mod_;   // diagonal after the Sherman-Morrison rank-one split
  std::vector<double> c_prime_;    // forward-sweep multipliers
  std::vector<double> denom_;      // forward-sweep pivots
  std::vector<double> correction_; // solution of A' z = u
  double gamma_ = 0.0;
  double v_last_ = 0.0;            // v = (1, 0, ..., 0, v_last)
  double vz_ = 0.0;                // 1 + v . z
};

}  // namespace sphereflow
