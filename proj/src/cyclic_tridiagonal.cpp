#include "sphereflow/cyclic_tridiagonal.hpp"

#include <cassert>
#include <utility>

namespace sphereflow {

CyclicTridiagonal::CyclicTridiagonal(std::vector<double> lower, std::vector<double> diag,
                                     std::vector<double> upper)
    : lower_(std::move(lower)), upper_(std::move(upper)), diag_mod_(std::move(diag)) {
  const std::size_t n = diag_mod_.size();
  assert(n >= 3 && lower_.size() == n && upper_.size() == n);

  // Corner entries: A[0][n-1] = lower[0], A[n-1][0] = upper[n-1].
  const double beta = lower_[0];
  const double alpha = upper_[n - 1];
  gamma_ = -diag_mod_[0];
  diag_mod_[0] -= gamma_;
  diag_mod_[n - 1] -= alpha * beta / gamma_;
  v_last_ = beta / gamma_;

  c_prime_.resize(n);
  denom_.resize(n);
  denom_[0] = diag_mod_[0];
  c_prime_[0] = upper_[0] / denom_[0];
  for (std::size_t i = 1; i < n; ++i) {
    denom_[i] = diag_mod_[i] - lower_[i] * c_prime_[i - 1];
    c_prime_[i] = upper_[i] / denom_[i];
  }

  correction_.assign(n, 0.0);
  correction_[0] = gamma_;
  correction_[n - 1] = alpha;
  thomas(correction_);
  vz_ = 1.0 + correction_[0] + v_last_ * correction_[n - 1];
}

void CyclicTridiagonal::thomas(std::span<double> x) const {
  const std::size_t n = x.size();
  x[0] /= denom_[0];
  for (std::size_t i = 1; i < n; ++i) {
    x[i] = (x[i] - lower_[i] * x[i - 1]) / denom_[i];
  }
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] -= c_prime_[i] * x[i + 1];
  }
}

void CyclicTridiagonal::solve(std::span<double> rhs) const {
  assert(rhs.size() == diag_mod_.size());
  thomas(rhs);
  const std::size_t n = rhs.size();
  const double factor = (rhs[0] + v_last_ * rhs[n - 1]) / vz_;
  for (std::size_t i = 0; i < n; ++i) {
    rhs[i] -= factor * correction_[i];
  }
}

}  // namespace sphereflow
