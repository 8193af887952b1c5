#include "sphereflow/sphere_geometry.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sphereflow/cyclic_tridiagonal.hpp"
#include "sphereflow/error.hpp"
#include "sphereflow/kernels.hpp"

namespace sphereflow {

namespace {

constexpr double kCoincident = 1e-14;

// Periodic cubic spline through (cumulative[k], values[k]) with period L.
class PeriodicSpline {
 public:
  PeriodicSpline(std::span<const double> knots, std::span<const double> h,
                 std::vector<double> values)
      : knots_(knots), h_(h), y_(std::move(values)) {
    const std::size_t n = y_.size();
    std::vector<double> lower(n), diag(n), upper(n);
    m_.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t km = (k + n - 1) % n;
      const std::size_t kp = (k + 1) % n;
      lower[k] = h_[km];
      diag[k] = 2.0 * (h_[km] + h_[k]);
      upper[k] = h_[k];
      m_[k] = 6.0 * ((y_[kp] - y_[k]) / h_[k] - (y_[k] - y_[km]) / h_[km]);
    }
    CyclicTridiagonal(std::move(lower), std::move(diag), std::move(upper)).solve(m_);
  }

  // s in [0, L); k is the interval containing s.
  double operator()(std::size_t k, double s) const {
    const std::size_t n = y_.size();
    const std::size_t kp = (k + 1) % n;
    const double hk = h_[k];
    const double b = (s - knots_[k]) / hk;
    const double a = 1.0 - b;
    return a * y_[k] + b * y_[kp] + ((a * a * a - a) * m_[k] + (b * b * b - b) * m_[kp]) * hk * hk / 6.0;
  }

 private:
  std::span<const double> knots_;
  std::span<const double> h_;
  std::vector<double> y_;
  std::vector<double> m_;
};

}  // namespace

double DiscreteCurve::shorter_arc(std::size_t i, std::size_t j) const noexcept {
  const double forward = std::abs(cumulative_[j] - cumulative_[i]);
  return std::min(forward, length_ - forward);
}

DiscreteCurve make_curve(std::vector<Vec3> points) {
  const std::size_t n = points.size();
  if (n < kMinVertices) {
    throw Error(ErrorKind::TooFewVertices,
                "curve has " + std::to_string(n) + " vertices, need at least " +
                    std::to_string(kMinVertices));
  }
  for (auto& p : points) {
    const double r2 = dot(p, p);
    if (!std::isfinite(r2) || r2 == 0.0) {
      throw Error(ErrorKind::DegenerateSegment, "vertex is zero or not finite");
    }
    // Leave vectors already unit to rounding untouched so CSV round trips are exact.
    if (std::abs(r2 - 1.0) > 4e-16) p = p / std::sqrt(r2);
  }

  DiscreteCurve c;
  c.points_ = std::move(points);
  c.ds_.resize(n);
  c.cumulative_.resize(n);
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = distance(c.points_[(i + 1) % n], c.points_[i]);
    if (!(d >= kCoincident)) {
      throw Error(ErrorKind::DegenerateSegment,
                  "vertices " + std::to_string(i) + " and " + std::to_string((i + 1) % n) +
                      " coincide");
    }
    c.ds_[i] = d;
    c.cumulative_[i] = acc;
    acc += d;
  }
  c.length_ = acc;
  const auto [lo, hi] = std::minmax_element(c.ds_.begin(), c.ds_.end());
  c.min_ds_ = *lo;
  c.max_ds_ = *hi;
  return c;
}

double FrameField::max_abs_kappa() const {
  double m = 0.0;
  for (double k : kappa) m = std::max(m, std::abs(k));
  return m;
}

double FrameField::integral_kappa_squared() const {
  const std::size_t n = kappa.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sum += kappa[i] * kappa[i] * 0.5 * (ds[(i + n - 1) % n] + ds[i]);
  }
  return sum;
}

FrameField frame_field(const DiscreteCurve& curve) {
  const std::size_t n = curve.size();
  const auto ds = curve.segment_lengths();
  FrameField f;
  f.tangent.resize(n);
  f.normal.resize(n);
  f.kappa.resize(n);
  f.kappa_bar.resize(n);
  f.ds.assign(ds.begin(), ds.end());

  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t im = (i + n - 1) % n;
    const std::size_t ip = (i + 1) % n;
    const Vec3& p = curve[i];
    const Vec3 fwd = curve[ip] - p;
    const Vec3 bwd = p - curve[im];
    const double hm = ds[im];
    const double hp = ds[i];
    if (hm < kCoincident || hp < kCoincident) {
      throw Error(ErrorKind::DegenerateSegment, "zero-length segment at vertex " + std::to_string(i));
    }

    // Second-order differences on nonuniform spacing.
    const Vec3 gamma_s = (hm * hm * fwd + hp * hp * bwd) / (hm * hp * (hm + hp));
    const Vec3 gamma_ss = 2.0 * (fwd / hp - bwd / hm) / (hm + hp);

    const Vec3 T = normalized(reject(gamma_s, p));
    const Vec3 N = cross(T, p);  // gamma = N x T
    // gamma_ss = -kappa N - gamma, so the curvature vector is gamma_ss + gamma.
    const Vec3 kappa_vec = reject(reject(gamma_ss + p, p), T);
    const double k = -dot(kappa_vec, N);

    f.tangent[i] = T;
    f.normal[i] = N;
    f.kappa[i] = k;
    f.kappa_bar[i] = std::sqrt(1.0 + k * k);
  }
  return f;
}

ChordData chord_data(const DiscreteCurve& curve, std::size_t i, std::size_t j) {
  const Vec3 diff = curve[i] - curve[j];
  const double d = norm(diff);
  if (!(d >= kCoincident)) {
    throw Error(ErrorKind::CoincidentPoints,
                "vertices " + std::to_string(i) + " and " + std::to_string(j) + " coincide");
  }
  ChordData c;
  c.d = d;
  c.rho = 2.0 * std::asin(std::min(1.0, 0.5 * d));
  c.w = diff / d;
  c.ell = curve.shorter_arc(i, j);
  return c;
}

DiscreteCurve reparametrize_uniform(const DiscreteCurve& curve, std::size_t n_out) {
  const std::size_t n = curve.size();
  const auto knots = curve.cumulative();
  const auto h = curve.segment_lengths();
  const double L = curve.length();

  std::vector<double> xs(n), ys(n), zs(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = curve[i].x;
    ys[i] = curve[i].y;
    zs[i] = curve[i].z;
  }
  const PeriodicSpline sx(knots, h, std::move(xs));
  const PeriodicSpline sy(knots, h, std::move(ys));
  const PeriodicSpline sz(knots, h, std::move(zs));

  auto evaluate = [&](double s) {
    s = std::fmod(s, L);
    if (s < 0.0) s += L;
    const auto it = std::upper_bound(knots.begin(), knots.end(), s);
    const std::size_t k = static_cast<std::size_t>(std::distance(knots.begin(), it)) - 1;
    return normalized(Vec3{sx(k, s), sy(k, s), sz(k, s)});
  };

  std::vector<double> sigma(n_out);
  for (std::size_t m = 0; m < n_out; ++m) {
    sigma[m] = L * static_cast<double>(m) / static_cast<double>(n_out);
  }
  std::vector<Vec3> pts(n_out);
  std::vector<double> chord(n_out);

  constexpr int kMaxIterations = 50;
  constexpr double kChordTolerance = 1e-12;
  double previous_worst = 0.0;
  for (int iter = 0; iter < kMaxIterations; ++iter) {
    for (std::size_t m = 0; m < n_out; ++m) pts[m] = evaluate(sigma[m]);
    double total = 0.0;
    for (std::size_t m = 0; m < n_out; ++m) {
      chord[m] = distance(pts[(m + 1) % n_out], pts[m]);
      total += chord[m];
    }
    const double target = total / static_cast<double>(n_out);
    double worst = 0.0;
    for (double c : chord) worst = std::max(worst, std::abs(c - target));
    if (worst <= kChordTolerance * target) break;
    if (iter > 0 && worst >= 0.5 * previous_worst) break;  // stalled at rounding level
    previous_worst = worst;

    // Shift each parameter by the mismatch between its cumulative chord and m * target.
    double acc = 0.0;
    for (std::size_t m = 1; m < n_out; ++m) {
      acc += chord[m - 1];
      sigma[m] += static_cast<double>(m) * target - acc;
    }
  }
  return make_curve(std::move(pts));
}

bool validate_simple(const DiscreteCurve& curve, ExecPolicy policy) {
  return !kernels::first_crossing(curve, policy).has_value();
}

double total_space_curvature(const DiscreteCurve& curve) {
  const std::size_t n = curve.size();
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 e0 = curve[i] - curve[(i + n - 1) % n];
    const Vec3 e1 = curve[(i + 1) % n] - curve[i];
    sum += std::atan2(norm(cross(e0, e1)), dot(e0, e1));
  }
  return sum;
}

Vec3 mean_direction(const DiscreteCurve& curve) {
  Vec3 sum;
  for (const auto& p : curve.points()) sum += p;
  return normalized(sum);
}

Vec3 best_fit_axis(const DiscreteCurve& curve) {
  const std::size_t n = curve.size();
  Vec3 sum;
  for (std::size_t i = 0; i < n; ++i) sum += cross(curve[i], curve[(i + 1) % n]);
  return normalized(sum);
}

}  // namespace sphereflow
