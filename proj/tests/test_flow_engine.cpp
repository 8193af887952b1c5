#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "sphereflow/error.hpp"
#include "sphereflow/flow_engine.hpp"
#include "sphereflow/generators.hpp"
#include "test_support.hpp"

using namespace sphereflow;
using namespace testing_support;

namespace {

const double kLn2 = std::log(2.0);

// Parallel with cos(theta0) = 1/2: cos theta(t) = e^t / 2.
double parallel_length(double t) { return 2 * kPi * std::sqrt(1.0 - std::exp(2 * t) / 4); }

// Closed-form integral of L^{-2} for the same parallel.
double parallel_tau(double t) {
  return (t - 0.5 * std::log(1.0 - std::exp(2 * t) / 4) + 0.5 * std::log(0.75)) / (4 * kPi * kPi);
}

// Exact model samples with T - t shrinking geometrically from T to T * 10^-decades.
DiagnosticsSeries synthetic_series(double T, double decades, std::size_t count) {
  DiagnosticsSeries s;
  for (std::size_t k = 0; k < count; ++k) {
    DiagnosticsRecord r;
    r.step = k;
    r.t = T - T * std::pow(10.0, -decades * static_cast<double>(k) / static_cast<double>(count - 1));
    r.L = 2 * kPi * std::sqrt(1.0 - std::exp(-2 * (T - r.t)));
    s.push_back(r);
  }
  return s;
}

RunParams fast_params() {
  RunParams p;
  p.dt = 1e-4;
  p.t_max = 2.0;
  p.a = 0.0;
  return p;
}

const RunResult& parallel_run() {
  static const RunResult r = run(parallel(kPi / 3, 256), fast_params());
  return r;
}

}  // namespace

TEST_CASE("dt_max is c_cfl times the squared minimum segment") {
  const FlowState s{parallel(kPi / 3, 128)};
  const double ds = s.curve.min_segment();
  CHECK(dt_max(s, 0.5) == doctest::Approx(0.5 * ds * ds).epsilon(1e-15));
  try {
    step(s, 1.01 * dt_max(s, 1.0));
    FAIL("expected StepTooLarge");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::StepTooLarge);
  }
}

TEST_CASE("the equator is a fixed point of each step") {
  FlowState s{parallel(kPi / 2, 256)};
  const auto original = s.curve;
  for (int k = 0; k < 20; ++k) {
    const auto before = s.curve;
    s = step(s, dt_max(s, 1.0));
    double moved = 0.0;
    for (std::size_t i = 0; i < s.curve.size(); ++i) moved = std::max(moved, distance(before[i], s.curve[i]));
    CHECK(moved < 1e-10);
  }
  CHECK(std::abs(s.curve.length() - original.length()) < 1e-10);
  CHECK(s.step == 20);
}

TEST_CASE("a single step on a parallel advances t and tau by the trapezoid rule") {
  const FlowState s{parallel(kPi / 3, 128)};
  const double dt = 0.5 * dt_max(s, 1.0);
  const auto next = step(s, dt);
  CHECK(next.t == dt);
  const double L0 = s.curve.length(), L1 = next.curve.length();
  CHECK(next.tau == doctest::Approx(0.5 * dt * (1 / (L0 * L0) + 1 / (L1 * L1))).epsilon(1e-14));
  CHECK(L1 < L0);
}

TEST_CASE("symmetrized steps keep the curve antipodally symmetric") {
  FourierSpec spec;
  spec.modes = {3};
  spec.amplitudes = {0.15};
  spec.phases = {0.0};
  spec.antipodal_symmetric = true;
  FlowState s{make_fourier_perturbed(spec, 128, 0)};
  StepOptions opts;
  opts.symmetrize = true;
  for (int k = 0; k < 50; ++k) s = step(s, std::min(1e-3, dt_max(s, 1.0)), opts);
  const std::size_t n = s.curve.size();
  for (std::size_t i = 0; i < n / 2; ++i) CHECK(norm(s.curve[i] + s.curve[i + n / 2]) < 1e-12);
}

TEST_CASE("parallel run tracks the closed-form shrinking solution") {
  const auto& r = parallel_run();
  REQUIRE(r.outcome.kind == OutcomeKind::FiniteTimeShrink);
  CHECK(std::abs(r.outcome.T_est - kLn2) <= 0.01 * kLn2);
  CHECK(norm(r.outcome.z_est - Vec3{0, 0, 1}) < 1e-2);
  CHECK(r.outcome.T_est > r.series.back().t);
  // Away from extinction the exact L(t) is insensitive to T.
  for (const auto& rec : r.series) {
    if (rec.t > 0.6) break;
    CHECK(std::abs(rec.L - parallel_length(rec.t)) <= 0.01 * parallel_length(rec.t));
    CHECK(std::abs(rec.tau - parallel_tau(rec.t)) <= 0.005 * parallel_tau(rec.t) + 1e-12);
  }
}

TEST_CASE("run invariants: monotone length, tau, Fenchel, L_t upper bound") {
  const auto& r = parallel_run();
  for (std::size_t k = 1; k < r.series.size(); ++k) {
    const auto& prev = r.series[k - 1];
    const auto& rec = r.series[k];
    CHECK(rec.L < prev.L);
    CHECK(rec.tau >= prev.tau);
    CHECK(rec.total_space_curvature >= 2 * kPi - 1e-3);
    // Parallels attain L_t = L - 4 pi^2 / L, so allow the same 2% as the dL/dt consistency check.
    CHECK(rec.dL_dt_observed <= prev.L - 4 * kPi * kPi / prev.L + 0.02 * std::abs(rec.dL_dt_observed));
    if (!rec.resampled) {
      CHECK(std::abs(rec.dL_dt_observed + rec.int_kappa_sq) <= 0.02 * rec.int_kappa_sq);
    }
  }
  CHECK(r.series.back().n >= 64);
  CHECK(std::any_of(r.series.begin(), r.series.end(), [](const auto& x) { return x.resampled; }));
}

TEST_CASE("min_Z is recorded exactly at checkpoints") {
  const auto& r = parallel_run();
  std::size_t cp = 0;
  for (const auto& rec : r.series) {
    const bool is_cp = cp < r.checkpoints.size() && r.checkpoints[cp].step == rec.step;
    CHECK(std::isnan(rec.min_Z) != is_cp);
    if (is_cp) ++cp;
  }
  CHECK(cp == r.checkpoints.size());
  CHECK(r.checkpoints.front().step == 0);
  CHECK(r.checkpoints.back().step == r.series.back().step);
}

TEST_CASE("observer sees every accepted step") {
  std::size_t calls = 0;
  const auto r = run(parallel(kPi / 2, 64), fast_params(), [&](const FlowState& s, const DiagnosticsRecord& rec) {
    CHECK(s.step == rec.step);
    ++calls;
  });
  CHECK(calls == r.series.size());
}

TEST_CASE("t_max without classification is NonConvergent") {
  RunParams p = fast_params();
  p.t_max = 0.01;
  try {
    run(parallel(kPi / 3, 64), p);
    FAIL("expected NonConvergent");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NonConvergent);
  }
}

TEST_CASE("the equator run classifies as great-circle convergence") {
  const auto r = run(parallel(kPi / 2, 64), fast_params());
  REQUIRE(r.outcome.kind == OutcomeKind::GreatCircleConvergence);
  CHECK(std::abs(std::abs(r.outcome.axis.z) - 1.0) < 1e-12);
  CHECK_THROWS_AS(estimate_extinction(r.series), Error);
}

TEST_CASE("symmetric perturbed equator converges to a great circle at two resolutions") {
  FourierSpec spec;
  spec.modes = {3};
  spec.amplitudes = {0.15};
  spec.phases = {0.0};
  spec.antipodal_symmetric = true;
  RunParams p;
  p.dt = 1e-3;
  p.t_max = 10.0;
  p.symmetrize = true;
  p.checkpoint_every = 1000;
  double final_L[2];
  int k = 0;
  for (std::size_t n : {128u, 256u}) {
    const auto r = run(make_fourier_perturbed(spec, n, 0), p);
    REQUIRE(r.outcome.kind == OutcomeKind::GreatCircleConvergence);
    final_L[k++] = r.series.back().L;
    CHECK(std::abs(r.series.back().L - 2 * kPi) < 1e-3);
  }
  CHECK(std::abs(final_L[0] - final_L[1]) < 1e-3);
}

TEST_CASE("estimate_extinction recovers its own model and needs data") {
  CHECK(estimate_extinction(synthetic_series(1.0, 6.0, 2000)) == doctest::Approx(1.0).epsilon(1e-6));
  try {
    estimate_extinction(synthetic_series(1.0, 1.0, 200));  // L never drops below 0.5
    FAIL("expected InsufficientData");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InsufficientData);
  }
  const auto s = synthetic_series(0.8, 6.0, 2000);
  CHECK(extinction_fit_residual(s, estimate_extinction(s)) < 1e-9);
}

TEST_CASE("fit_circle recovers an exact circle") {
  std::vector<std::array<double, 2>> pts;
  for (int k = 0; k < 37; ++k) {
    const double u = 0.17 * k;
    pts.push_back({0.3 + 1.7 * std::cos(u), -0.2 + 1.7 * std::sin(u)});
  }
  const auto fit = fit_circle(pts);
  CHECK(fit.center[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(fit.center[1] == doctest::Approx(-0.2).epsilon(1e-12));
  CHECK(fit.radius == doctest::Approx(1.7).epsilon(1e-12));
  CHECK(fit.rms < 1e-12);
}

TEST_CASE("rescaled parallel lies on the unit circle near extinction only") {
  const Vec3 north{0, 0, 1};
  for (double t : {0.69, 0.6931}) {
    const double theta = std::acos(std::exp(t) / 2);
    const auto c = parallel(theta, 256);
    const auto rc = rescaled_curve(c, t, kLn2, north);
    const auto fit = fit_circle(rc.planar);
    CHECK(std::abs(fit.radius - 1.0) < 0.01);
    for (double o : rc.out_of_plane) CHECK(std::abs(o) <= 0.6 * rc.scale);
  }
  // Far from extinction the scale is ~1 and the radius is the raw sin(theta).
  const auto early = rescaled_curve(parallel(kPi / 3, 256), 0.0, 5.0, north);
  CHECK(std::abs(fit_circle(early.planar).radius - 1.0) > 0.1);
}
