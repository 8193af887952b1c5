#include <doctest.h>

#include <cmath>

#include "sphereflow/chord_arc.hpp"
#include "sphereflow/error.hpp"
#include "sphereflow/estimate_harness.hpp"
#include "sphereflow/generators.hpp"
#include "test_support.hpp"

using namespace sphereflow;
using namespace testing_support;

namespace {

struct ParallelRun {
  RunResult result;
  double T = 0.0;
};

const ParallelRun& parallel_run() {
  static const ParallelRun r = [] {
    RunParams p;
    p.dt = 1e-4;
    p.t_max = 2.0;
    ParallelRun out{run(parallel(kPi / 3, 256), p)};
    out.T = out.result.outcome.T_est;
    return out;
  }();
  return r;
}

DiagnosticsSeries kappa_series(double rate, double t_end) {
  DiagnosticsSeries s;
  for (int k = 0; k <= 200; ++k) {
    DiagnosticsRecord r;
    r.step = static_cast<std::size_t>(k);
    r.t = t_end * k / 200.0;
    r.L = 2 * kPi - 1e-5;
    r.max_abs_kappa = 0.1 * std::exp(0.5 * rate * r.t);
    s.push_back(r);
  }
  return s;
}

}  // namespace

TEST_CASE("make_check passes exactly down to minus the tolerance") {
  const auto ok = make_check("x", {3, 4, 5}, {0.2, -0.01, 0.1}, 0.01);
  CHECK(ok.pass);
  CHECK(ok.min_margin == -0.01);
  CHECK(ok.worst_step == 4);
  CHECK_FALSE(make_check("x", {3, 4, 5}, {0.2, -0.0101, 0.1}, 0.01).pass);
  const auto empty = make_check("x", {}, {}, 0.0);
  CHECK_FALSE(empty.pass);
  CHECK(empty.note == "no data");
}

TEST_CASE("decay constants") {
  const auto zero = decay_constants(0.0, 0.7);
  CHECK(zero.delta == 1.0);
  CHECK(zero.C_const == 0.0);
  const double a = kPi / std::sqrt(2.0);  // 2 a^2 / pi^2 = 1
  const auto half = decay_constants(a, 0.7);
  CHECK(half.delta == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(half.C_const == doctest::Approx(0.25 / std::sqrt(std::expm1(1.4))).epsilon(1e-14));
}

TEST_CASE("fit_slope on an exact line") {
  CHECK(fit_slope({0, 1, 2, 3}, {1, -1, -3, -5}) == doctest::Approx(-2.0).epsilon(1e-15));
}

TEST_CASE("parallel run saturates the curvature bound and the lower length bound") {
  const auto& pr = parallel_run();
  const auto& r = pr.result;
  CHECK(r.a == 0.0);
  const auto curv = check_curvature_bound(r.series, r.a);
  CHECK(curv.pass);
  for (double m : curv.margins) CHECK(std::abs(m) <= 0.02);

  const auto sandwich = check_length_sandwich(r.series, pr.T, r.a);
  CHECK(sandwich.pass);
  const auto tau = check_tau_bracket(r.series, pr.T, r.a);
  CHECK(tau.pass);
  CHECK(check_chord_arc(r.checkpoints, r.a).pass);
}

TEST_CASE("improved length bound passes and loosens as a grows") {
  const auto& pr = parallel_run();
  const auto base = check_improved_length(pr.result.series, pr.T, 0.5);
  const auto inflated = check_improved_length(pr.result.series, pr.T, 5.0);
  CHECK(base.pass);
  CHECK(inflated.pass);
  for (std::size_t k = 0; k < base.margins.size(); ++k) CHECK(inflated.margins[k] >= base.margins[k] - 1e-15);
}

TEST_CASE("a series below the lower length bound fails the sandwich") {
  DiagnosticsSeries s;
  for (int k = 0; k < 10; ++k) {
    DiagnosticsRecord r;
    r.step = static_cast<std::size_t>(k);
    r.t = 0.05 * k;
    r.L = 0.9 * 2 * kPi * std::sqrt(-std::expm1(-2 * (1.0 - r.t)));
    s.push_back(r);
  }
  const auto c = check_length_sandwich(s, 1.0, 1.0);
  CHECK_FALSE(c.pass);
  CHECK(c.min_margin == doctest::Approx(-0.1).epsilon(1e-12));
}

TEST_CASE("parallel run is round at every checkpoint") {
  const auto& pr = parallel_run();
  const auto rep = check_roundness(pr.result.checkpoints, pr.T, pr.result.outcome.z_est);
  CHECK(rep.check.pass);
  for (double d : rep.max_deviation) CHECK(d <= 0.01);
  CHECK(rep.final_radius == doctest::Approx(1.0).epsilon(0.02));
  CHECK(rep.mean_sq_deviation.size() == rep.max_deviation.size());
}

TEST_CASE("halving the admissible parameter fails the chord-arc check at t = 0") {
  FourierSpec spec;
  spec.modes = {3};
  spec.amplitudes = {0.15};
  spec.phases = {0.0};
  spec.antipodal_symmetric = true;
  // At n = 256 the discretization allowance 10 (max ds)^2 L exceeds the violation.
  const auto c = make_fourier_perturbed(spec, 512, 0);
  const double a_star = admissible_a(c);
  const std::vector<Checkpoint> cps{{0, 0.0, 0.0, c}};
  CHECK(check_chord_arc(cps, a_star).pass);
  const auto halved = check_chord_arc(cps, 0.5 * a_star);
  CHECK_FALSE(halved.pass);
  CHECK(halved.worst_step == 0);
}

TEST_CASE("great-circle check") {
  const auto& pr = parallel_run();
  try {
    check_great_circle(pr.result.series, OutcomeKind::FiniteTimeShrink);
    FAIL("expected PreconditionViolation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PreconditionViolation);
  }

  DiagnosticsSeries flat(5);
  for (std::size_t k = 0; k < flat.size(); ++k) {
    flat[k].step = k;
    flat[k].t = 0.1 * static_cast<double>(k);
    flat[k].L = 2 * kPi;
    flat[k].max_abs_kappa = 1e-14;
  }
  const auto trivial = check_great_circle(flat, OutcomeKind::GreatCircleConvergence);
  CHECK(trivial.check.pass);
  CHECK(std::isnan(trivial.fitted_slope));

  const auto fast = check_great_circle(kappa_series(-2.0, 4.0), OutcomeKind::GreatCircleConvergence);
  CHECK(fast.check.pass);
  CHECK(fast.fitted_slope == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK_FALSE(check_great_circle(kappa_series(-1.0, 4.0), OutcomeKind::GreatCircleConvergence).check.pass);
}
