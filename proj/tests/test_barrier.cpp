#include <doctest.h>

#include <cmath>
#include <random>

#include "sphereflow/barrier.hpp"
#include "sphereflow/error.hpp"
#include "test_support.hpp"

using namespace sphereflow;
using testing_support::kPi;

namespace {

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an Error");
  return ErrorKind::IO;
}

// Finite-difference references, independent of the closed forms.
double fd1(auto&& f, double x, double h) { return (f(x + h) - f(x - h)) / (2 * h); }
double fd2(auto&& f, double x, double h) { return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h); }

}  // namespace

TEST_CASE("a = 0 is the exact sine limit and small a approaches it") {
  for (double z : {0.1, 0.25, 0.5, 0.9}) {
    CHECK(phi(z, 0.0) == std::sin(kPi * z) / kPi);
    CHECK(phi(z, 1e-6) == doctest::Approx(phi(z, 0.0)).epsilon(1e-12));
  }
}

TEST_CASE("closed-form derivatives match finite differences") {
  for (double a : {0.0, 0.3, 2.0, 15.0}) {
    for (double z : {0.05, 0.2, 0.5, 0.77}) {
      const auto e = phi_derivatives(z, a);
      auto f = [a](double x) { return phi(x, a); };
      CHECK(e.phi == doctest::Approx(phi(z, a)).epsilon(1e-15));
      CHECK(e.phi_prime == doctest::Approx(fd1(f, z, 1e-5)).epsilon(1e-8));
      CHECK(e.phi_double_prime == doctest::Approx(fd2(f, z, 1e-4)).epsilon(1e-5));
    }
  }
}

TEST_CASE("d phi / d a matches the published closed form and finite differences") {
  for (double a : {1e-4, 0.05, 1.0, 8.0}) {
    for (double z : {0.01, 0.3, 0.5}) {
      const double C = std::sin(kPi * z) / kPi;
      const double closed = (C / (1 + a * a * C * C) - phi(z, a)) / a;
      auto f = [z](double x) { return phi(z, x); };
      // The closed form cancels catastrophically for small a; allow its rounding error.
      CHECK(std::abs(dphi_da(z, a) - closed) <= 1e-9 * std::abs(closed) + 1e-15 / a);
      const double fd = fd1(f, a, 1e-3 * std::max(a, 0.1));
      CHECK(std::abs(dphi_da(z, a) - fd) <= 1e-5 * std::abs(fd) + 1e-10);
    }
  }
  CHECK(dphi_da(0.3, 0.0) == 0.0);
}

TEST_CASE("d phi / d tau matches a finite difference in tau") {
  for (double a : {0.1, 1.0, 10.0}) {
    for (double tau : {0.0, 0.01, 0.1}) {
      for (double z : {0.1, 0.5}) {
        auto f = [a, z](double t) { return phi(z, BarrierParams{a, t}.effective()); };
        const double fd = fd1(f, tau, 1e-5);
        CHECK(std::abs(dphi_dtau(z, a, tau) - fd) <= 1e-6 * std::abs(fd) + 1e-10);
      }
    }
  }
}

TEST_CASE("comparison residual vanishes on the reference grid") {
  double worst = 0.0;
  for (double a : {0.1, 1.0, 10.0}) {
    for (double tau : {0.0, 0.01, 0.1}) {
      for (int k = 0; k <= 1000; ++k) {
        const double z = 1e-4 + (1.0 - 2e-4) * k / 1000.0;
        worst = std::max(worst, std::abs(comparison_residual(z, a, tau)));
      }
      CHECK(std::abs(comparison_residual(0.5, a, tau)) <= 1e-8);
    }
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("comparison residual also vanishes at random points and parameters") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 500; ++k) {
    const double z = 0.01 + 0.98 * U(rng);
    const double a = 20.0 * U(rng);
    const double tau = 0.2 * U(rng);
    CHECK(std::abs(comparison_residual(z, a, tau)) <= 1e-8);
  }
}

TEST_CASE("profile properties: symmetry, slope bound, concavity") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const double z = U(rng);
    const double a = 30.0 * U(rng);
    CHECK(std::abs(phi(1.0 - z, a) - phi(z, a)) <= 1e-15);
    const auto e = phi_derivatives(z, a);
    CHECK(std::abs(e.phi_prime) <= 1.0);
    if (z > 1e-3 && z < 1 - 1e-3) CHECK(e.phi_double_prime < 0.0);
  }
}

TEST_CASE("spherical distance h") {
  CHECK(h(0.0) == 0.0);
  CHECK(h(2.0) == doctest::Approx(kPi).epsilon(1e-15));
  CHECK(h(std::sqrt(2.0)) == doctest::Approx(kPi / 2).epsilon(1e-15));
  for (double d : {0.1, 0.7, 1.3, 1.99}) CHECK(std::cos(h(d)) == doctest::Approx(1 - d * d / 2).epsilon(1e-14));
  CHECK(kind_of([] { h(-0.1); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { h(2.1); }) == ErrorKind::DomainError);
}

TEST_CASE("F is negative in both regimes") {
  CHECK(F_value(0.15, 1.0, 2 * kPi) < 0.0);
  const double L = 4 * kPi;
  const double a = a0_for_length(L) + 1.0;
  CHECK(F_value(0.5 * phi_max(a), a, L) < 0.0);
  CHECK(kind_of([] { F_value(0.0, 1.0, kPi); }) == ErrorKind::DomainError);
  CHECK(kind_of([] { F_value(phi_max(1.0), 1.0, kPi); }) == ErrorKind::DomainError);
}

TEST_CASE("sign of F matches the concavity of h(L phi)") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int compared = 0, positive = 0;
  while (compared < 100) {
    const double a = 0.1 + 10.0 * U(rng);
    const double L = kPi * (1.0 + 4.0 * U(rng));
    const double z = 0.02 + 0.96 * U(rng);
    const double dz = 1e-3;
    bool inside = true;
    double g[3];
    for (int m = 0; m < 3; ++m) {
      const double v = L * phi(z + (m - 1) * dz, a);
      if (v >= 1.95) inside = false;
      else g[m] = h(v);
    }
    if (!inside) continue;
    const double second = g[0] - 2 * g[1] + g[2];
    const double F = F_value(phi(z, a), a, L);
    CHECK((F < 0) == (second < 0));
    positive += F > 0;
    ++compared;
  }
  CHECK(positive > 0);  // both signs exercised
}

TEST_CASE("q(X, Y) limits and bound") {
  CHECK(q(2.0, 2.0 + 1e-7) == doctest::Approx(1.0).epsilon(1e-5));
  const double Y = 3.0;
  CHECK(q(0.0, Y) == doctest::Approx(Y * Y / ((1 + Y * Y) * std::atan(Y) * std::atan(Y))).epsilon(1e-15));
  CHECK(std::isfinite(q(0.0, 1e-3)));
  const GridScan g = scan_q(50.0, 120);
  CHECK(g.min_margin > 0.0);
}

TEST_CASE("a0 solves the defining equation") {
  CHECK(a0_for_length(2 * kPi) == 0.0);
  CHECK(a0_for_length(5.0) == 0.0);
  double previous = 0.0;
  for (double L : {7.0, 3 * kPi, 4 * kPi, 40.0}) {
    const double a0 = a0_for_length(L);
    CHECK(std::atan(a0 / kPi) / a0 == doctest::Approx(2.0 / L).epsilon(1e-11));
    CHECK(L * phi_max(a0) <= 2.0 + 1e-11);
    CHECK(a0 > previous);
    previous = a0;
  }
}

TEST_CASE("check_properties passes where the properties are proven") {
  for (auto [a, L] : {std::pair{1.0, kPi}, std::pair{0.1, 2 * kPi}, std::pair{10.0, 4 * kPi}}) {
    const auto rep = check_properties(a, L, 2000);
    CHECK(rep.all_hold());
    for (const auto& r : rep.results) {
      CHECK(r.holds);
      CHECK(r.grid == 2000);
    }
  }
}

TEST_CASE("check_properties at a = 0.5, L = 7 hits the L phi <= 2 precondition") {
  CHECK(7.0 * phi_max(0.5) > 2.0);
  CHECK(kind_of([] { check_properties(0.5, 7.0, 2000); }) == ErrorKind::PreconditionViolation);
  const auto skipped = check_properties(0.5, 7.0, 2000, false);
  CHECK(skipped.results.back().note == "skipped");
  CHECK(skipped.all_hold());
  for (double a : {a0_for_length(7.0), a0_for_length(7.0) + 0.5}) {
    const auto rep = check_properties(a, 7.0, 2000);
    CHECK(rep.results.back().property == "h_concavity");
    CHECK(rep.results.back().holds);
  }
  CHECK(kind_of([] { check_properties(1.0, kPi, 999); }) == ErrorKind::PreconditionViolation);
}

TEST_CASE("F grids are negative across both regimes") {
  for (double L : {kPi, 2 * kPi}) {
    for (double a : {0.1, 1.0, 10.0}) CHECK(scan_F(a, L, 500).min_margin > 0.0);
  }
  for (double L : {3 * kPi, 4 * kPi}) {
    const double a0 = a0_for_length(L);
    for (double a : {a0, 2 * a0}) CHECK(scan_F(a, L, 500).min_margin > 0.0);
  }
}
