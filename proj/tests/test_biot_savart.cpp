#include "gaugekit/biot_savart.hpp"
#include "gaugekit/quadrature.hpp"

#include "support.hpp"

#include <doctest.h>

#include <Eigen/Geometry>

#include <array>

using namespace gaugekit;

namespace {

const SolenoidSpec unit{1.0, 1.0};

Vector rotate_z(const Vector& v, double angle) {
  return Eigen::AngleAxisd(angle, Vector::UnitZ()) * v;
}

}  // namespace

TEST_CASE("Gauss-Legendre rules") {
  for (std::size_t n : {1u, 2u, 5u, 16u, 64u}) {
    const auto& rule = gauss_legendre(n);
    double w = 0.0;
    double x2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      w += rule.weights[i];
      x2 += rule.weights[i] * rule.nodes[i] * rule.nodes[i];
    }
    CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
    if (n >= 2) CHECK(x2 == doctest::Approx(2.0 / 3.0).epsilon(1e-14));
  }
  CHECK(&gauss_legendre(16) == &gauss_legendre(16));
}

TEST_CASE("Neville extrapolation to zero") {
  const std::array<double, 3> x{1.0, 0.25, 0.0625};
  std::array<double, 3> y{};
  for (std::size_t i = 0; i < 3; ++i) y[i] = 2.0 + 3.0 * x[i] - x[i] * x[i];
  const auto d = extrapolate_to_zero<double>(x, y);
  CHECK(d.back() == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("quadrature config validation") {
  QuadratureConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.n_phi = 4;
  CHECK_THROWS_AS(cfg.validate(), GaugeError);
  cfg = {};
  cfg.half_lengths = {8, 8};
  CHECK_THROWS_AS(cfg.validate(), GaugeError);
  cfg.half_lengths = {2, 8};
  CHECK_THROWS_AS(cfg.validate(), GaugeError);
}

TEST_CASE("numeric potential matches the closed form") {
  for (const Point& p : {Point(2, 0, 0), Point(0.5, 0, 0), Point(0, 1.1, 0.3), Point(-0.9, 0, -2)}) {
    const auto r = numeric_potential(p, unit);
    const Vector exact = testsupport::solenoid_oracle(p, 1.0, 1.0);
    CHECK((r.value - exact).norm() <= 1e-4 * exact.norm());
    CHECK(r.error_estimate >= 0.0);
    CHECK(std::abs(r.value.z()) <= r.error_estimate + 1e-14);
    const Vector e_rho = Vector(p.x(), p.y(), 0).normalized();
    CHECK(std::abs(r.value.dot(e_rho)) <= r.error_estimate + 1e-14);
    CHECK(r.per_length.size() == 4);
  }
  CHECK(numeric_potential({0, 0, 7}, unit).value.norm() <= 1e-6);
}

TEST_CASE("numeric potential rejects points near the shell") {
  try {
    numeric_potential({1.0005, 0, 0}, unit);
    FAIL("expected TooCloseToShell");
  } catch (const GaugeError& e) {
    CHECK(e.kind() == ErrorKind::TooCloseToShell);
  }
  CHECK_THROWS_AS(numeric_b_field({1.004, 0, 0}, unit), GaugeError);
}

TEST_CASE("numeric B field") {
  CHECK((numeric_b_field({0.5, 0, 0}, unit) - Vector(0, 0, 1)).norm() <= 1e-3);
  CHECK(numeric_b_field({3, 0, 0}, unit).norm() <= 1e-3);
  CHECK((numeric_b_field({0.5, 0, 0}, unit) - numeric_b_field({0.5, 0, 4}, unit)).norm() <= 2e-3);
}

TEST_CASE("azimuthal symmetry") {
  const Point p(1.7, 0.4, 0.2);
  const Vector base = numeric_potential(p, unit).value;
  for (double d : {0.3, 1.9, -2.6}) {
    const Vector rotated = numeric_potential(Point(rotate_z(p, d)), unit).value;
    CHECK((rotated - rotate_z(base, d)).norm() <= 1e-10);
  }
}

TEST_CASE("quadrature error shrinks at least fourfold per doubling until the truncation floor") {
  for (double rho : {0.5, 0.9, 1.1, 2.0}) {
    const Point p(rho, 0, 0);
    const double exact = testsupport::solenoid_oracle(p, 1.0, 1.0).norm();
    const Vector converged = truncated_potential(p, unit, 8.0, 256, 256);
    const double floor = std::abs(converged.norm() - exact);
    double previous_error = -1.0;
    double previous_quad = -1.0;
    for (int n : {8, 16, 32, 64}) {
      const Vector a = truncated_potential(p, unit, 8.0, n, n);
      const double error = std::abs(a.norm() - exact);
      const double quad = (a - converged).norm();
      if (previous_error >= 0.0) {
        const bool at_floor = std::abs(error - floor) <= 1e-6 * floor;
        CHECK((error <= previous_error / 4.0 || at_floor));
        CHECK((quad <= previous_quad / 4.0 || quad <= 1e-13));
      }
      previous_error = error;
      previous_quad = quad;
    }
  }
}

TEST_CASE("circulation of the numeric potential reproduces the flux") {
  // 32 panels of 16 Gauss points around the circle rho = 2.
  const auto& rule = gauss_legendre(16);
  QuadratureConfig cfg;
  cfg.n_phi = 32;
  cfg.n_z = 32;
  const int panels = 32;
  double circulation = 0.0;
  for (int k = 0; k < panels; ++k) {
    const double a = kTwoPi * k / panels;
    const double half = kPi / panels;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      const double phi = a + half * (1.0 + rule.nodes[i]);
      const Point x(2 * std::cos(phi), 2 * std::sin(phi), 0);
      const Vector dx(-2 * std::sin(phi), 2 * std::cos(phi), 0);
      circulation += rule.weights[i] * half * numeric_potential(x, unit, cfg).value.dot(dx);
    }
  }
  CHECK(circulation == doctest::Approx(kPi).epsilon(1e-3));
}
