#pragma once

#include "gaugekit/analytic_fields.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace testsupport {

using gaugekit::Point;
using gaugekit::Vector;

// Exact solenoid potential written independently of the library: magnitude
// (Phi / 2 pi) * rho / R^2 inside, (Phi / 2 pi) / rho outside, along e_phi.
inline Vector solenoid_oracle(const Point& p, double radius, double field) {
  const double flux = M_PI * radius * radius * field;
  const double rho = std::hypot(p.x(), p.y());
  if (rho == 0.0) return Vector::Zero();
  const double mag = rho < radius ? flux / (2 * M_PI) * rho / (radius * radius) : flux / (2 * M_PI) / rho;
  const double phi = std::atan2(p.y(), p.x());
  return {-mag * std::sin(phi), mag * std::cos(phi), 0.0};
}

inline Point random_point(std::mt19937_64& rng, double rho_min, double rho_max, double z_span = 1.0) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double rho = rho_min + (rho_max - rho_min) * u(rng);
  const double phi = 2 * M_PI * u(rng);
  return {rho * std::cos(phi), rho * std::sin(phi), z_span * (2 * u(rng) - 1)};
}

inline std::vector<Point> random_points(std::uint64_t seed, int n, double rho_min, double rho_max,
                                        double z_span = 1.0) {
  std::mt19937_64 rng(seed);
  std::vector<Point> out;
  for (int i = 0; i < n; ++i) out.push_back(random_point(rng, rho_min, rho_max, z_span));
  return out;
}

// Random polynomial of total degree <= 3 with coefficients in [-1, 1].
inline gaugekit::PolynomialGauge random_polynomial(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> c(-1.0, 1.0);
  std::uniform_int_distribution<int> count(1, 5);
  std::uniform_int_distribution<int> power(0, 3);
  gaugekit::PolynomialGauge poly;
  const int n = count(rng);
  for (int i = 0; i < n; ++i) {
    gaugekit::Monomial m;
    m.coefficient = c(rng);
    do {
      m.px = power(rng);
      m.py = power(rng);
      m.pz = power(rng);
    } while (m.px + m.py + m.pz > 3);
    poly.terms.push_back(m);
  }
  return poly;
}

inline double evaluate(const gaugekit::PolynomialGauge& poly, const Point& p) {
  double sum = 0.0;
  for (const auto& m : poly.terms) {
    sum += m.coefficient * std::pow(p.x(), m.px) * std::pow(p.y(), m.py) * std::pow(p.z(), m.pz);
  }
  return sum;
}

}  // namespace testsupport
