#include "gaugekit/biot_savart.hpp"

#include "gaugekit/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <span>

namespace gaugekit {

namespace {

/// Nodes u in [0, 1] mapped to t = c sinh(a u) on [0, span]; clusters points
/// near t = 0 where the kernel peaks.
struct GradedNodes {
  std::vector<double> t;
  std::vector<double> w;
};

GradedNodes graded(double extent, double scale, int n) {
  const auto& rule = gauss_legendre(static_cast<std::size_t>(n));
  const double a = std::asinh(extent / scale);
  GradedNodes g;
  g.t.resize(n);
  g.w.resize(n);
  for (int i = 0; i < n; ++i) {
    const double u = 0.5 * (rule.nodes[i] + 1.0);
    g.t[i] = scale * std::sinh(a * u);
    g.w[i] = 0.5 * rule.weights[i] * scale * a * std::cosh(a * u);
  }
  return g;
}

}  // namespace

void QuadratureConfig::validate() const {
  if (n_phi < 8 || n_z < 8) throw GaugeError(ErrorKind::InvalidArgument, "n_phi and n_z must be at least 8");
  if (half_lengths.empty()) throw GaugeError(ErrorKind::InvalidArgument, "half_lengths must not be empty");
  for (std::size_t i = 0; i < half_lengths.size(); ++i) {
    if (half_lengths[i] < 4.0) throw GaugeError(ErrorKind::InvalidArgument, "half_lengths must be >= 4 R");
    if (i > 0 && !(half_lengths[i] > half_lengths[i - 1])) {
      throw GaugeError(ErrorKind::InvalidArgument, "half_lengths must be strictly ascending");
    }
  }
}

Vector truncated_potential(const Point& p, const SolenoidSpec& s, double half_length, int n_phi, int n_z) {
  const double R = s.radius;
  const double L = half_length * R;
  const double rho = cylindrical_radius(p);
  const double z = p.z();
  if (!(std::abs(z) < L)) throw GaugeError(ErrorKind::InvalidArgument, "evaluation point lies beyond the truncated solenoid");

  const double gap = std::abs(rho - R);
  const GradedNodes psi = graded(kPi, std::clamp(gap / R, 1e-3, 1.0), n_phi);
  const GradedNodes up = graded(L - z, std::clamp(gap, 1e-3 * R, R), n_z);
  const GradedNodes down = graded(L + z, std::clamp(gap, 1e-3 * R, R), n_z);

  // Components along e_phi and e_rho of the evaluation point; psi = phi' - phi
  // runs over [-pi, 0] and [0, pi], each half graded towards psi = 0.
  double a_phi = 0.0;
  double a_rho = 0.0;
  for (double side : {1.0, -1.0}) {
    for (int i = 0; i < n_phi; ++i) {
      const double angle = side * psi.t[i];
      const double half = 0.5 * angle;
      const double planar = gap * gap + 4.0 * rho * R * std::sin(half) * std::sin(half);
      double axial = 0.0;
      for (int k = 0; k < n_z; ++k) {
        axial += up.w[k] / std::sqrt(planar + up.t[k] * up.t[k]);
        axial += down.w[k] / std::sqrt(planar + down.t[k] * down.t[k]);
      }
      const double weight = psi.w[i] * axial;
      a_phi += weight * std::cos(angle);
      a_rho -= weight * std::sin(angle);
    }
  }
  const double prefactor = s.field * R / (4.0 * kPi);
  a_phi *= prefactor;
  a_rho *= prefactor;

  const double phi = principal_azimuth(p);
  const Vector e_phi(-std::sin(phi), std::cos(phi), 0.0);
  const Vector e_rho(std::cos(phi), std::sin(phi), 0.0);
  return a_phi * e_phi + a_rho * e_rho;
}

BiotSavartResult numeric_potential(const Point& p, const SolenoidSpec& s, const QuadratureConfig& cfg) {
  cfg.validate();
  if (std::abs(cylindrical_radius(p) - s.radius) <= 1e-3 * s.radius) {
    throw GaugeError(ErrorKind::TooCloseToShell, "point inside the 1e-3 R exclusion band around the shell");
  }
  BiotSavartResult result;
  std::vector<double> inv_sq;
  for (double L : cfg.half_lengths) {
    result.per_length.push_back(truncated_potential(p, s, L, cfg.n_phi, cfg.n_z));
    inv_sq.push_back(1.0 / (L * L));
  }
  const std::size_t n = result.per_length.size();
  if (cfg.extrapolation == Extrapolation::None || n == 1) {
    result.value = result.per_length.back();
    result.error_estimate = n > 1 ? (result.per_length[n - 1] - result.per_length[n - 2]).norm() : 0.0;
    return result;
  }

  const auto extrapolants =
      extrapolate_to_zero<Vector>(std::span<const double>(inv_sq), std::span<const Vector>(result.per_length));
  result.value = extrapolants.back();
  result.error_estimate = (extrapolants[n - 1] - extrapolants[n - 2]).norm();

  // The truncated values must close in on the limit monotonically.
  const double floor = 1e-12 * std::max(result.value.norm(), 1e-300) + 1e-15;
  double prev = (result.per_length.front() - result.value).norm();
  for (std::size_t k = 1; k < n; ++k) {
    const double cur = (result.per_length[k] - result.value).norm();
    if (cur > floor && cur >= prev) {
      throw GaugeError(ErrorKind::NonConvergent, "truncated potentials do not approach the extrapolated limit");
    }
    prev = cur;
  }
  return result;
}

Vector numeric_b_field(const Point& p, const SolenoidSpec& s, const QuadratureConfig& cfg, double h) {
  if (!(h > 0.0)) throw GaugeError(ErrorKind::InvalidArgument, "difference step must be positive");
  if (std::abs(cylindrical_radius(p) - s.radius) <= 5.0 * h) {
    throw GaugeError(ErrorKind::TooCloseToShell, "difference stencil straddles the solenoid shell");
  }
  auto a = [&](const Vector& offset) { return numeric_potential(p + offset, s, cfg).value; };
  const Vector dx = (a(Vector(h, 0, 0)) - a(Vector(-h, 0, 0))) / (2.0 * h);
  const Vector dy = (a(Vector(0, h, 0)) - a(Vector(0, -h, 0))) / (2.0 * h);
  const Vector dz = (a(Vector(0, 0, h)) - a(Vector(0, 0, -h))) / (2.0 * h);
  return {dy.z() - dz.y(), dz.x() - dx.z(), dx.y() - dy.x()};
}

}  // namespace gaugekit
