#include "gaugekit/analytic_fields.hpp"

#include <cmath>

namespace gaugekit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double ipow(double x, int n) {
  double r = 1.0;
  for (int i = 0; i < n; ++i) r *= x;
  return r;
}

double resolve_azimuth(const Point& p, std::optional<double> continuous_azimuth) {
  if (cylindrical_radius(p) < kAxisCutoff) {
    throw GaugeError(ErrorKind::AxisCrossing, "multi-valued gauge evaluated on the axis");
  }
  if (!continuous_azimuth) return principal_azimuth(p);
  return *continuous_azimuth;
}

}  // namespace

GaugeChoice GaugeChoice::regular(PolynomialGauge poly, std::string id) {
  for (const auto& t : poly.terms) {
    if (t.px < 0 || t.py < 0 || t.pz < 0) {
      throw GaugeError(ErrorKind::InvalidArgument, "polynomial gauge exponents must be non-negative");
    }
  }
  return GaugeChoice(std::move(poly), std::move(id));
}

GaugeChoice GaugeChoice::singular(const SolenoidSpec& s) { return GaugeChoice(SingularSolenoidGauge{s.flux()}, "gauge.sing"); }
GaugeChoice GaugeChoice::landau_link1(double field) { return GaugeChoice(LandauLink1Gauge{field}, "gauge.chi1"); }
GaugeChoice GaugeChoice::landau_link2(double field) { return GaugeChoice(LandauLink2Gauge{field}, "gauge.chi2"); }
GaugeChoice GaugeChoice::bawin_burnel(double field) { return GaugeChoice(BawinBurnelGauge{field}, "gauge.chitilde"); }

double gauge_value(const GaugeChoice& g, const Point& p, std::optional<double> continuous_azimuth) {
  return std::visit(
      overloaded{
          [&](const PolynomialGauge& poly) {
            double v = 0.0;
            for (const auto& t : poly.terms) v += t.coefficient * ipow(p.x(), t.px) * ipow(p.y(), t.py) * ipow(p.z(), t.pz);
            return v;
          },
          [&](const SingularSolenoidGauge& sing) {
            return -sing.flux / kTwoPi * resolve_azimuth(p, continuous_azimuth);
          },
          [&](const LandauLink1Gauge& l) { return 0.5 * l.field * p.x() * p.y(); },
          [&](const LandauLink2Gauge& l) { return -0.5 * l.field * p.x() * p.y(); },
          [&](const BawinBurnelGauge& bb) {
            const double phi = resolve_azimuth(p, continuous_azimuth);
            const double r2 = p.x() * p.x() + p.y() * p.y();
            return -0.5 * bb.field * r2 * phi;
          },
      },
      g.variant());
}

Vector gauge_gradient(const GaugeChoice& g, const Point& p, std::optional<double> continuous_azimuth) {
  return std::visit(
      overloaded{
          [&](const PolynomialGauge& poly) {
            Vector grad = Vector::Zero();
            for (const auto& t : poly.terms) {
              const double c = t.coefficient;
              if (t.px > 0) grad.x() += c * t.px * ipow(p.x(), t.px - 1) * ipow(p.y(), t.py) * ipow(p.z(), t.pz);
              if (t.py > 0) grad.y() += c * t.py * ipow(p.x(), t.px) * ipow(p.y(), t.py - 1) * ipow(p.z(), t.pz);
              if (t.pz > 0) grad.z() += c * t.pz * ipow(p.x(), t.px) * ipow(p.y(), t.py) * ipow(p.z(), t.pz - 1);
            }
            return grad;
          },
          [&](const SingularSolenoidGauge& sing) -> Vector {
            const double rho = cylindrical_radius(p);
            if (rho < kAxisCutoff) throw GaugeError(ErrorKind::AxisCrossing, "grad chi_sing is singular on the axis");
            // -(Phi/2pi)(1/rho) e_phi
            const double coeff = -sing.flux / (kTwoPi * rho * rho);
            return Vector(-coeff * p.y(), coeff * p.x(), 0.0);
          },
          [&](const LandauLink1Gauge& l) { return Vector(0.5 * l.field * p.y(), 0.5 * l.field * p.x(), 0.0); },
          [&](const LandauLink2Gauge& l) { return Vector(-0.5 * l.field * p.y(), -0.5 * l.field * p.x(), 0.0); },
          [&](const BawinBurnelGauge& bb) -> Vector {
            const double phi = resolve_azimuth(p, continuous_azimuth);
            // -B r phi e_r - (B r / 2) e_phi, with r e_r = (x, y) and r e_phi = (-y, x)
            return Vector(-bb.field * phi * p.x() + 0.5 * bb.field * p.y(),
                          -bb.field * phi * p.y() - 0.5 * bb.field * p.x(), 0.0);
          },
      },
      g.variant());
}

Vector landau_potential(LandauGauge variant, const Point& p, double field, std::optional<double> continuous_azimuth) {
  switch (variant) {
    case LandauGauge::Symmetric: return Vector(-0.5 * field * p.y(), 0.5 * field * p.x(), 0.0);
    case LandauGauge::L1: return Vector(-field * p.y(), 0.0, 0.0);
    case LandauGauge::L2: return Vector(0.0, field * p.x(), 0.0);
    case LandauGauge::BawinBurnel: {
      const double phi = resolve_azimuth(p, continuous_azimuth);
      return Vector(-field * phi * p.x(), -field * phi * p.y(), 0.0);
    }
  }
  return Vector::Zero();
}

const char* delta_source_name(const DeltaSource& d) {
  return std::visit(overloaded{[](const SurfaceCurrent&) { return "surface_current"; },
                               [](const StringField&) { return "string_field"; },
                               [](const StringCurrent&) { return "string_current"; }},
                    d);
}

double magnetic_flux_through(const DeltaSource& d, const DiscSpec& disc) {
  const auto* string = std::get_if<StringField>(&d);
  if (!string) return 0.0;
  const double offset = cylindrical_radius(disc.center());
  if (std::abs(offset - disc.radius()) < kClosureTolerance) {
    throw GaugeError(ErrorKind::DomainViolation, "string passes through the disc boundary");
  }
  return disc.contains_axis() ? string->flux * disc.normal_sign() : 0.0;
}

double current_through(const DeltaSource& d, double rho_min, double rho_max, double z_min, double z_max) {
  return std::visit(
      overloaded{
          [&](const SurfaceCurrent& c) {
            if (std::abs(rho_min - c.radius) < kShellBand || std::abs(rho_max - c.radius) < kShellBand) {
              throw GaugeError(ErrorKind::DomainViolation, "rectangle edge lies on the current sheet");
            }
            return (rho_min < c.radius && c.radius < rho_max) ? c.strength * (z_max - z_min) : 0.0;
          },
          [](const StringField&) { return 0.0; },
          [](const StringCurrent&) -> double {
            throw GaugeError(ErrorKind::InvalidArgument, "string current has no finite integrated pairing");
          },
      },
      d);
}

}  // namespace gaugekit
