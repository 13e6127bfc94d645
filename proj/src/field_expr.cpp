#include "gaugekit/field_expr.hpp"

#include "gaugekit/calculus.hpp"

#include <algorithm>
#include <cmath>

namespace gaugekit {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

bool near_axis(const Point& p) { return cylindrical_radius(p) < kAxisCutoff; }

std::optional<double> branch_azimuth(const Point& p, std::optional<double> hint) {
  if (!hint) return std::nullopt;
  return azimuth_near(p, *hint);
}

const char* landau_id(LandauGauge g) {
  switch (g) {
    case LandauGauge::Symmetric: return "landau.S";
    case LandauGauge::L1: return "landau.L1";
    case LandauGauge::L2: return "landau.L2";
    case LandauGauge::BawinBurnel: return "landau.BB";
  }
  return "landau.?";
}

}  // namespace

FieldExpr FieldExpr::solenoid_transverse(const SolenoidSpec& s) { return FieldExpr(SolenoidTransverse{s}); }
FieldExpr FieldExpr::solenoid_b(const SolenoidSpec& s) { return FieldExpr(SolenoidB{s}); }
FieldExpr FieldExpr::gauge_gradient(const GaugeChoice& g) { return FieldExpr(GaugeGradient{g}); }
FieldExpr FieldExpr::transformed_potential(const SolenoidSpec& s) { return FieldExpr(TransformedPotential{s}); }
FieldExpr FieldExpr::landau(LandauGauge gauge, double field) { return FieldExpr(Landau{gauge, field}); }

FieldExpr FieldExpr::numeric_biot_savart(const SolenoidSpec& s, const QuadratureConfig& cfg) {
  cfg.validate();
  return FieldExpr(NumericBiotSavart{s, cfg});
}

FieldExpr FieldExpr::curl(const DiffConfig& cfg) const {
  cfg.validate();
  return FieldExpr(NumericCurl{std::make_shared<const FieldExpr>(*this), cfg});
}

FieldExpr operator+(const FieldExpr& a, const FieldExpr& b) {
  return FieldExpr(FieldExpr::Sum{std::make_shared<const FieldExpr>(a), std::make_shared<const FieldExpr>(b)});
}

FieldExpr operator*(double k, const FieldExpr& f) {
  return FieldExpr(FieldExpr::Scale{k, std::make_shared<const FieldExpr>(f)});
}

Vector FieldExpr::operator()(const Point& p, std::optional<double> azimuth_hint) const {
  return std::visit(
      overloaded{
          [&](const SolenoidTransverse& n) -> Vector { return solenoid_transverse_potential(p, n.solenoid); },
          [&](const SolenoidB& n) -> Vector { return solenoid_b_field(p, n.solenoid); },
          [&](const GaugeGradient& n) -> Vector {
            return gaugekit::gauge_gradient(n.gauge, p, branch_azimuth(p, azimuth_hint));
          },
          [&](const TransformedPotential& n) -> Vector { return gaugekit::transformed_potential(p, n.solenoid); },
          [&](const Landau& n) -> Vector {
            return landau_potential(n.gauge, p, n.field, branch_azimuth(p, azimuth_hint));
          },
          [&](const NumericBiotSavart& n) -> Vector { return numeric_potential(p, n.solenoid, n.config).value; },
          [&](const NumericCurl& n) -> Vector { return numeric_curl(*n.inner, p, n.config, azimuth_hint); },
          [&](const Sum& n) -> Vector { return (*n.lhs)(p, azimuth_hint) + (*n.rhs)(p, azimuth_hint); },
          [&](const Scale& n) -> Vector { return n.factor * (*n.inner)(p, azimuth_hint); },
      },
      *node_);
}

bool FieldExpr::excluded(const Point& p) const {
  return std::visit(
      overloaded{
          [&](const SolenoidTransverse&) { return false; },
          [&](const SolenoidB& n) { return std::abs(cylindrical_radius(p) - n.solenoid.radius) < kShellBand; },
          [&](const GaugeGradient& n) { return n.gauge.multi_valued() && near_axis(p); },
          [&](const TransformedPotential&) { return near_axis(p); },
          [&](const Landau& n) { return n.gauge == LandauGauge::BawinBurnel && near_axis(p); },
          [&](const NumericBiotSavart& n) {
            return std::abs(cylindrical_radius(p) - n.solenoid.radius) <= 1e-3 * n.solenoid.radius;
          },
          [&](const NumericCurl& n) {
            const int reach = n.config.order / 2;
            for (int axis = 0; axis < 3; ++axis) {
              for (int k = -reach; k <= reach; ++k) {
                Point q = p;
                q(axis) += k * n.config.h;
                if (n.inner->excluded(q)) return true;
              }
            }
            return false;
          },
          [&](const Sum& n) { return n.lhs->excluded(p) || n.rhs->excluded(p); },
          [&](const Scale& n) { return n.inner->excluded(p); },
      },
      *node_);
}

bool FieldExpr::branch_dependent() const {
  return std::visit(
      overloaded{
          [](const GaugeGradient& n) { return n.gauge.gradient_needs_branch(); },
          [](const Landau& n) { return n.gauge == LandauGauge::BawinBurnel; },
          [](const NumericCurl& n) { return n.inner->branch_dependent(); },
          [](const Sum& n) { return n.lhs->branch_dependent() || n.rhs->branch_dependent(); },
          [](const Scale& n) { return n.inner->branch_dependent(); },
          [](const auto&) { return false; },
      },
      *node_);
}

bool FieldExpr::is_single_valued_gradient() const {
  return std::visit(
      overloaded{
          [](const GaugeGradient& n) { return !n.gauge.multi_valued(); },
          [](const Sum& n) { return n.lhs->is_single_valued_gradient() && n.rhs->is_single_valued_gradient(); },
          [](const Scale& n) { return n.inner->is_single_valued_gradient(); },
          [](const auto&) { return false; },
      },
      *node_);
}

std::vector<double> FieldExpr::radial_breakpoints() const {
  std::vector<double> out = std::visit(
      overloaded{
          [](const SolenoidTransverse& n) { return std::vector<double>{n.solenoid.radius}; },
          [](const SolenoidB& n) { return std::vector<double>{n.solenoid.radius}; },
          [](const TransformedPotential& n) { return std::vector<double>{n.solenoid.radius}; },
          [](const NumericBiotSavart& n) { return std::vector<double>{n.solenoid.radius}; },
          [](const NumericCurl& n) {
            std::vector<double> inner = n.inner->radial_breakpoints();
            std::vector<double> spread;
            const int reach = n.config.order / 2;
            for (double b : inner) {
              for (int k = -reach; k <= reach; ++k) spread.push_back(b + k * n.config.h);
            }
            return spread;
          },
          [](const Sum& n) {
            auto a = n.lhs->radial_breakpoints();
            auto b = n.rhs->radial_breakpoints();
            a.insert(a.end(), b.begin(), b.end());
            return a;
          },
          [](const Scale& n) { return n.inner->radial_breakpoints(); },
          [](const auto&) { return std::vector<double>{}; },
      },
      *node_);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string FieldExpr::id() const {
  return std::visit(
      overloaded{
          [](const SolenoidTransverse&) { return std::string("solenoid.AS"); },
          [](const SolenoidB&) { return std::string("solenoid.B"); },
          [](const GaugeGradient& n) { return "grad(" + n.gauge.id() + ")"; },
          [](const TransformedPotential&) { return std::string("solenoid.Aprime"); },
          [](const Landau& n) { return std::string(landau_id(n.gauge)); },
          [](const NumericBiotSavart&) { return std::string("biot_savart.A"); },
          [](const NumericCurl& n) { return "curl(" + n.inner->id() + ")"; },
          [](const Sum& n) { return n.lhs->id() + "+" + n.rhs->id(); },
          [](const Scale& n) { return std::to_string(n.factor) + "*" + n.inner->id(); },
      },
      *node_);
}

std::vector<DeltaSource> delta_ledger(const FieldExpr& f) {
  return std::visit(
      overloaded{
          [](const FieldExpr::SolenoidTransverse& n) {
            return std::vector<DeltaSource>{SurfaceCurrent{n.solenoid.radius, n.solenoid.field}};
          },
          [](const FieldExpr::NumericBiotSavart& n) {
            return std::vector<DeltaSource>{SurfaceCurrent{n.solenoid.radius, n.solenoid.field}};
          },
          [](const FieldExpr::SolenoidB& n) {
            return std::vector<DeltaSource>{SurfaceCurrent{n.solenoid.radius, n.solenoid.field}};
          },
          [](const FieldExpr::GaugeGradient& n) {
            if (const auto* sing = std::get_if<SingularSolenoidGauge>(&n.gauge.variant())) {
              return std::vector<DeltaSource>{StringField{-sing->flux}, StringCurrent{sing->flux}};
            }
            return std::vector<DeltaSource>{};
          },
          [](const FieldExpr::TransformedPotential& n) {
            return std::vector<DeltaSource>{SurfaceCurrent{n.solenoid.radius, n.solenoid.field},
                                            StringField{string_flux(n.solenoid)}, StringCurrent{n.solenoid.flux()}};
          },
          [](const FieldExpr::Sum& n) {
            auto a = delta_ledger(*n.lhs);
            auto b = delta_ledger(*n.rhs);
            a.insert(a.end(), b.begin(), b.end());
            return a;
          },
          [](const FieldExpr::Scale& n) {
            auto inner = delta_ledger(*n.inner);
            for (auto& d : inner) {
              std::visit(overloaded{[&](SurfaceCurrent& c) { c.strength *= n.factor; },
                                    [&](StringField& s) { s.flux *= n.factor; },
                                    [&](StringCurrent& s) { s.flux *= n.factor; }},
                         d);
            }
            return inner;
          },
          [](const auto&) { return std::vector<DeltaSource>{}; },
      },
      f.node());
}

}  // namespace gaugekit
