#pragma once

#include "gaugekit/geometry.hpp"

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gaugekit {

/// Ideal infinitely long solenoid along the z-axis. `field` is both the
/// interior field magnitude and the surface-current density.
struct SolenoidSpec {
  double radius = 1.0;
  double field = 1.0;

  SolenoidSpec() = default;
  SolenoidSpec(double r, double b) : radius(r), field(b) {
    if (!(r > 0.0)) throw GaugeError(ErrorKind::InvalidArgument, "solenoid radius must be positive");
  }

  double flux() const { return kPi * radius * radius * field; }
};

inline constexpr double kShellBand = 1e-12;

/// Transverse potential of the solenoid: (Phi/2pi) rho/R^2 inside, (Phi/2pi)/rho outside.
template <typename Derived>
auto solenoid_transverse_potential(const Eigen::MatrixBase<Derived>& p, const SolenoidSpec& s) {
  using Scalar = typename Derived::Scalar;
  const Scalar rho = cylindrical_radius(p);
  const Scalar R = s.radius;
  const Scalar scale = Scalar(s.flux()) / Scalar(kTwoPi);
  // Written against (x, y) directly so the interior branch is smooth through the axis.
  const Scalar coeff = rho < R ? scale / (R * R) : scale / (rho * rho);
  return Vec3<Scalar>(-coeff * p(1), coeff * p(0), Scalar(0));
}

template <typename Derived>
auto solenoid_b_field(const Eigen::MatrixBase<Derived>& p, const SolenoidSpec& s) {
  using Scalar = typename Derived::Scalar;
  using std::abs;
  const Scalar rho = cylindrical_radius(p);
  if (abs(rho - Scalar(s.radius)) < Scalar(kShellBand)) {
    throw GaugeError(ErrorKind::OnShell, "B is discontinuous on the solenoid shell");
  }
  const Scalar bz = rho < Scalar(s.radius) ? Scalar(s.flux() / (kPi * s.radius * s.radius)) : Scalar(0);
  return Vec3<Scalar>(Scalar(0), Scalar(0), bz);
}

/// A' = A^(S) + grad chi_sing: zero outside, (Phi/2pi)(rho/R^2 - 1/rho) e_phi inside.
template <typename Derived>
auto transformed_potential(const Eigen::MatrixBase<Derived>& p, const SolenoidSpec& s) {
  using Scalar = typename Derived::Scalar;
  const Scalar rho = cylindrical_radius(p);
  if (rho < Scalar(kAxisCutoff)) throw GaugeError(ErrorKind::AxisCrossing, "A' is singular on the axis");
  if (rho >= Scalar(s.radius)) return Vec3<Scalar>::Zero().eval();
  const Scalar R = s.radius;
  const Scalar coeff = Scalar(s.flux() / kTwoPi) * (Scalar(1) / (R * R) - Scalar(1) / (rho * rho));
  return Vec3<Scalar>(-coeff * p(1), coeff * p(0), Scalar(0));
}

/// Net flux carried by the string generated by the singular gauge.
inline double string_flux(const SolenoidSpec& s) { return -s.flux(); }

// ---------------------------------------------------------------------------
// Gauge functions

struct Monomial {
  double coefficient = 0.0;
  int px = 0;
  int py = 0;
  int pz = 0;
};

/// Single-valued polynomial gauge sum c x^px y^py z^pz.
struct PolynomialGauge {
  std::vector<Monomial> terms;
};

struct SingularSolenoidGauge {
  double flux = 0.0;
};
struct LandauLink1Gauge {
  double field = 1.0;
};
struct LandauLink2Gauge {
  double field = 1.0;
};
struct BawinBurnelGauge {
  double field = 1.0;
};

class GaugeChoice {
 public:
  using Variant =
      std::variant<PolynomialGauge, SingularSolenoidGauge, LandauLink1Gauge, LandauLink2Gauge, BawinBurnelGauge>;

  static GaugeChoice regular(PolynomialGauge poly, std::string id = "custom.regular");
  static GaugeChoice singular(const SolenoidSpec& s);
  static GaugeChoice landau_link1(double field);
  static GaugeChoice landau_link2(double field);
  static GaugeChoice bawin_burnel(double field);

  const Variant& variant() const noexcept { return variant_; }
  const std::string& id() const noexcept { return id_; }
  bool multi_valued() const noexcept {
    return std::holds_alternative<SingularSolenoidGauge>(variant_) || std::holds_alternative<BawinBurnelGauge>(variant_);
  }
  /// Whether the gradient (not only the value) depends on the azimuth branch.
  bool gradient_needs_branch() const noexcept { return std::holds_alternative<BawinBurnelGauge>(variant_); }

 private:
  GaugeChoice(Variant v, std::string id) : variant_(std::move(v)), id_(std::move(id)) {}

  Variant variant_;
  std::string id_;
};

/// chi(p). Multi-valued gauges read the caller's continuous azimuth; the
/// others ignore it.
double gauge_value(const GaugeChoice& g, const Point& p, std::optional<double> continuous_azimuth = std::nullopt);

/// grad chi(p) in Cartesian components. Only the Bawin-Burnel gradient
/// depends on the branch; the principal azimuth is used when none is given.
Vector gauge_gradient(const GaugeChoice& g, const Point& p, std::optional<double> continuous_azimuth = std::nullopt);

// ---------------------------------------------------------------------------
// Landau system (uniform field over the whole plane)

enum class LandauGauge { Symmetric, L1, L2, BawinBurnel };

Vector landau_potential(LandauGauge variant, const Point& p, double field,
                        std::optional<double> continuous_azimuth = std::nullopt);

// ---------------------------------------------------------------------------
// Delta-supported sources. These are bookkeeping objects: they are never
// evaluated pointwise, only integrated analytically.

struct SurfaceCurrent {
  double radius = 1.0;
  double strength = 1.0;
};
/// Axial field line of total flux `flux` concentrated on rho = 0.
struct StringField {
  double flux = 0.0;
};
/// (Phi/2pi) d/drho(delta(rho)/rho) e_phi; carries no finite integrated pairing here.
struct StringCurrent {
  double flux = 0.0;
};

using DeltaSource = std::variant<SurfaceCurrent, StringField, StringCurrent>;

const char* delta_source_name(const DeltaSource& d);

/// Magnetic flux of the source through a z-normal disc. Currents carry none.
double magnetic_flux_through(const DeltaSource& d, const DiscSpec& disc);

/// Current crossing the half-plane rectangle rho in [rho_min, rho_max],
/// z in [z_min, z_max], counted along +e_phi.
double current_through(const DeltaSource& d, double rho_min, double rho_max, double z_min, double z_max);

}  // namespace gaugekit
