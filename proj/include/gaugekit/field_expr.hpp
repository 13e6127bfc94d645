#pragma once

#include "gaugekit/analytic_fields.hpp"
#include "gaugekit/biot_savart.hpp"

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace gaugekit {

/// Finite-difference settings shared by the differential operators.
struct DiffConfig {
  double h = 1e-4;
  int order = 2;

  void validate() const {
    if (!(h > 0.0)) throw GaugeError(ErrorKind::InvalidArgument, "difference step must be positive");
    if (order != 2 && order != 4) throw GaugeError(ErrorKind::InvalidArgument, "difference order must be 2 or 4");
  }
  /// Furthest stencil offset from the centre point.
  double reach() const { return order == 4 ? 2.0 * h : h; }
};

/// Immutable, cheaply copyable vector field.
class FieldExpr {
 public:
  struct SolenoidTransverse {
    SolenoidSpec solenoid;
  };
  struct SolenoidB {
    SolenoidSpec solenoid;
  };
  struct GaugeGradient {
    GaugeChoice gauge;
  };
  struct TransformedPotential {
    SolenoidSpec solenoid;
  };
  struct Landau {
    LandauGauge gauge;
    double field;
  };
  struct NumericBiotSavart {
    SolenoidSpec solenoid;
    QuadratureConfig config;
  };
  struct NumericCurl {
    std::shared_ptr<const FieldExpr> inner;
    DiffConfig config;
  };
  struct Sum {
    std::shared_ptr<const FieldExpr> lhs;
    std::shared_ptr<const FieldExpr> rhs;
  };
  struct Scale {
    double factor;
    std::shared_ptr<const FieldExpr> inner;
  };
  using Node = std::variant<SolenoidTransverse, SolenoidB, GaugeGradient, TransformedPotential, Landau,
                            NumericBiotSavart, NumericCurl, Sum, Scale>;

  static FieldExpr solenoid_transverse(const SolenoidSpec& s);
  static FieldExpr solenoid_b(const SolenoidSpec& s);
  static FieldExpr gauge_gradient(const GaugeChoice& g);
  static FieldExpr transformed_potential(const SolenoidSpec& s);
  static FieldExpr landau(LandauGauge gauge, double field);
  static FieldExpr numeric_biot_savart(const SolenoidSpec& s, const QuadratureConfig& cfg = {});

  /// Field whose value is the finite-difference curl of this one.
  FieldExpr curl(const DiffConfig& cfg = {}) const;

  /// Evaluates at p. Branch-dependent fields use the azimuth branch nearest
  /// `azimuth_hint` (principal branch when absent).
  Vector operator()(const Point& p, std::optional<double> azimuth_hint = std::nullopt) const;

  bool excluded(const Point& p) const;
  /// True when the value depends on which azimuth branch is used.
  bool branch_dependent() const;
  /// True for gradients of single-valued gauge functions.
  bool is_single_valued_gradient() const;
  /// Cylinder radii across which the field is not smooth.
  std::vector<double> radial_breakpoints() const;

  const Node& node() const noexcept { return *node_; }
  std::string id() const;

  friend FieldExpr operator+(const FieldExpr& a, const FieldExpr& b);
  friend FieldExpr operator*(double k, const FieldExpr& f);
  friend FieldExpr operator-(const FieldExpr& a, const FieldExpr& b) { return a + (-1.0) * b; }

 private:
  explicit FieldExpr(Node node) : node_(std::make_shared<const Node>(std::move(node))) {}

  std::shared_ptr<const Node> node_;
};

/// Delta-supported sources tied to a potential: the currents that generate it
/// and any string field its curl carries.
std::vector<DeltaSource> delta_ledger(const FieldExpr& f);

}  // namespace gaugekit
