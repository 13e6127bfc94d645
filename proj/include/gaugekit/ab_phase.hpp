#pragma once

#include "gaugekit/calculus.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gaugekit {

/// Charge, transverse potential and optional gauge term for phase
/// evaluation. The phase is e * integral (A_base + grad chi) . dx with no
/// hbar factor.
struct PhaseProbe {
  double charge = 1.0;
  FieldExpr base = FieldExpr::solenoid_transverse(SolenoidSpec{});
  std::optional<GaugeChoice> gauge;

  static PhaseProbe solenoid(const SolenoidSpec& s, std::optional<GaugeChoice> gauge = std::nullopt,
                             double charge = 1.0);
  /// Uniform-field (Landau) potential as the base.
  static PhaseProbe landau(LandauGauge base, double field, std::optional<GaugeChoice> gauge = std::nullopt,
                           double charge = 1.0);

  FieldExpr potential() const;
  std::string gauge_id() const { return gauge ? gauge->id() : std::string("none"); }
};

struct PhaseReport {
  double phase = 0.0;
  double transverse_part = 0.0;
  double gauge_part = 0.0;
  double error_estimate = 0.0;
  /// Set for gauges whose transformation adds a string field.
  bool singular_gauge = false;
  std::vector<std::string> notes;
};

inline constexpr double kPhaseTolerance = 1e-12;
inline constexpr double kSplitTolerance = 1e-10;

/// Phase along an open path, split into the transverse integral and the
/// endpoint gauge difference (continuous-azimuth branch for multi-valued chi).
PhaseReport open_path_phase(const PhaseProbe& probe, const Path& path, double tol = kPhaseTolerance);

/// Phase around a closed loop.
PhaseReport loop_phase(const PhaseProbe& probe, const LoopSpec& loop, double tol = kPhaseTolerance);

/// Phase difference between two arms sharing their endpoints.
PhaseReport interference_shift(const PhaseProbe& probe, const Path& c1, const Path& c2, double tol = kPhaseTolerance);

struct GaugeScanRow {
  std::string gauge_id;
  PhaseReport report;
};

struct GaugeScanDifference {
  std::string gauge_a;
  std::string gauge_b;
  double phase_difference = 0.0;
  double expected_shift = 0.0;
};

struct GaugeScanTable {
  std::vector<GaugeScanRow> rows;
  /// Each row against the first.
  std::vector<GaugeScanDifference> differences;
  double max_shift_error = 0.0;
  double max_transverse_spread = 0.0;
  bool consistent = true;
};

/// Open-path phase under each gauge (nullopt = bare potential). Checks that
/// phases differ by e * (chi_a - chi_b) endpoint shifts within 1e-8 and that
/// transverse parts agree within 1e-10.
GaugeScanTable gauge_dependence_scan(const PhaseProbe& base, const Path& path,
                                     const std::vector<std::optional<GaugeChoice>>& gauges,
                                     double tol = kPhaseTolerance);

struct VelocitySample {
  Vector velocity;
  Point position;

  VelocitySample(const Vector& v, const Point& x) : velocity(v), position(x) {
    if (!(v.norm() < 1.0)) throw GaugeError(ErrorKind::InvalidArgument, "speed must be below 1 in natural units");
  }
};

enum class EnergyModel { Boyer, VirtualPhoton };

/// Boyer: +e v . A^(S)(x); virtual-photon exchange: -e v . A^(S)(x).
double interaction_energy(EnergyModel model, const VelocitySample& sample, const SolenoidSpec& s, double charge = 1.0);

/// Sum of both models.
double energy_cancellation(const VelocitySample& sample, const SolenoidSpec& s, double charge = 1.0);

}  // namespace gaugekit
