#pragma once

#include "gaugekit/analytic_fields.hpp"

#include <vector>

namespace gaugekit {

enum class Extrapolation { None, Richardson };

/// Quadrature for the truncated solenoid. `half_lengths` are in units of R.
struct QuadratureConfig {
  int n_phi = 64;
  int n_z = 64;
  std::vector<double> half_lengths{8.0, 16.0, 32.0, 64.0};
  Extrapolation extrapolation = Extrapolation::Richardson;

  /// Throws InvalidArgument when the config breaks its invariants.
  void validate() const;
};

struct BiotSavartResult {
  Vector value = Vector::Zero();
  /// Potential of the solenoid truncated at each half-length, in config order.
  std::vector<Vector> per_length;
  /// Spread of the last two extrapolants.
  double error_estimate = 0.0;
};

/// Potential of a finite solenoid |z'| <= half_length * R by product
/// Gauss-Legendre quadrature over the current sheet.
Vector truncated_potential(const Point& p, const SolenoidSpec& s, double half_length, int n_phi, int n_z);

/// Potential of the infinite solenoid from the Biot-Savart integral:
/// truncated solenoids extrapolated in 1/L^2.
BiotSavartResult numeric_potential(const Point& p, const SolenoidSpec& s, const QuadratureConfig& cfg = {});

/// Central-difference curl of numeric_potential with step h.
Vector numeric_b_field(const Point& p, const SolenoidSpec& s, const QuadratureConfig& cfg = {}, double h = 1e-3);

}  // namespace gaugekit
