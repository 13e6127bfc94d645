#pragma once

#include "gaugekit/field_expr.hpp"

#include <Eigen/Core>

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gaugekit {

/// J(i, j) = d f_i / d x_j by central differences. All stencil points of a
/// branch-dependent field use the branch of the centre point (nearest to
/// `azimuth_hint` when given).
Eigen::Matrix3d numeric_jacobian(const FieldExpr& f, const Point& p, const DiffConfig& cfg = {},
                                 std::optional<double> azimuth_hint = std::nullopt);
Vector numeric_curl(const FieldExpr& f, const Point& p, const DiffConfig& cfg = {},
                    std::optional<double> azimuth_hint = std::nullopt);
double numeric_divergence(const FieldExpr& f, const Point& p, const DiffConfig& cfg = {},
                          std::optional<double> azimuth_hint = std::nullopt);

struct CirculationReport {
  double value = 0.0;
  std::size_t n_points = 0;
  /// |I_2n - I_n| of the last refinement.
  double error_estimate = 0.0;
};

/// Composite 16-point Gauss-Legendre along each path piece; panels are
/// doubled until successive estimates agree to `tol` (at most 16 doublings).
CirculationReport line_integral(const FieldExpr& f, const Path& path, double tol = 1e-10);

struct FluxReport {
  double value = 0.0;
  double smooth_part = 0.0;
  double delta_part = 0.0;
  std::size_t n_points = 0;
  double error_estimate = 0.0;
};

/// z-flux of f through the disc: polar Gauss quadrature of the smooth field
/// plus the analytic contribution of each delta source.
FluxReport disc_flux(const FieldExpr& f, const DiscSpec& disc, std::span<const DeltaSource> deltas = {},
                     double tol = 1e-10);

struct StokesReport {
  double circulation = 0.0;
  double flux = 0.0;
  double residual = 0.0;
};

/// Compares the circulation of f around `loop` with the flux of its numeric
/// curl through `disc`; `loop` must trace the disc boundary.
StokesReport stokes_residual(const FieldExpr& f, const LoopSpec& loop, const DiscSpec& disc,
                             const DiffConfig& cfg = {}, double tol = 1e-10);
StokesReport stokes_residual(const FieldExpr& f, const DiscSpec& disc, const DiffConfig& cfg = {},
                             double tol = 1e-10);

struct ShrinkingLoopReport {
  double limit = 0.0;
  std::vector<double> radii;
  std::vector<double> circulations;
  /// Gap between the three-point and two-point extrapolants.
  double spread = 0.0;
};

/// Circulation around horizontal circles of decreasing radius about
/// `center`, extrapolated to zero radius by a polynomial in eps^2 through the
/// last three radii.
ShrinkingLoopReport shrinking_loop_circulation(const FieldExpr& f, const Point& center,
                                               std::span<const double> radii, double tol = 1e-12);

enum class HelmholtzClass { Transverse, Longitudinal, Neither, BothZeroField };

const char* to_string(HelmholtzClass c);

struct HelmholtzReport {
  double max_abs_div = 0.0;
  double max_abs_curl = 0.0;
  double max_abs_field = 0.0;
  HelmholtzClass classification = HelmholtzClass::Neither;
  /// Divergence- and curl-free on the samples without vanishing.
  bool harmonic = false;
  std::string notes;
};

inline constexpr double kHelmholtzThreshold = 1e-6;

HelmholtzReport helmholtz_classify(const FieldExpr& f, std::span<const Point> samples, const DiffConfig& cfg = {});

}  // namespace gaugekit
