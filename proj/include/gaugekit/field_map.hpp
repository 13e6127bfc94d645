#pragma once

#include "gaugekit/field_expr.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace gaugekit {

struct PlotWindow {
  double x_min = -3.0;
  double x_max = 3.0;
  double y_min = -3.0;
  double y_max = 3.0;
  double z = 0.0;
};

struct Arrow {
  Point base;
  Vector value;
  bool masked = false;
};

/// Field sampled on the cell centres of an nx-by-ny grid in a z-slice.
struct FieldMap {
  PlotWindow window;
  int nx = 0;
  int ny = 0;
  std::vector<Arrow> arrows;
  /// Drawn as a circle when present.
  std::optional<double> solenoid_radius;
  std::string title;
};

/// Excluded grid points are masked when `mask_excluded`, otherwise they raise
/// DomainViolation.
FieldMap sample_field_map(const FieldExpr& f, const PlotWindow& window, int nx, int ny, bool mask_excluded = true);

/// Static SVG with six-decimal coordinates; identical maps give identical bytes.
std::string render_svg(const FieldMap& map);

void emit_field_map(const FieldExpr& f, const PlotWindow& window, int resolution, const std::filesystem::path& out,
                    std::optional<double> solenoid_radius = std::nullopt);

}  // namespace gaugekit
