#include "gaugekit/field_map.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <string>

namespace gaugekit {

namespace {

constexpr double kCanvas = 600.0;

std::string fixed6(double v) {
  if (std::abs(v) < 5e-7) v = 0.0;  // no "-0.000000"
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

}  // namespace

FieldMap sample_field_map(const FieldExpr& f, const PlotWindow& window, int nx, int ny, bool mask_excluded) {
  if (nx < 2 || ny < 2) throw GaugeError(ErrorKind::InvalidArgument, "field map needs at least 2x2 arrows");
  if (!(window.x_max > window.x_min) || !(window.y_max > window.y_min)) {
    throw GaugeError(ErrorKind::InvalidArgument, "empty plot window");
  }
  FieldMap map;
  map.window = window;
  map.nx = nx;
  map.ny = ny;
  map.title = f.id();
  const double dx = (window.x_max - window.x_min) / nx;
  const double dy = (window.y_max - window.y_min) / ny;
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      const Point p(window.x_min + (i + 0.5) * dx, window.y_min + (j + 0.5) * dy, window.z);
      Arrow a{p, Vector::Zero(), false};
      if (f.excluded(p)) {
        if (!mask_excluded) throw GaugeError(ErrorKind::DomainViolation, "grid point in the excluded set of " + f.id());
        a.masked = true;
      } else {
        a.value = f(p);
      }
      map.arrows.push_back(a);
    }
  }
  return map;
}

std::string render_svg(const FieldMap& map) {
  const PlotWindow& w = map.window;
  const double scale = kCanvas / std::max(w.x_max - w.x_min, w.y_max - w.y_min);
  const double width = (w.x_max - w.x_min) * scale;
  const double height = (w.y_max - w.y_min) * scale;
  auto sx = [&](double x) { return (x - w.x_min) * scale; };
  auto sy = [&](double y) { return (w.y_max - y) * scale; };

  double max_norm = 0.0;
  for (const auto& a : map.arrows) {
    if (!a.masked) max_norm = std::max(max_norm, a.value.head<2>().norm());
  }
  const double cell = std::min((w.x_max - w.x_min) / map.nx, (w.y_max - w.y_min) / map.ny);
  const double unit = max_norm > 0.0 ? 0.9 * cell / max_norm : 0.0;

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fixed6(width) + "\" height=\"" + fixed6(height) +
         "\" viewBox=\"0 0 " + fixed6(width) + " " + fixed6(height) + "\">\n";
  svg += "<title>" + map.title + "</title>\n";
  svg += "<rect x=\"0\" y=\"0\" width=\"" + fixed6(width) + "\" height=\"" + fixed6(height) + "\" fill=\"white\"/>\n";
  if (map.solenoid_radius) {
    svg += "<circle cx=\"" + fixed6(sx(0.0)) + "\" cy=\"" + fixed6(sy(0.0)) + "\" r=\"" +
           fixed6(*map.solenoid_radius * scale) + "\" fill=\"none\" stroke=\"#888888\" stroke-width=\"1.5\"/>\n";
  }
  svg += "<g stroke=\"#1f4e9c\" fill=\"#1f4e9c\" stroke-width=\"1\">\n";
  for (const auto& a : map.arrows) {
    if (a.masked) continue;
    const double x0 = sx(a.base.x());
    const double y0 = sy(a.base.y());
    const double x1 = sx(a.base.x() + unit * a.value.x());
    const double y1 = sy(a.base.y() + unit * a.value.y());
    svg += "<line x1=\"" + fixed6(x0) + "\" y1=\"" + fixed6(y0) + "\" x2=\"" + fixed6(x1) + "\" y2=\"" + fixed6(y1) +
           "\"/>\n";
    const double len = std::hypot(x1 - x0, y1 - y0);
    if (len < 1e-9) continue;
    const double ux = (x1 - x0) / len;
    const double uy = (y1 - y0) / len;
    const double head = std::min(0.35 * len, 0.25 * cell * scale);
    const double bx = x1 - head * ux;
    const double by = y1 - head * uy;
    svg += "<polygon points=\"" + fixed6(x1) + "," + fixed6(y1) + " " + fixed6(bx - 0.5 * head * uy) + "," +
           fixed6(by + 0.5 * head * ux) + " " + fixed6(bx + 0.5 * head * uy) + "," + fixed6(by - 0.5 * head * ux) +
           "\"/>\n";
  }
  svg += "</g>\n</svg>\n";
  return svg;
}

void emit_field_map(const FieldExpr& f, const PlotWindow& window, int resolution, const std::filesystem::path& out,
                    std::optional<double> solenoid_radius) {
  FieldMap map = sample_field_map(f, window, resolution, resolution);
  map.solenoid_radius = solenoid_radius;
  std::ofstream file(out, std::ios::binary);
  if (!file) throw GaugeError(ErrorKind::InvalidArgument, "cannot open " + out.string());
  file << render_svg(map);
}

}  // namespace gaugekit
