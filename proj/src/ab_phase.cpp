#include "gaugekit/ab_phase.hpp"

#include <algorithm>
#include <cmath>

namespace gaugekit {

namespace {

bool is_singular(const std::optional<GaugeChoice>& g) {
  return g && std::holds_alternative<SingularSolenoidGauge>(g->variant());
}

/// chi(x_f) - chi(x_i), following the azimuth continuously along the path from
/// the principal branch at the start of the stored curve.
double gauge_difference(const GaugeChoice& g, const Path& path) {
  const Point a = path.start();
  const Point b = path.end();
  if (!g.multi_valued()) return gauge_value(g, b) - gauge_value(g, a);
  const double change = azimuth_change(path);
  const double anchor = principal_azimuth(path.is_reversed() ? b : a);
  const double phi_a = path.is_reversed() ? anchor - change : anchor;
  return gauge_value(g, b, phi_a + change) - gauge_value(g, a, phi_a);
}

PhaseReport path_phase(const PhaseProbe& probe, const Path& path, double tol) {
  PhaseReport report;
  report.gauge_part = probe.gauge ? probe.charge * gauge_difference(*probe.gauge, path) : 0.0;
  const auto total = line_integral(probe.potential(), path, tol);
  const auto transverse = line_integral(probe.base, path, tol);
  report.phase = probe.charge * total.value;
  report.transverse_part = probe.charge * transverse.value;
  report.error_estimate = std::abs(probe.charge) * (total.error_estimate + transverse.error_estimate);
  if (std::abs(report.phase - report.transverse_part - report.gauge_part) >= kSplitTolerance) {
    throw GaugeError(ErrorKind::NoConvergence, "phase does not split into transverse and gauge parts within 1e-10");
  }
  report.singular_gauge = is_singular(probe.gauge);
  if (report.singular_gauge) {
    report.notes.emplace_back("singular_gauge: multi-valued gauge adds a string field of flux -Phi on the axis");
  }
  return report;
}

}  // namespace

PhaseProbe PhaseProbe::solenoid(const SolenoidSpec& s, std::optional<GaugeChoice> gauge, double charge) {
  if (charge == 0.0) throw GaugeError(ErrorKind::InvalidArgument, "charge must be non-zero");
  return PhaseProbe{charge, FieldExpr::solenoid_transverse(s), std::move(gauge)};
}

PhaseProbe PhaseProbe::landau(LandauGauge base, double field, std::optional<GaugeChoice> gauge, double charge) {
  if (charge == 0.0) throw GaugeError(ErrorKind::InvalidArgument, "charge must be non-zero");
  return PhaseProbe{charge, FieldExpr::landau(base, field), std::move(gauge)};
}

FieldExpr PhaseProbe::potential() const {
  if (!gauge) return base;
  return base + FieldExpr::gauge_gradient(*gauge);
}

PhaseReport open_path_phase(const PhaseProbe& probe, const Path& path, double tol) {
  return path_phase(probe, path, tol);
}

PhaseReport loop_phase(const PhaseProbe& probe, const LoopSpec& loop, double tol) {
  PhaseReport report = path_phase(probe, loop.path(), tol);
  if (report.singular_gauge) {
    report.notes.emplace_back(
        "closed-loop phase expelled by the singular gauge; the changed wave-function boundary condition is not "
        "modelled");
  }
  return report;
}

PhaseReport interference_shift(const PhaseProbe& probe, const Path& c1, const Path& c2, double tol) {
  if ((c1.start() - c2.start()).norm() > kClosureTolerance || (c1.end() - c2.end()).norm() > kClosureTolerance) {
    throw GaugeError(ErrorKind::EndpointMismatch, "interfering arms must share both endpoints");
  }
  const PhaseReport a = path_phase(probe, c1, tol);
  const PhaseReport b = path_phase(probe, c2, tol);
  PhaseReport report;
  report.phase = a.phase - b.phase;
  report.transverse_part = a.transverse_part - b.transverse_part;
  report.gauge_part = a.gauge_part - b.gauge_part;
  report.error_estimate = a.error_estimate + b.error_estimate;
  report.singular_gauge = a.singular_gauge;
  report.notes = a.notes;
  return report;
}

GaugeScanTable gauge_dependence_scan(const PhaseProbe& base, const Path& path,
                                     const std::vector<std::optional<GaugeChoice>>& gauges, double tol) {
  if ((path.start() - path.end()).norm() <= kClosureTolerance) {
    throw GaugeError(ErrorKind::InvalidArgument, "gauge dependence scan needs an open path");
  }
  GaugeScanTable table;
  for (const auto& g : gauges) {
    PhaseProbe probe = base;
    probe.gauge = g;
    table.rows.push_back({probe.gauge_id(), path_phase(probe, path, tol)});
  }
  if (table.rows.empty()) return table;
  const PhaseReport& ref = table.rows.front().report;
  for (std::size_t i = 1; i < table.rows.size(); ++i) {
    const PhaseReport& r = table.rows[i].report;
    GaugeScanDifference diff{table.rows.front().gauge_id, table.rows[i].gauge_id, r.phase - ref.phase,
                             r.gauge_part - ref.gauge_part};
    table.max_shift_error = std::max(table.max_shift_error, std::abs(diff.phase_difference - diff.expected_shift));
    table.max_transverse_spread = std::max(table.max_transverse_spread, std::abs(r.transverse_part - ref.transverse_part));
    table.differences.push_back(std::move(diff));
  }
  table.consistent = table.max_shift_error < 1e-8 && table.max_transverse_spread < 1e-10;
  return table;
}

double interaction_energy(EnergyModel model, const VelocitySample& sample, const SolenoidSpec& s, double charge) {
  const double coupling = charge * sample.velocity.dot(solenoid_transverse_potential(sample.position, s));
  return model == EnergyModel::Boyer ? coupling : -coupling;
}

double energy_cancellation(const VelocitySample& sample, const SolenoidSpec& s, double charge) {
  return interaction_energy(EnergyModel::Boyer, sample, s, charge) +
         interaction_energy(EnergyModel::VirtualPhoton, sample, s, charge);
}

}  // namespace gaugekit
