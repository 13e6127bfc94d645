#include "gaugekit/calculus.hpp"

#include "gaugekit/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace gaugekit {

namespace {

constexpr std::size_t kLineOrder = 16;
constexpr int kMaxLineDoublings = 16;
constexpr std::size_t kDiscOrder = 16;
constexpr int kMaxDiscDoublings = 7;

std::optional<double> centre_branch(const Point& p, std::optional<double> hint) {
  if (cylindrical_radius(p) < kAxisCutoff) return hint;
  return hint ? azimuth_near(p, *hint) : principal_azimuth(p);
}

// Parameter values where a piece crosses one of the field's radial
// breakpoints, bracketed by the piece ends.
std::vector<double> piece_edges(const PathPiece& piece, const std::vector<double>& breakpoints) {
  std::vector<double> edges{0.0, 1.0};
  constexpr int kScan = 256;
  auto rho = [&](double u) { return cylindrical_radius(piece.position(u)); };
  for (double b : breakpoints) {
    double u0 = 0.0;
    double f0 = rho(u0) - b;
    for (int j = 1; j <= kScan; ++j) {
      const double u1 = static_cast<double>(j) / kScan;
      const double f1 = rho(u1) - b;
      if ((f0 < 0.0) != (f1 < 0.0)) {
        double lo = u0;
        double hi = u1;
        for (int it = 0; it < 60 && hi - lo > 1e-16; ++it) {
          const double mid = 0.5 * (lo + hi);
          if ((rho(mid) - b < 0.0) == (f0 < 0.0)) {
            lo = mid;
          } else {
            hi = mid;
          }
        }
        edges.push_back(0.5 * (lo + hi));
      }
      u0 = u1;
      f0 = f1;
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end(), [](double a, double b) { return b - a < 1e-14; }), edges.end());
  edges.back() = 1.0;
  return edges;
}

double line_estimate(const FieldExpr& f, const Path& path, const std::vector<std::vector<double>>& edges,
                     std::size_t panels, std::size_t& n_points) {
  const auto& rule = gauss_legendre(kLineOrder);
  const std::size_t q = rule.size();
  const std::size_t pieces = path.piece_count();
  const bool tracks_branch = f.branch_dependent();

  std::vector<std::vector<double>> contrib(pieces);
  std::optional<double> hint;
  if (tracks_branch) hint = principal_azimuth(path.raw_piece(0).at(0.0));
  n_points = 0;

  // Walk the stored curve so the azimuth branch, and with it every term, is
  // the same for a path and its reverse; the orientation sign is applied last.
  for (std::size_t i = 0; i < pieces; ++i) {
    const PathPiece& piece = path.raw_piece(i);
    const auto& e = edges[i];
    const std::size_t per_piece = (e.size() - 1) * panels * q;
    contrib[i].assign(per_piece, 0.0);
    for (std::size_t m = 0; m < per_piece; ++m) {
      const std::size_t k = piece.reversed ? per_piece - 1 - m : m;
      const std::size_t segment = k / (panels * q);
      const std::size_t panel = (k / q) % panels;
      const std::size_t node = k % q;
      const double width = (e[segment + 1] - e[segment]) / static_cast<double>(panels);
      const double u = e[segment] + width * (static_cast<double>(panel) + 0.5 * (rule.nodes[node] + 1.0));
      const double w = 0.5 * width * rule.weights[node];
      const Point x = piece.position(u);
      if (f.excluded(x)) throw GaugeError(ErrorKind::DomainViolation, "path enters the excluded set of " + f.id());
      if (tracks_branch) hint = centre_branch(x, hint);
      contrib[i][k] = w * f(x, hint).dot(piece.tangent(u));
    }
    n_points += per_piece;
  }

  double total = 0.0;
  for (std::size_t i = 0; i < pieces; ++i) {
    double piece_sum = 0.0;
    for (double c : contrib[i]) piece_sum += c;
    total += path.raw_piece(i).reversed ? -piece_sum : piece_sum;
  }
  return path.orientation() * total;
}

}  // namespace

const char* to_string(HelmholtzClass c) {
  switch (c) {
    case HelmholtzClass::Transverse: return "transverse";
    case HelmholtzClass::Longitudinal: return "longitudinal";
    case HelmholtzClass::Neither: return "neither";
    case HelmholtzClass::BothZeroField: return "both";
  }
  return "unknown";
}

Eigen::Matrix3d numeric_jacobian(const FieldExpr& f, const Point& p, const DiffConfig& cfg,
                                 std::optional<double> azimuth_hint) {
  cfg.validate();
  const std::optional<double> branch = f.branch_dependent() ? centre_branch(p, azimuth_hint) : std::nullopt;
  auto eval = [&](int axis, double offset) -> Vector {
    Point q = p;
    q(axis) += offset;
    if (f.excluded(q)) throw GaugeError(ErrorKind::DomainViolation, "difference stencil enters the excluded set of " + f.id());
    return f(q, branch);
  };
  const double h = cfg.h;
  Eigen::Matrix3d jac;
  for (int axis = 0; axis < 3; ++axis) {
    Vector column;
    if (cfg.order == 2) {
      column = (eval(axis, h) - eval(axis, -h)) / (2.0 * h);
    } else {
      column = (-eval(axis, 2 * h) + 8.0 * eval(axis, h) - 8.0 * eval(axis, -h) + eval(axis, -2 * h)) / (12.0 * h);
    }
    jac.col(axis) = column;
  }
  return jac;
}

Vector numeric_curl(const FieldExpr& f, const Point& p, const DiffConfig& cfg, std::optional<double> azimuth_hint) {
  const Eigen::Matrix3d j = numeric_jacobian(f, p, cfg, azimuth_hint);
  return {j(2, 1) - j(1, 2), j(0, 2) - j(2, 0), j(1, 0) - j(0, 1)};
}

double numeric_divergence(const FieldExpr& f, const Point& p, const DiffConfig& cfg,
                          std::optional<double> azimuth_hint) {
  return numeric_jacobian(f, p, cfg, azimuth_hint).trace();
}

CirculationReport line_integral(const FieldExpr& f, const Path& path, double tol) {
  if (!(tol > 0.0)) throw GaugeError(ErrorKind::InvalidArgument, "tolerance must be positive");
  CirculationReport report;
  const std::vector<double> breakpoints = f.radial_breakpoints();
  std::vector<std::vector<double>> edges;
  for (std::size_t i = 0; i < path.piece_count(); ++i) edges.push_back(piece_edges(path.raw_piece(i), breakpoints));
  std::size_t panels = 1;
  double prev = line_estimate(f, path, edges, panels, report.n_points);
  for (int d = 0; d < kMaxLineDoublings; ++d) {
    panels *= 2;
    const double cur = line_estimate(f, path, edges, panels, report.n_points);
    report.value = cur;
    report.error_estimate = std::abs(cur - prev);
    if (report.error_estimate < tol) return report;
    prev = cur;
  }
  throw GaugeError(ErrorKind::NoConvergence, "line integral of " + f.id() + " did not reach the tolerance");
}

FluxReport disc_flux(const FieldExpr& f, const DiscSpec& disc, std::span<const DeltaSource> deltas, double tol) {
  if (!(tol > 0.0)) throw GaugeError(ErrorKind::InvalidArgument, "tolerance must be positive");
  const Point c = disc.center();
  const double a = disc.radius();
  const bool centred = cylindrical_radius(c) < 1e-12;

  if (f.branch_dependent() && disc.contains_axis()) {
    throw GaugeError(ErrorKind::DomainViolation, "branch-dependent field has no single value over a disc around the axis");
  }
  const std::optional<double> branch =
      f.branch_dependent() ? std::optional<double>(principal_azimuth(c)) : std::nullopt;

  std::vector<double> edges{0.0};
  if (centred) {
    for (double b : f.radial_breakpoints()) {
      if (b > 0.0 && b < a) edges.push_back(b);
    }
  }
  edges.push_back(a);

  const auto& rule = gauss_legendre(kDiscOrder);
  auto estimate = [&](std::size_t sub, std::size_t& n_points) {
    const std::size_t theta_panels = 2 * sub;
    std::vector<double> theta, theta_w;
    for (std::size_t t = 0; t < theta_panels; ++t) {
      for (std::size_t k = 0; k < rule.size(); ++k) {
        theta.push_back(kTwoPi * (static_cast<double>(t) + 0.5 * (rule.nodes[k] + 1.0)) / static_cast<double>(theta_panels));
        theta_w.push_back(kTwoPi * 0.5 * rule.weights[k] / static_cast<double>(theta_panels));
      }
    }
    double sum = 0.0;
    n_points = 0;
    for (std::size_t e = 0; e + 1 < edges.size(); ++e) {
      const double width = (edges[e + 1] - edges[e]) / static_cast<double>(sub);
      for (std::size_t s = 0; s < sub; ++s) {
        const double lo = edges[e] + width * static_cast<double>(s);
        for (std::size_t k = 0; k < rule.size(); ++k) {
          const double r = lo + 0.5 * width * (rule.nodes[k] + 1.0);
          const double wr = 0.5 * width * rule.weights[k];
          double ring = 0.0;
          for (std::size_t t = 0; t < theta.size(); ++t) {
            const Point x = c + Vector(r * std::cos(theta[t]), r * std::sin(theta[t]), 0.0);
            if (f.excluded(x)) throw GaugeError(ErrorKind::DomainViolation, "disc meets the excluded set of " + f.id());
            ring += theta_w[t] * f(x, branch).z();
          }
          sum += wr * r * ring;
          n_points += theta.size();
        }
      }
    }
    return disc.normal_sign() * sum;
  };

  FluxReport report;
  for (const auto& d : deltas) report.delta_part += magnetic_flux_through(d, disc);

  std::size_t sub = 1;
  double prev = estimate(sub, report.n_points);
  for (int d = 0; d < kMaxDiscDoublings; ++d) {
    sub *= 2;
    const double cur = estimate(sub, report.n_points);
    report.error_estimate = std::abs(cur - prev);
    report.smooth_part = cur;
    if (report.error_estimate < tol) {
      report.value = report.smooth_part + report.delta_part;
      return report;
    }
    prev = cur;
  }
  throw GaugeError(ErrorKind::NoConvergence, "disc flux of " + f.id() + " did not reach the tolerance");
}

StokesReport stokes_residual(const FieldExpr& f, const LoopSpec& loop, const DiscSpec& disc, const DiffConfig& cfg,
                             double tol) {
  const Point start = loop.path().start();
  const Vector offset = start - disc.center();
  if (std::abs(offset.z()) > 1e-12 || std::abs(offset.head<2>().norm() - disc.radius()) > 1e-9) {
    throw GaugeError(ErrorKind::InvalidArgument, "loop does not lie on the disc boundary");
  }
  StokesReport report;
  report.circulation = line_integral(f, loop.path(), tol).value;
  report.flux = disc_flux(f.curl(cfg), disc, {}, tol).value;
  report.residual = std::abs(report.circulation - report.flux);
  return report;
}

StokesReport stokes_residual(const FieldExpr& f, const DiscSpec& disc, const DiffConfig& cfg, double tol) {
  return stokes_residual(f, disc.boundary(), disc, cfg, tol);
}

ShrinkingLoopReport shrinking_loop_circulation(const FieldExpr& f, const Point& center, std::span<const double> radii,
                                               double tol) {
  if (radii.size() < 3) throw GaugeError(ErrorKind::InvalidArgument, "need at least three radii");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 0.0) || (i > 0 && !(radii[i] < radii[i - 1]))) {
      throw GaugeError(ErrorKind::InvalidArgument, "radii must be positive and strictly descending");
    }
  }
  ShrinkingLoopReport report;
  for (double eps : radii) {
    report.radii.push_back(eps);
    report.circulations.push_back(line_integral(f, Path::circle(center, eps), tol).value);
  }
  const std::size_t n = radii.size();
  const std::array<double, 3> x{radii[n - 3] * radii[n - 3], radii[n - 2] * radii[n - 2], radii[n - 1] * radii[n - 1]};
  const std::array<double, 3> y{report.circulations[n - 3], report.circulations[n - 2], report.circulations[n - 1]};
  const auto three = extrapolate_to_zero<double>(x, y);
  const auto two = extrapolate_to_zero<double>(std::span(x).subspan(1), std::span(y).subspan(1));
  report.limit = three.back();
  report.spread = std::abs(three.back() - two.back());
  if (report.spread > 1e-6) {
    throw GaugeError(ErrorKind::NoLimit, "shrinking-loop circulations have no stable limit");
  }
  return report;
}

HelmholtzReport helmholtz_classify(const FieldExpr& f, std::span<const Point> samples, const DiffConfig& cfg) {
  HelmholtzReport report;
  for (const Point& p : samples) {
    if (f.excluded(p)) throw GaugeError(ErrorKind::DomainViolation, "sample lies in the excluded set of " + f.id());
    const Eigen::Matrix3d j = numeric_jacobian(f, p, cfg);
    const Vector curl(j(2, 1) - j(1, 2), j(0, 2) - j(2, 0), j(1, 0) - j(0, 1));
    report.max_abs_div = std::max(report.max_abs_div, std::abs(j.trace()));
    report.max_abs_curl = std::max(report.max_abs_curl, curl.norm());
    report.max_abs_field = std::max(report.max_abs_field, f(p).norm());
  }
  const bool div_free = report.max_abs_div < kHelmholtzThreshold;
  const bool curl_free = report.max_abs_curl < kHelmholtzThreshold;
  if (div_free && curl_free) {
    if (report.max_abs_field < 1e-12) {
      report.classification = HelmholtzClass::BothZeroField;
    } else {
      // Harmonic on the samples: a global gradient counts as longitudinal,
      // anything else (e.g. a multi-valued gauge gradient) as transverse.
      report.harmonic = true;
      report.classification =
          f.is_single_valued_gradient() ? HelmholtzClass::Longitudinal : HelmholtzClass::Transverse;
      report.notes = "harmonic";
    }
  } else if (div_free) {
    report.classification = HelmholtzClass::Transverse;
  } else if (curl_free) {
    report.classification = HelmholtzClass::Longitudinal;
  } else {
    report.classification = HelmholtzClass::Neither;
  }
  return report;
}

}  // namespace gaugekit
