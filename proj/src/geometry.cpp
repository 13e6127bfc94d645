#include "gaugekit/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace gaugekit {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::AxisCrossing: return "AxisCrossing";
    case ErrorKind::NotClosed: return "NotClosed";
    case ErrorKind::OnShell: return "OnShell";
    case ErrorKind::TooCloseToShell: return "TooCloseToShell";
    case ErrorKind::NonConvergent: return "NonConvergent";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::NoLimit: return "NoLimit";
    case ErrorKind::DomainViolation: return "DomainViolation";
    case ErrorKind::EndpointMismatch: return "EndpointMismatch";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Vector to_cylindrical(const Point& p) {
  return {cylindrical_radius(p), principal_azimuth(p), p.z()};
}

Point from_cylindrical(double rho, double phi, double z) {
  return {rho * std::cos(phi), rho * std::sin(phi), z};
}

Path::Path(Kind kind, std::vector<PathPiece> pieces)
    : kind_(kind), pieces_(std::make_shared<const std::vector<PathPiece>>(std::move(pieces))) {
  if (pieces_->empty()) throw GaugeError(ErrorKind::InvalidArgument, "path needs at least one piece");
}

Path Path::parametric(std::function<Point(double)> position, std::function<Vector(double)> tangent) {
  Path path(Kind::Parametric, {PathPiece{std::move(position), std::move(tangent), false}});
  if (path.continuity_ratio() >= 10.0) {
    throw GaugeError(ErrorKind::InvalidArgument, "parametric map failed the sampled continuity check");
  }
  return path;
}

Path Path::parametric(std::function<Point(double)> position) {
  auto tangent = [position](double u) -> Vector {
    constexpr double h = 1e-4;
    // Shift the five-point stencil inward near the ends of [0, 1].
    const double c = std::clamp(u, 2 * h, 1.0 - 2 * h);
    const Vector central =
        (-position(c + 2 * h) + 8.0 * position(c + h) - 8.0 * position(c - h) + position(c - 2 * h)) / (12.0 * h);
    if (c == u) return central;
    const Vector second = (position(c + h) - 2.0 * position(c) + position(c - h)) / (h * h);
    return central + (u - c) * second;
  };
  return parametric(std::move(position), std::move(tangent));
}

Path Path::polyline(std::vector<Point> vertices) {
  if (vertices.size() < 2) throw GaugeError(ErrorKind::InvalidArgument, "polyline needs at least two vertices");
  std::vector<PathPiece> pieces;
  pieces.reserve(vertices.size() - 1);
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const Point a = vertices[i];
    const Vector d = vertices[i + 1] - vertices[i];
    pieces.push_back({[a, d](double u) -> Point { return a + u * d; }, [d](double) -> Vector { return d; }, false});
  }
  return Path(Kind::Polyline, std::move(pieces));
}

Path Path::segment(const Point& from, const Point& to) { return polyline({from, to}); }

Path Path::circle(const Point& center, double radius, int turns, bool ccw, double phase) {
  if (radius <= 0.0 || turns < 1) throw GaugeError(ErrorKind::InvalidArgument, "circle needs radius > 0 and turns >= 1");
  const double sweep = (ccw ? 1.0 : -1.0) * kTwoPi * turns;
  auto position = [center, radius, sweep, phase](double u) -> Point {
    const double a = phase + sweep * u;
    return center + Vector(radius * std::cos(a), radius * std::sin(a), 0.0);
  };
  auto tangent = [radius, sweep, phase](double u) -> Vector {
    const double a = phase + sweep * u;
    return Vector(-radius * sweep * std::sin(a), radius * sweep * std::cos(a), 0.0);
  };
  return Path(Kind::Parametric, {PathPiece{position, tangent, false}});
}

Path Path::arc(const Point& center, double radius, double phi0, double phi1) {
  if (radius <= 0.0) throw GaugeError(ErrorKind::InvalidArgument, "arc needs radius > 0");
  const double sweep = phi1 - phi0;
  auto position = [center, radius, phi0, sweep](double u) -> Point {
    const double a = phi0 + sweep * u;
    return center + Vector(radius * std::cos(a), radius * std::sin(a), 0.0);
  };
  auto tangent = [radius, phi0, sweep](double u) -> Vector {
    const double a = phi0 + sweep * u;
    return Vector(-radius * sweep * std::sin(a), radius * sweep * std::cos(a), 0.0);
  };
  return Path(Kind::Parametric, {PathPiece{position, tangent, false}});
}

Point Path::raw_at(double t) const {
  const auto k = pieces_->size();
  const double s = std::clamp(t, 0.0, 1.0) * static_cast<double>(k);
  const auto i = std::min(static_cast<std::size_t>(s), k - 1);
  return (*pieces_)[i].at(s - static_cast<double>(i));
}

Point Path::start() const { return at(0.0); }
Point Path::end() const { return at(1.0); }

Point Path::at(double t) const { return raw_at(reversed_ ? 1.0 - t : t); }

Point Path::sample(std::size_t j, std::size_t n) const {
  const std::size_t raw = reversed_ ? n - 1 - j : j;
  return raw_at(static_cast<double>(raw) / static_cast<double>(n - 1));
}

Path Path::reversed() const {
  Path copy = *this;
  copy.reversed_ = !reversed_;
  return copy;
}

std::vector<PathPiece> Path::logical_pieces() const {
  std::vector<PathPiece> out(pieces_->begin(), pieces_->end());
  if (reversed_) {
    std::reverse(out.begin(), out.end());
    for (auto& p : out) p.reversed = !p.reversed;
  }
  return out;
}

Path Path::then(const Path& next) const {
  auto pieces = logical_pieces();
  auto tail = next.logical_pieces();
  pieces.insert(pieces.end(), tail.begin(), tail.end());
  const Kind kind = (kind_ == Kind::Polyline && next.kind_ == Kind::Polyline) ? Kind::Polyline : Kind::Parametric;
  return Path(kind, std::move(pieces));
}

Path Path::reparametrized(std::function<double(double)> g, std::function<double(double)> dg) const {
  auto pieces = logical_pieces();
  for (auto& piece : pieces) {
    // Fold the piece orientation into the new maps.
    const bool flip = piece.reversed;
    auto pos = piece.position;
    auto tan = piece.tangent;
    piece.position = [pos, g, flip](double u) { return pos(flip ? 1.0 - g(u) : g(u)); };
    piece.tangent = [tan, g, dg, flip](double u) -> Vector {
      return flip ? Vector(-tan(1.0 - g(u)) * dg(u)) : Vector(tan(g(u)) * dg(u));
    };
    piece.reversed = false;
  }
  return Path(kind_, std::move(pieces));
}

double Path::continuity_ratio(std::size_t n) const {
  double max_gap = 0.0;
  double sum = 0.0;
  Point prev = sample(0, n);
  for (std::size_t j = 1; j < n; ++j) {
    const Point cur = sample(j, n);
    const double gap = (cur - prev).norm();
    max_gap = std::max(max_gap, gap);
    sum += gap;
    prev = cur;
  }
  const double mean = sum / static_cast<double>(n - 1);
  return mean > 0.0 ? max_gap / mean : 0.0;
}

double AzimuthSequence::total_change() const {
  return (principal.back() - principal.front()) + kTwoPi * static_cast<double>(branch.back() - branch.front());
}

namespace {

// Distance from the z-axis to the chord a-b, measured in the xy-plane.
double chord_axis_distance(const Point& a, const Point& b) {
  const Eigen::Vector2d pa = a.head<2>();
  const Eigen::Vector2d d = b.head<2>() - pa;
  const double len2 = d.squaredNorm();
  const double t = len2 > 0.0 ? std::clamp(-pa.dot(d) / len2, 0.0, 1.0) : 0.0;
  return (pa + t * d).norm();
}

}  // namespace

AzimuthSequence continuous_azimuth(const Path& path, std::size_t n_samples) {
  if (n_samples < 2) throw GaugeError(ErrorKind::InvalidArgument, "continuous_azimuth needs at least two samples");
  AzimuthSequence seq;
  seq.phi.reserve(n_samples);
  seq.principal.reserve(n_samples);
  seq.branch.reserve(n_samples);
  Point prev = Point::Zero();
  for (std::size_t j = 0; j < n_samples; ++j) {
    const Point p = path.sample(j, n_samples);
    if (cylindrical_radius(p) < kAxisCutoff) {
      throw GaugeError(ErrorKind::AxisCrossing, "path sample within 1e-9 of the z-axis");
    }
    if (j > 0 && chord_axis_distance(prev, p) < kAxisCutoff) {
      throw GaugeError(ErrorKind::AxisCrossing, "path passes within 1e-9 of the z-axis between samples");
    }
    prev = p;
    const double a = principal_azimuth(p);
    long m = 0;
    if (j > 0) m = std::lround((seq.phi.back() - a) / kTwoPi);
    seq.principal.push_back(a);
    seq.branch.push_back(m);
    seq.phi.push_back(a + kTwoPi * static_cast<double>(m));
  }
  return seq;
}

double azimuth_change(const Path& path) {
  constexpr std::size_t kMaxSamples = std::size_t{1} << 22;
  std::size_t n = kDefaultAzimuthSamples;
  double prev = continuous_azimuth(path, n).total_change();
  int agreements = 0;
  while (agreements < 2) {
    n *= 2;
    if (n > kMaxSamples) throw GaugeError(ErrorKind::NonConvergent, "azimuth change did not stabilise");
    const double cur = continuous_azimuth(path, n).total_change();
    // Refinement can only change the branch count, i.e. jump by 2*pi.
    agreements = std::abs(cur - prev) < 1.0 ? agreements + 1 : 0;
    prev = cur;
  }
  return prev;
}

int winding_number(const Path& closed_path) {
  const double turns = azimuth_change(closed_path) / kTwoPi;
  const double w = std::round(turns);
  if (std::abs(turns - w) > 1e-9) {
    throw GaugeError(ErrorKind::NotClosed, "azimuth change is not a multiple of 2*pi");
  }
  return static_cast<int>(w);
}

LoopSpec::LoopSpec(Path path) : path_(std::move(path)) {
  if ((path_.start() - path_.end()).norm() > kClosureTolerance) {
    throw GaugeError(ErrorKind::NotClosed, "loop endpoints differ by more than 1e-12");
  }
  winding_ = winding_number(path_);
}

DiscSpec::DiscSpec(const Point& center, double radius, int normal_sign)
    : center_(center), radius_(radius), normal_sign_(normal_sign) {
  if (!(radius > 0.0)) throw GaugeError(ErrorKind::InvalidArgument, "disc radius must be positive");
  if (normal_sign != 1 && normal_sign != -1) {
    throw GaugeError(ErrorKind::InvalidArgument, "disc normal must be +e_z or -e_z");
  }
}

LoopSpec DiscSpec::boundary() const {
  return LoopSpec(Path::circle(center_, radius_, 1, normal_sign_ > 0));
}

}  // namespace gaugekit
