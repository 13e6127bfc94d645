#pragma once

#include "gaugekit/types.hpp"

#include <cstddef>
#include <functional>
#include <memory>
#include <vector>

namespace gaugekit {

/// (rho, phi, z) with phi principal.
Vector to_cylindrical(const Point& p);
Point from_cylindrical(double rho, double phi, double z);

/// One smooth stretch of a path over its own parameter u in [0, 1].
struct PathPiece {
  std::function<Point(double)> position;
  std::function<Vector(double)> tangent;
  bool reversed = false;

  Point at(double u) const { return position(reversed ? 1.0 - u : u); }
};

/// A curve built from smooth pieces. Orientation flips are stored as a flag so
/// that reversing twice, or integrating a reversed path, revisits exactly the
/// same evaluation points.
class Path {
 public:
  enum class Kind { Parametric, Polyline };

  static Path parametric(std::function<Point(double)> position, std::function<Vector(double)> tangent);
  /// Tangent by fourth-order finite differences of `position`.
  static Path parametric(std::function<Point(double)> position);
  static Path polyline(std::vector<Point> vertices);
  static Path segment(const Point& from, const Point& to);
  /// Horizontal circle at height center.z(), starting at angle `phase`.
  static Path circle(const Point& center, double radius, int turns = 1, bool ccw = true, double phase = 0.0);
  /// Horizontal arc from angle phi0 to phi1 (phi1 < phi0 runs clockwise).
  static Path arc(const Point& center, double radius, double phi0, double phi1);

  Kind kind() const noexcept { return kind_; }
  bool is_reversed() const noexcept { return reversed_; }
  std::size_t piece_count() const noexcept { return pieces_->size(); }
  /// Stored (raw) piece; orientation of the whole path is applied on top.
  const PathPiece& raw_piece(std::size_t i) const { return (*pieces_)[i]; }
  /// Orientation sign of the whole path relative to its raw pieces.
  double orientation() const noexcept { return reversed_ ? -1.0 : 1.0; }

  Point start() const;
  Point end() const;
  /// Position at logical parameter t in [0, 1], pieces sharing it equally.
  Point at(double t) const;
  /// Position at sample j of n evenly spaced samples (integer indexing keeps
  /// reversed sampling bit-identical to forward sampling).
  Point sample(std::size_t j, std::size_t n) const;

  Path reversed() const;
  /// This path followed by `next`; endpoints are not required to match.
  Path then(const Path& next) const;
  /// Same curve traversed as t -> g(t); g must map [0,1] onto [0,1] monotonically.
  Path reparametrized(std::function<double(double)> g, std::function<double(double)> dg) const;

  /// Largest gap between consecutive samples relative to the mean gap.
  double continuity_ratio(std::size_t n = 4096) const;

 private:
  Path(Kind kind, std::vector<PathPiece> pieces);
  Point raw_at(double t) const;
  std::vector<PathPiece> logical_pieces() const;

  Kind kind_ = Kind::Parametric;
  std::shared_ptr<const std::vector<PathPiece>> pieces_;
  bool reversed_ = false;
};

inline constexpr double kClosureTolerance = 1e-12;
inline constexpr std::size_t kDefaultAzimuthSamples = 4096;

/// Unwrapped azimuth samples. phi[k] = principal[k] + 2*pi*branch[k].
struct AzimuthSequence {
  std::vector<double> phi;
  std::vector<double> principal;
  std::vector<long> branch;

  /// phi(1) - phi(0); negates exactly under path reversal.
  double total_change() const;
};

AzimuthSequence continuous_azimuth(const Path& path, std::size_t n_samples = kDefaultAzimuthSamples);

/// phi(1) - phi(0), with sampling doubled from 4096 until two successive
/// doublings agree.
double azimuth_change(const Path& path);

/// Closed path with its winding number about the z-axis.
class LoopSpec {
 public:
  explicit LoopSpec(Path path);

  const Path& path() const noexcept { return path_; }
  int winding() const noexcept { return winding_; }
  LoopSpec reversed() const { return LoopSpec(path_.reversed()); }

 private:
  Path path_;
  int winding_ = 0;
};

/// Sampling is refined until two successive doublings agree.
int winding_number(const Path& closed_path);
inline int winding_number(const LoopSpec& loop) { return loop.winding(); }

/// Flat disc with normal along +z or -z.
class DiscSpec {
 public:
  DiscSpec(const Point& center, double radius, int normal_sign = +1);

  const Point& center() const noexcept { return center_; }
  double radius() const noexcept { return radius_; }
  int normal_sign() const noexcept { return normal_sign_; }
  Vector normal() const { return Vector(0, 0, normal_sign_); }
  bool contains_axis() const { return cylindrical_radius(center_) < radius_; }
  /// Boundary traversed counter-clockwise about the normal.
  LoopSpec boundary() const;

 private:
  Point center_;
  double radius_;
  int normal_sign_;
};

}  // namespace gaugekit
