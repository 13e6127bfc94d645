#pragma once

#include <Eigen/Core>

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace gaugekit {

template <typename Scalar>
using Vec3 = Eigen::Matrix<Scalar, 3, 1>;

using Vector = Vec3<double>;
using Point = Vec3<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Points closer than this to the z-axis have no usable azimuth.
inline constexpr double kAxisCutoff = 1e-9;

enum class ErrorKind {
  AxisCrossing,
  NotClosed,
  OnShell,
  TooCloseToShell,
  NonConvergent,
  NoConvergence,
  NoLimit,
  DomainViolation,
  EndpointMismatch,
  InvalidArgument,
  ParseError,
};

const char* to_string(ErrorKind kind);

class GaugeError : public std::runtime_error {
 public:
  GaugeError(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <typename Derived>
auto cylindrical_radius(const Eigen::MatrixBase<Derived>& p) {
  using std::hypot;
  return hypot(p(0), p(1));
}

/// Principal azimuth in (-pi, pi].
template <typename Derived>
auto principal_azimuth(const Eigen::MatrixBase<Derived>& p) {
  using std::atan2;
  return atan2(p(1), p(0));
}

template <typename Derived>
auto unit_phi(const Eigen::MatrixBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  const Scalar rho = cylindrical_radius(p);
  if (rho == Scalar(0)) return Vec3<Scalar>::Zero().eval();
  return Vec3<Scalar>(-p(1) / rho, p(0) / rho, Scalar(0));
}

template <typename Derived>
auto unit_rho(const Eigen::MatrixBase<Derived>& p) {
  using Scalar = typename Derived::Scalar;
  const Scalar rho = cylindrical_radius(p);
  if (rho == Scalar(0)) return Vec3<Scalar>::Zero().eval();
  return Vec3<Scalar>(p(0) / rho, p(1) / rho, Scalar(0));
}

/// Brings `angle` onto the branch nearest to `reference`.
inline double nearest_branch(double angle, double reference) {
  return angle + kTwoPi * std::round((reference - angle) / kTwoPi);
}

/// Continuous azimuth of `p` on the branch closest to `reference`.
inline double azimuth_near(const Point& p, double reference) {
  return nearest_branch(principal_azimuth(p), reference);
}

}  // namespace gaugekit
