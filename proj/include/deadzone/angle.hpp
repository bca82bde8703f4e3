#ifndef DEADZONE_ANGLE_HPP
#define DEADZONE_ANGLE_HPP

#include <cmath>
#include <numbers>
#include <string_view>

#include <Eigen/Dense>

namespace deadzone {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Reduces an angle to [0, 2π).
inline double wrap_angle(double psi) {
  if (psi >= 0.0 && psi < kTwoPi) return psi;
  if (psi < 0.0 && psi >= -kTwoPi) {
    const double r = psi + kTwoPi;
    return r < kTwoPi ? r : 0.0;
  }
  double r = std::fmod(psi, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative number can round up to exactly 2π
  if (r >= kTwoPi) r = 0.0;
  return r;
}

/// Reduces an angle to [-π, π).
inline double wrap_signed(double psi) {
  double r = wrap_angle(psi + kPi) - kPi;
  return r;
}

/// Shortest arc length between two angles, in [0, π].
inline double circular_distance(double a, double b) {
  double d = wrap_angle(a - b);
  return d > kPi ? kTwoPi - d : d;
}

template <typename Derived>
Eigen::VectorXd wrap_phases(const Eigen::MatrixBase<Derived>& theta) {
  return theta.unaryExpr([](double x) { return wrap_angle(x); });
}

/// Parses a radian literal. Accepts plain decimals and multiples of pi:
/// "0.5", "pi", "-pi/3", "5pi/6", "2*pi", "0.25pi".
double parse_angle(std::string_view text);

}  // namespace deadzone

#endif  // DEADZONE_ANGLE_HPP
