#pragma once

#include <Eigen/Dense>

#include <numbers>
#include <stdexcept>
#include <string>

namespace dualmink {

// Points and directions live in R^2 or R^3.  Fixed-capacity vectors keep the
// hot loops allocation-free while the ambient dimension stays a runtime value.
using Vec = Eigen::Matrix<double, Eigen::Dynamic, 1, Eigen::ColMajor, 3, 1>;
using Mat = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::ColMajor, 3, 3>;

inline constexpr double kPi = std::numbers::pi;

/// Malformed or inconsistent input: files, arguments, mismatched grids.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A domain invariant failed at runtime (non-convex body, non-positive data, ...).
struct InvariantViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The linearized operator is singular on a requested harmonic degree.
struct ResonanceError : InvariantViolation {
  ResonanceError(int k, double divisor)
      : InvariantViolation("linearized operator resonant at harmonic degree " +
                           std::to_string(k) + " (divisor " + std::to_string(divisor) + ")"),
        degree(k) {}
  int degree;
};

/// Volume of the unit ball in R^n, n <= 3.
inline double unit_ball_volume(int n) {
  switch (n) {
    case 1: return 2.0;
    case 2: return kPi;
    case 3: return 4.0 * kPi / 3.0;
    default: throw InvalidInput("unit_ball_volume: unsupported dimension " + std::to_string(n));
  }
}

/// Surface measure of the unit sphere S^{n-1} in R^n.
inline double sphere_area(int n) {
  switch (n) {
    case 2: return 2.0 * kPi;
    case 3: return 4.0 * kPi;
    default: throw InvalidInput("sphere_area: unsupported dimension " + std::to_string(n));
  }
}

}  // namespace dualmink
