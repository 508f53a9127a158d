#ifndef ENTANGLE_GEOMETRY_HPP
#define ENTANGLE_GEOMETRY_HPP

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "entangle/spin.hpp"

namespace entangle {

/// Analyzer axis in spherical coordinates: polar angle theta in [0, pi],
/// azimuth phi in [0, 2pi).
struct Direction {
  double theta = 0.0;
  double phi = 0.0;

  Direction() = default;
  Direction(double polar, double azimuth) : theta(polar), phi(canonical_angle(azimuth)) {
    if (!(theta >= 0.0 && theta <= std::numbers::pi))
      throw std::invalid_argument("polar angle outside [0, pi]");
  }

  Eigen::Vector3d unit_vector() const {
    return {std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi), std::cos(theta)};
  }

  /// Axis at angle `angle` from +z inside the x-z plane.
  static Direction in_plane(double angle) {
    const double a = canonical_angle(angle);
    if (a <= std::numbers::pi) return {a, 0.0};
    return {2 * std::numbers::pi - a, std::numbers::pi};
  }
};

/// Angle between two axes in [0, pi]; atan2 form stays accurate near 0 and pi.
inline double angle_between(const Direction& a, const Direction& b) {
  const Eigen::Vector3d u = a.unit_vector();
  const Eigen::Vector3d v = b.unit_vector();
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

/// Four analyzer axes entering a two-party Bell-type functional.
struct AnalyzerQuad {
  Direction a, a_prime, b, b_prime;
};

/// Coplanar layout at angles 0, alpha, 2 alpha, 3 alpha with
/// a.b' = a'.b' = a'.b = cos(alpha) and a.b = cos(3 alpha).
inline AnalyzerQuad coplanar_layout(double alpha) {
  return {Direction::in_plane(0.0), Direction::in_plane(2 * alpha), Direction::in_plane(3 * alpha),
          Direction::in_plane(alpha)};
}

}  // namespace entangle

#endif  // ENTANGLE_GEOMETRY_HPP
