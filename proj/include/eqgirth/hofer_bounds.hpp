#pragma once

// Closed-form Hofer-norm bounds for rotations and great circles.
//
// Values are in units where the sphere has area 1. Nothing here computes a
// Hofer distance: each function returns an inequality together with the
// argument that produced it.

#include <string>
#include <string_view>
#include <utility>

#include "eqgirth/sphere_geom.hpp"

namespace eqgirth {

enum class BoundKind { upper, lower };

enum class BoundSource {
  rotation_norm,
  energy_capacity,
  antipodal,
  unoriented_rotation,
  cost_function,
};

std::string_view to_string(BoundKind kind);
std::string_view to_string(BoundSource source);

struct BoundReport {
  BoundKind kind;
  double value;
  BoundSource source;
  std::string detail;
};

// ||R(theta, u)|| <= 2 theta / (4 pi): the height function generates the
// rotation and has oscillation 2. theta must lie in [0, pi].
BoundReport rotation_hofer_bound(double theta);

// Upper bound for the distance between the positively oriented great circles
// perpendicular to x and y, through the rotation by angle(x, y).
BoundReport great_circle_distance_upper(const SpherePoint& x, const SpherePoint& y);

// Energy-capacity inequality on surfaces: e(A) >= Area(A).
BoundReport displacement_energy_lower(double area);

// Both sides of diam(i0) = 1/2.
std::pair<BoundReport, BoundReport> antipodal_bounds();

// Unoriented equators: every pair is related by a rotation of at most pi/2.
BoundReport unoriented_diameter_bound();

}  // namespace eqgirth
