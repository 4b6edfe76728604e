#include "eqgirth/hofer_bounds.hpp"

#include <cmath>

#include "eqgirth/errors.hpp"

namespace eqgirth {

std::string_view to_string(BoundKind kind) {
  switch (kind) {
    case BoundKind::upper: return "upper";
    case BoundKind::lower: return "lower";
  }
  return "?";
}

std::string_view to_string(BoundSource source) {
  switch (source) {
    case BoundSource::rotation_norm: return "rotation_norm";
    case BoundSource::energy_capacity: return "energy_capacity";
    case BoundSource::antipodal: return "antipodal";
    case BoundSource::unoriented_rotation: return "unoriented_rotation";
    case BoundSource::cost_function: return "cost_function";
  }
  return "?";
}

BoundReport rotation_hofer_bound(double theta) {
  if (!(theta >= 0.0 && theta <= kPi)) {
    throw DomainError("rotation_hofer_bound: theta must lie in [0, pi]");
  }
  // Oscillation of the height function is 2 per unit time; the flow turns by
  // one radian per unit time; the area form is the standard one over 4 pi.
  const double value = theta / (2.0 * kPi);
  return {BoundKind::upper, value, BoundSource::rotation_norm,
          "||R(theta,u)|| <= 2 theta / (4 pi)"};
}

BoundReport great_circle_distance_upper(const SpherePoint& x, const SpherePoint& y) {
  BoundReport r = rotation_hofer_bound(angle_between(x, y));
  r.detail = "rotation taking i0(x) to i0(y)";
  return r;
}

BoundReport displacement_energy_lower(double area) {
  if (!(area >= 0.0 && area <= 1.0)) {
    throw DomainError("displacement_energy_lower: area must lie in [0, 1]");
  }
  return {BoundKind::lower, area, BoundSource::energy_capacity, "e(A) >= Area(A)"};
}

std::pair<BoundReport, BoundReport> antipodal_bounds() {
  BoundReport lower = displacement_energy_lower(0.5);
  lower.source = BoundSource::antipodal;
  lower.detail = "any map taking i0(x) to i0(-x) displaces a disc of area 1/2";
  BoundReport upper = great_circle_distance_upper(SpherePoint::north_pole(),
                                                  SpherePoint::south_pole());
  upper.source = BoundSource::antipodal;
  upper.detail = "half turn taking i0(x) to i0(-x)";
  return {lower, upper};
}

BoundReport unoriented_diameter_bound() {
  BoundReport r = rotation_hofer_bound(kPi / 2);
  r.source = BoundSource::unoriented_rotation;
  r.detail = "unoriented great circles are at most a quarter turn apart";
  return r;
}

}  // namespace eqgirth
