#pragma once

// Area geometry of the unit sphere with total area normalized to 1.
//
// All areas returned by this header are fractions of the sphere: a hemisphere
// is 1/2, the whole sphere is 1. Curves are oriented and the area reported
// for a curve is always that of the region on its left.

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace eqgirth {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tolerances shared by the geometric predicates.
inline constexpr double kUnitTolerance = 1e-12;
inline constexpr double kGeometricTolerance = 1e-9;
inline constexpr double kAreaTolerance = 1e-6;
inline constexpr double kChartPoleClearance = 1e-6;

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  friend constexpr Vec3 operator+(Vec3 a, Vec3 b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend constexpr Vec3 operator-(Vec3 a, Vec3 b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend constexpr Vec3 operator-(Vec3 a) { return {-a.x, -a.y, -a.z}; }
  friend constexpr Vec3 operator*(double s, Vec3 a) { return {s * a.x, s * a.y, s * a.z}; }
  friend constexpr bool operator==(Vec3, Vec3) = default;
};

constexpr double dot(Vec3 a, Vec3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(Vec3 a, Vec3 b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(Vec3 a) { return std::sqrt(dot(a, a)); }

// A point of the unit sphere. Construction checks |p| = 1 to kUnitTolerance.
class SpherePoint {
 public:
  SpherePoint(double x, double y, double z);
  explicit SpherePoint(Vec3 v) : SpherePoint(v.x, v.y, v.z) {}

  // Projects any nonzero vector onto the sphere.
  static SpherePoint normalized(Vec3 v);

  static SpherePoint north_pole() { return {0.0, 0.0, 1.0}; }
  static SpherePoint south_pole() { return {0.0, 0.0, -1.0}; }

  double x() const { return v_.x; }
  double y() const { return v_.y; }
  double z() const { return v_.z; }
  const Vec3& vec() const { return v_; }

  SpherePoint antipode() const { return SpherePoint(-v_); }

  friend bool operator==(const SpherePoint&, const SpherePoint&) = default;

 private:
  struct Unchecked {};
  SpherePoint(Vec3 v, Unchecked) : v_(v) {}
  Vec3 v_;
};

// Angle in [0, pi] between two points of the sphere.
double angle_between(const SpherePoint& a, const SpherePoint& b);

// Fan coordinates around the south pole q = (0,0,-1): `phi` selects the
// circle C_phi through q cut by the plane through q that contains the x
// direction and makes angle phi with the xz-plane; `theta` is the position
// on that circle, with theta = 0 (and 2 pi) at q itself.
struct AngleCoords {
  double theta = 0.0;
  double phi = 0.0;
};

// angles_to_point rejects |phi| >= kFanPhiLimit.
inline constexpr double kFanPhiLimit = kPi / 2 - 1e-9;

SpherePoint angles_to_point(const AngleCoords& c);

// Normalized area (1 - cos alpha) / 2 of a cap of angular radius alpha.
double cap_area(double alpha);

// Rodrigues rotation of p by angle theta (counterclockwise seen from the tip
// of axis). The axis must be unit to kGeometricTolerance.
SpherePoint rotate(const SpherePoint& p, const SpherePoint& axis, double theta);
Vec3 rotate(const Vec3& v, const SpherePoint& axis, double theta);

enum class Chart { sphere, lambert, plane };

// An oriented closed curve given by samples; the closing edge from the last
// sample back to the first is implied. Sphere-chart curves carry unit
// vectors; lambert curves carry (theta_unwrapped, z, 0); plane curves (x, y, 0).
class ClosedCurve {
 public:
  static constexpr std::size_t kMinSamples = 16;
  static constexpr std::size_t kDefaultSamples = 512;

  static ClosedCurve on_sphere(std::vector<SpherePoint> samples);
  static ClosedCurve in_chart(Chart chart, std::vector<Vec3> samples);

  Chart chart() const { return chart_; }
  std::size_t size() const { return samples_.size(); }
  std::span<const Vec3> samples() const { return samples_; }

  ClosedCurve reversed() const;

 private:
  ClosedCurve(Chart chart, std::vector<Vec3> samples);
  Chart chart_;
  std::vector<Vec3> samples_;
};

// Boundary of the cap of radius alpha about `center`, oriented so that the cap
// lies on the left.
ClosedCurve cap_boundary(const SpherePoint& center, double alpha,
                         std::size_t n = ClosedCurve::kDefaultSamples);

// Great circle perpendicular to `normal`, oriented counterclockwise when seen
// from `normal`, i.e. the hemisphere around `normal` lies on the left.
ClosedCurve great_circle(const SpherePoint& normal,
                         std::size_t n = ClosedCurve::kDefaultSamples);

ClosedCurve rotate(const ClosedCurve& curve, const SpherePoint& axis, double theta);

// Lambert cylindrical equal-area image (theta unwrapped by minimal-angle
// continuation, z) of a sphere-chart curve, with the chart axis at `axis`.
ClosedCurve to_lambert(const ClosedCurve& curve,
                       const SpherePoint& axis = SpherePoint::north_pole());

// Normalized area to the left of a sphere-chart curve, computed in the
// Lambert chart about `axis`. Throws ChartError if a sample lies within
// kChartPoleClearance of a chart pole, TopologyError if the sample polygon
// self-intersects.
//
// Quadrature is the shoelace sum of z dtheta with one Richardson step between
// the full sample set and every second sample (even sample counts), which
// takes the error for smooth sampled curves from O(h^2) to O(h^4).
double enclosed_area_in_chart(const ClosedCurve& curve, const SpherePoint& axis);

// Same as enclosed_area_in_chart with the chart axis picked among a fixed set
// of directions to keep the curve as far from the chart poles as possible.
double enclosed_area(const ClosedCurve& curve);

// Chart axis enclosed_area would use for `curve`.
SpherePoint best_chart_axis(const ClosedCurve& curve);

}  // namespace eqgirth
