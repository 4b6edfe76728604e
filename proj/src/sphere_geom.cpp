#include "eqgirth/sphere_geom.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <string>

#include "eqgirth/errors.hpp"
#include "eqgirth/kernels.hpp"

namespace eqgirth {

SpherePoint::SpherePoint(double x, double y, double z) : v_{x, y, z} {
  const double n2 = dot(v_, v_);
  if (!(std::abs(n2 - 1.0) <= kUnitTolerance)) {
    throw DomainError("SpherePoint: not a unit vector (|p|^2 = " + std::to_string(n2) + ")");
  }
}

SpherePoint SpherePoint::normalized(Vec3 v) {
  const double n = norm(v);
  if (!(n > 0.0) || !std::isfinite(n)) {
    throw DomainError("SpherePoint::normalized: zero or non-finite vector");
  }
  return SpherePoint((1.0 / n) * v, Unchecked{});
}

double angle_between(const SpherePoint& a, const SpherePoint& b) {
  // atan2 form stays accurate near 0 and pi where acos loses digits.
  return std::atan2(norm(cross(a.vec(), b.vec())), dot(a.vec(), b.vec()));
}

SpherePoint angles_to_point(const AngleCoords& c) {
  if (!std::isfinite(c.phi) || std::abs(c.phi) >= kFanPhiLimit) {
    throw DomainError("angles_to_point: phi must lie in (-pi/2, pi/2)");
  }
  if (!std::isfinite(c.theta)) {
    throw DomainError("angles_to_point: non-finite theta");
  }
  // Plane through q = (0,0,-1) containing the x direction, with unit normal
  // n = (0, cos phi, sin phi). The circle has centre (n.q) n and radius cos phi.
  const double s = std::sin(c.phi);
  const double co = std::cos(c.phi);
  const Vec3 n{0.0, co, s};
  const Vec3 centre = (-s) * n;
  // Unit vector from the centre towards q, in the plane and orthogonal to x.
  const Vec3 q{0.0, 0.0, -1.0};
  const Vec3 towards_q = (1.0 / co) * (q - centre);
  const Vec3 ex{1.0, 0.0, 0.0};
  const double t = std::remainder(c.theta, kTwoPi);
  const Vec3 p = centre + co * (std::cos(t) * towards_q + std::sin(t) * ex);
  return SpherePoint::normalized(p);
}

double cap_area(double alpha) {
  if (!(alpha >= 0.0 && alpha <= kPi)) {
    throw DomainError("cap_area: alpha must lie in [0, pi]");
  }
  if (alpha == kPi) return 1.0;
  // (1 - cos a) / 2 = sin^2(a/2), without cancellation for small a.
  const double s = std::sin(0.5 * alpha);
  return s * s;
}

namespace {

void check_axis(const SpherePoint& axis) {
  if (std::abs(norm(axis.vec()) - 1.0) > kGeometricTolerance) {
    throw DomainError("rotate: axis is not a unit vector");
  }
}

}  // namespace

Vec3 rotate(const Vec3& v, const SpherePoint& axis, double theta) {
  check_axis(axis);
  const Vec3& k = axis.vec();
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return c * v + s * cross(k, v) + ((1.0 - c) * dot(k, v)) * k;
}

SpherePoint rotate(const SpherePoint& p, const SpherePoint& axis, double theta) {
  return SpherePoint::normalized(rotate(p.vec(), axis, theta));
}

ClosedCurve::ClosedCurve(Chart chart, std::vector<Vec3> samples)
    : chart_(chart), samples_(std::move(samples)) {
  if (samples_.size() < kMinSamples) {
    throw DomainError("ClosedCurve: at least " + std::to_string(kMinSamples) +
                      " samples required");
  }
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    const Vec3& a = samples_[i];
    const Vec3& b = samples_[(i + 1) % samples_.size()];
    if (a == b) {
      throw DomainError("ClosedCurve: consecutive samples " + std::to_string(i) +
                        " coincide (closing sample must not repeat the first)");
    }
  }
}

ClosedCurve ClosedCurve::on_sphere(std::vector<SpherePoint> samples) {
  std::vector<Vec3> v;
  v.reserve(samples.size());
  for (const auto& p : samples) v.push_back(p.vec());
  return ClosedCurve(Chart::sphere, std::move(v));
}

ClosedCurve ClosedCurve::in_chart(Chart chart, std::vector<Vec3> samples) {
  if (chart == Chart::sphere) {
    for (const auto& s : samples) (void)SpherePoint(s);
  }
  return ClosedCurve(chart, std::move(samples));
}

ClosedCurve ClosedCurve::reversed() const {
  std::vector<Vec3> r(samples_.rbegin(), samples_.rend());
  return ClosedCurve(chart_, std::move(r));
}

namespace {

// Orthonormal (u, v) with u x v = c.
std::pair<Vec3, Vec3> tangent_basis(const Vec3& c) {
  const Vec3 helper = std::abs(c.x) < 0.9 ? Vec3{1.0, 0.0, 0.0} : Vec3{0.0, 1.0, 0.0};
  Vec3 u = cross(c, helper);
  u = (1.0 / norm(u)) * u;
  const Vec3 v = cross(c, u);
  return {u, v};
}

}  // namespace

ClosedCurve cap_boundary(const SpherePoint& center, double alpha, std::size_t n) {
  if (!(alpha > 0.0 && alpha < kPi)) {
    throw DomainError("cap_boundary: alpha must lie in (0, pi)");
  }
  const auto [u, v] = tangent_basis(center.vec());
  std::vector<SpherePoint> pts;
  pts.reserve(n);
  const double ca = std::cos(alpha);
  const double sa = std::sin(alpha);
  for (std::size_t i = 0; i < n; ++i) {
    const double s = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    pts.push_back(SpherePoint::normalized(ca * center.vec() +
                                          sa * (std::cos(s) * u + std::sin(s) * v)));
  }
  return ClosedCurve::on_sphere(std::move(pts));
}

ClosedCurve great_circle(const SpherePoint& normal, std::size_t n) {
  return cap_boundary(normal, kPi / 2, n);
}

ClosedCurve rotate(const ClosedCurve& curve, const SpherePoint& axis, double theta) {
  if (curve.chart() != Chart::sphere) {
    throw DomainError("rotate: curve must be on the sphere chart");
  }
  std::vector<SpherePoint> pts;
  pts.reserve(curve.size());
  for (const auto& s : curve.samples()) {
    pts.push_back(SpherePoint::normalized(rotate(s, axis, theta)));
  }
  return ClosedCurve::on_sphere(std::move(pts));
}

namespace {

// Rotation carrying `axis` onto +z, applied to a vector.
struct ToPoleFrame {
  explicit ToPoleFrame(const SpherePoint& axis) {
    const Vec3 z{0.0, 0.0, 1.0};
    const Vec3 k = cross(axis.vec(), z);
    const double s = norm(k);
    const double c = dot(axis.vec(), z);
    if (s < 1e-15) {
      flip = c < 0.0;
      identity = !flip;
    } else {
      rot_axis = (1.0 / s) * k;
      angle = std::atan2(s, c);
    }
  }

  Vec3 operator()(const Vec3& v) const {
    if (identity) return v;
    if (flip) return {v.x, -v.y, -v.z};  // half turn about x
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return c * v + s * cross(rot_axis, v) + ((1.0 - c) * dot(rot_axis, v)) * rot_axis;
  }

  bool identity = false;
  bool flip = false;
  Vec3 rot_axis{};
  double angle = 0.0;
};

// Near-pi increments make the minimal-angle continuation ambiguous.
constexpr double kMaxThetaStep = kPi - 1e-6;

struct LambertPolyline {
  std::vector<double> theta;  // unwrapped, n + 1 entries (closing sample repeated)
  std::vector<double> z;
  long winding = 0;
};

LambertPolyline lambert_polyline(const ClosedCurve& curve, const SpherePoint& axis) {
  if (curve.chart() != Chart::sphere) {
    throw DomainError("enclosed_area: curve must be on the sphere chart");
  }
  const ToPoleFrame frame(axis);
  const auto samples = curve.samples();
  const std::size_t n = samples.size();
  LambertPolyline out;
  out.theta.resize(n + 1);
  out.z.resize(n + 1);
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3 p = frame(samples[i]);
    if (std::hypot(p.x, p.y) < kChartPoleClearance) {
      throw ChartError("enclosed_area: sample " + std::to_string(i) +
                       " lies within 1e-6 of a chart pole");
    }
    const double raw = std::atan2(p.y, p.x);
    double t = raw;
    if (i > 0) {
      const double step = std::remainder(raw - prev, kTwoPi);
      if (std::abs(step) > kMaxThetaStep) {
        throw ChartError("enclosed_area: segment " + std::to_string(i - 1) +
                         " passes over a chart pole");
      }
      t = out.theta[i - 1] + step;
    }
    out.theta[i] = t;
    out.z[i] = std::clamp(p.z, -1.0, 1.0);
    prev = raw;
  }
  const double closing = std::remainder(std::atan2(frame(samples[0]).y, frame(samples[0]).x) -
                                            prev,
                                        kTwoPi);
  if (std::abs(closing) > kMaxThetaStep) {
    throw ChartError("enclosed_area: closing segment passes over a chart pole");
  }
  out.theta[n] = out.theta[n - 1] + closing;
  out.z[n] = out.z[0];
  out.winding = std::lround((out.theta[n] - out.theta[0]) / kTwoPi);
  return out;
}

double orient(double ax, double ay, double bx, double by, double cx, double cy) {
  return (bx - ax) * (cy - ay) - (by - ay) * (cx - ax);
}

bool on_segment(double ax, double ay, double bx, double by, double px, double py) {
  return std::min(ax, bx) - kGeometricTolerance <= px &&
         px <= std::max(ax, bx) + kGeometricTolerance &&
         std::min(ay, by) - kGeometricTolerance <= py &&
         py <= std::max(ay, by) + kGeometricTolerance;
}

bool segments_meet(double ax, double ay, double bx, double by, double cx, double cy,
                   double dx, double dy) {
  const double d1 = orient(cx, cy, dx, dy, ax, ay);
  const double d2 = orient(cx, cy, dx, dy, bx, by);
  const double d3 = orient(ax, ay, bx, by, cx, cy);
  const double d4 = orient(ax, ay, bx, by, dx, dy);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
    return true;
  }
  const double eps = kGeometricTolerance * kGeometricTolerance;
  if (std::abs(d1) <= eps && on_segment(cx, cy, dx, dy, ax, ay)) return true;
  if (std::abs(d2) <= eps && on_segment(cx, cy, dx, dy, bx, by)) return true;
  if (std::abs(d3) <= eps && on_segment(ax, ay, bx, by, cx, cy)) return true;
  if (std::abs(d4) <= eps && on_segment(ax, ay, bx, by, dx, dy)) return true;
  return false;
}

// The chart is a cylinder: segment j is also compared against the copies of
// segment i shifted by whole turns.
void check_simple(const LambertPolyline& poly) {
  const std::size_t n = poly.theta.size() - 1;
  const auto [lo, hi] = std::minmax_element(poly.theta.begin(), poly.theta.end());
  const long turns = static_cast<long>(std::ceil((*hi - *lo) / kTwoPi)) + 1;
  for (std::size_t i = 0; i < n; ++i) {
    const double ax = poly.theta[i], ay = poly.z[i];
    const double bx = poly.theta[i + 1], by = poly.z[i + 1];
    for (std::size_t j = i + 1; j < n; ++j) {
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      const double cy = poly.z[j], dy = poly.z[j + 1];
      if (std::max(cy, dy) < std::min(ay, by) - kGeometricTolerance ||
          std::min(cy, dy) > std::max(ay, by) + kGeometricTolerance) {
        continue;
      }
      for (long k = -turns; k <= turns; ++k) {
        const double shift = kTwoPi * static_cast<double>(k);
        const double cx = poly.theta[j] + shift, dx = poly.theta[j + 1] + shift;
        if (std::max(cx, dx) < std::min(ax, bx) - kGeometricTolerance ||
            std::min(cx, dx) > std::max(ax, bx) + kGeometricTolerance) {
          continue;
        }
        // Adjacent edges share an endpoint in exactly one copy.
        if (adjacent && k == (j == i + 1 ? 0 : -poly.winding)) continue;
        if (segments_meet(ax, ay, bx, by, cx, cy, dx, dy)) {
          throw TopologyError("enclosed_area: sample polygon self-intersects (edges " +
                              std::to_string(i) + " and " + std::to_string(j) + ")");
        }
      }
    }
  }
}

double z_dtheta_strided(const LambertPolyline& poly, std::size_t stride) {
  if (stride == 1) return kernels::z_dtheta(poly.theta, poly.z);
  const std::size_t n = poly.theta.size() - 1;
  std::vector<double> t, z;
  t.reserve(n / stride + 1);
  z.reserve(n / stride + 1);
  for (std::size_t i = 0; i <= n; i += stride) {
    t.push_back(poly.theta[i]);
    z.push_back(poly.z[i]);
  }
  return kernels::z_dtheta(t, z);
}

}  // namespace

ClosedCurve to_lambert(const ClosedCurve& curve, const SpherePoint& axis) {
  const LambertPolyline poly = lambert_polyline(curve, axis);
  std::vector<Vec3> pts;
  pts.reserve(curve.size());
  for (std::size_t i = 0; i < curve.size(); ++i) pts.push_back({poly.theta[i], poly.z[i], 0.0});
  return ClosedCurve::in_chart(Chart::lambert, std::move(pts));
}

double enclosed_area_in_chart(const ClosedCurve& curve, const SpherePoint& axis) {
  const LambertPolyline poly = lambert_polyline(curve, axis);
  check_simple(poly);
  const std::size_t n = curve.size();
  // In the (theta, z) chart the area form is dtheta dz / (4 pi) and the chart
  // preserves orientation, so the region left of the curve has area
  // -(1/4pi) * integral z dtheta, offset by half the sphere for each turn
  // around the axis, taken modulo 1.
  double integral = z_dtheta_strided(poly, 1);
  if (n % 2 == 0) {
    const double coarse = z_dtheta_strided(poly, 2);
    integral = (4.0 * integral - coarse) / 3.0;
  }
  double area = -integral / (4.0 * kPi) + 0.5 * static_cast<double>(poly.winding);
  area -= std::floor(area);
  return std::clamp(area, 0.0, 1.0);
}

SpherePoint best_chart_axis(const ClosedCurve& curve) {
  if (curve.chart() != Chart::sphere) {
    throw DomainError("best_chart_axis: curve must be on the sphere chart");
  }
  const double r3 = 1.0 / std::sqrt(3.0);
  const std::array<Vec3, 7> candidates{{{0, 0, 1},
                                        {1, 0, 0},
                                        {0, 1, 0},
                                        {r3, r3, r3},
                                        {r3, -r3, r3},
                                        {r3, r3, -r3},
                                        {-r3, r3, r3}}};
  double best_clearance = -1.0;
  Vec3 best = candidates[0];
  for (const Vec3& c : candidates) {
    double clearance = std::numeric_limits<double>::infinity();
    for (const auto& s : curve.samples()) {
      clearance = std::min(clearance, norm(cross(c, s)));
    }
    if (clearance > best_clearance + 1e-12) {
      best_clearance = clearance;
      best = c;
    }
  }
  return SpherePoint::normalized(best);
}

double enclosed_area(const ClosedCurve& curve) {
  return enclosed_area_in_chart(curve, best_chart_axis(curve));
}

}  // namespace eqgirth
