#include "eqgirth/topology_checks.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "eqgirth/errors.hpp"

namespace eqgirth {

SpherePoint lift_reference_pole() { return SpherePoint::south_pole(); }
SpherePoint lift_singular_point() { return SpherePoint::north_pole(); }

FrameSample lift_frame(const SpherePoint& x) {
  const SpherePoint s = lift_reference_pole();
  const double to_n = angle_between(x, lift_singular_point());
  if (to_n < kSingularityClearance) {
    throw SingularityError("lift_frame: point within clearance of the singular pole");
  }
  const Vec3 axis = cross(s.vec(), x.vec());
  const double len = norm(axis);
  if (len == 0.0) return {x, kReferenceTangent};  // x is the reference pole
  const double angle = angle_between(s, x);
  const Vec3 v = rotate(kReferenceTangent, SpherePoint::normalized(axis), angle);
  return {x, v};
}

namespace {

// Differential of the stereographic projection from the south pole,
// (x, y, z) -> (x, y) / (1 + z).
std::pair<double, double> stereo_push(const Vec3& p, const Vec3& v) {
  const double w = 1.0 + p.z;
  return {v.x / w - p.x * v.z / (w * w), v.y / w - p.y * v.z / (w * w)};
}

double wrap_pi(double a) { return std::remainder(a, kTwoPi); }

template <class AngleAt>
double accumulate(std::size_t n, AngleAt&& angle_at, const char* who) {
  double total = 0.0;
  double prev = angle_at(0);
  for (std::size_t k = 1; k <= n; ++k) {
    const double cur = angle_at(k);
    const double step = wrap_pi(cur - prev);
    if (std::abs(step) > kPi / 2) {
      throw ResolutionError(std::string(who) + ": turn between samples exceeds pi/2");
    }
    total += step;
    prev = cur;
  }
  return total;
}

}  // namespace

double accumulated_frame_angle(double radius, std::size_t n_samples, Traversal traversal) {
  if (!(radius > 0.0 && radius < kPi)) {
    throw DomainError("accumulated_frame_angle: radius must lie in (0, pi)");
  }
  if (n_samples < 4) {
    throw DomainError("accumulated_frame_angle: need at least 4 samples");
  }
  const double dir = traversal == Traversal::counterclockwise ? 1.0 : -1.0;
  const double sr = std::sin(radius);
  const double cr = std::cos(radius);
  auto angle_at = [&](std::size_t k) {
    const double t = dir * kTwoPi * static_cast<double>(k % n_samples) /
                     static_cast<double>(n_samples);
    const SpherePoint x = SpherePoint::normalized({sr * std::cos(t), sr * std::sin(t), cr});
    const FrameSample f = lift_frame(x);
    const auto [dx, dy] = stereo_push(x.vec(), f.vector);
    return std::atan2(dy, dx);
  };
  return accumulate(n_samples, angle_at, "accumulated_frame_angle");
}

int winding_number_at_singularity(double radius, std::size_t n_samples, Traversal traversal) {
  if (!(radius >= 1e-3 && radius <= 0.3)) {
    throw DomainError("winding_number_at_singularity: radius must lie in [1e-3, 0.3]");
  }
  if (n_samples < 256) {
    throw DomainError("winding_number_at_singularity: need at least 256 samples");
  }
  return static_cast<int>(
      std::lround(accumulated_frame_angle(radius, n_samples, traversal) / kTwoPi));
}

double accumulated_evaluation_angle(std::size_t n_samples) {
  if (n_samples < 8) {
    throw DomainError("accumulated_evaluation_angle: need at least 8 samples");
  }
  const Vec3 base{1.0, 0.0, 0.0};
  auto angle_at = [&](std::size_t k) {
    const double t = kTwoPi * static_cast<double>(k % n_samples) / static_cast<double>(n_samples);
    const SpherePoint u = SpherePoint::normalized({std::sin(t), -std::cos(t), 0.0});
    const Vec3 img = rotate(base, u, kPi);
    if (std::abs(img.z) > kGeometricTolerance) {
      throw DomainError("accumulated_evaluation_angle: loop element moves the equator");
    }
    return std::atan2(img.y, img.x);
  };
  return accumulate(n_samples, angle_at, "accumulated_evaluation_angle");
}

int evaluation_winding_number(std::size_t n_samples) {
  return static_cast<int>(std::lround(accumulated_evaluation_angle(n_samples) / kTwoPi));
}

}  // namespace eqgirth
