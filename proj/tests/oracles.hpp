#pragma once

// Reference computations for the tests. Each one is written from the
// defining formula and shares no code with the library.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include <boost/rational.hpp>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// ---- cost functions

using Rational = boost::rational<long long>;

inline Rational rmin4(Rational a, Rational b, Rational c, Rational d) {
  Rational m = a;
  if (b < m) m = b;
  if (c < m) m = c;
  if (d < m) m = d;
  return m;
}

inline Rational rabs(Rational x) { return x < 0 ? -x : x; }

inline Rational rf1(Rational a1, Rational b1, Rational a2, Rational b2) {
  const Rational h(1, 2);
  return rmin4(a1, h - a1, b1, h - b1) + rmin4(a2, h - a2, b2, h - b2);
}

inline Rational rf2(Rational a1, Rational b1, Rational a2, Rational b2) {
  return rabs(a1 - a2) + rabs(b1 - b2);
}

inline Rational rF(Rational a1, Rational b1, Rational a2, Rational b2) {
  const Rational x = rf1(a1, b1, a2, b2);
  const Rational y = rf2(a1, b1, a2, b2);
  return x < y ? x : y;
}

inline double F(double a1, double b1, double a2, double b2) {
  const double m1 = std::fmin(std::fmin(a1, 0.5 - a1), std::fmin(b1, 0.5 - b1));
  const double m2 = std::fmin(std::fmin(a2, 0.5 - a2), std::fmin(b2, 0.5 - b2));
  return std::fmin(m1 + m2, std::fabs(a1 - a2) + std::fabs(b1 - b2));
}

struct DiagonalMax {
  double value = -1.0;
  double s = 0.0;
  double t = 0.0;
};

// Brute force over the slice a1 = b1 = s, a2 = b2 = t.
inline DiagonalMax diagonal_brute_force(double step) {
  const auto n = static_cast<long>(std::llround(0.5 / step));
  DiagonalMax best;
  for (long i = 0; i <= n; ++i) {
    const double s = 0.5 * static_cast<double>(i) / static_cast<double>(n);
    for (long j = 0; j <= n; ++j) {
      const double t = 0.5 * static_cast<double>(j) / static_cast<double>(n);
      const double v = F(s, s, t, t);
      if (v > best.value) best = {v, s, t};
    }
  }
  return best;
}

// ---- sinusoid intersections

// Sign changes (plus exact zeros) of a sin(r t) - a sin(s t) over `samples`
// equally spaced points of [0, 2 pi).
inline std::size_t sign_change_count(double amp, int r, int s, std::size_t samples = 100000) {
  auto h = [&](double t) { return amp * std::sin(r * t) - amp * std::sin(s * t); };
  std::size_t count = 0;
  double prev = h(0.0);
  if (prev == 0.0) ++count;
  for (std::size_t k = 1; k <= samples; ++k) {
    const double t = 2.0 * pi * static_cast<double>(k) / static_cast<double>(samples);
    const double cur = k == samples ? h(0.0) : h(t);
    if (cur == 0.0 && k < samples) ++count;
    else if (prev != 0.0 && cur != 0.0 && (prev < 0.0) != (cur < 0.0)) ++count;
    prev = cur;
  }
  return count;
}

// Composite Simpson rule for int_lo^hi g(t) dt / (4 pi).
template <class G>
double normalized_integral(G&& g, double lo, double hi, std::size_t n = 20000) {
  if (n % 2) ++n;
  const double h = (hi - lo) / static_cast<double>(n);
  double sum = g(lo) + g(hi);
  for (std::size_t k = 1; k < n; ++k) {
    sum += (k % 2 ? 4.0 : 2.0) * g(lo + h * static_cast<double>(k));
  }
  return sum * h / 3.0 / (4.0 * pi);
}

// ---- spherical polygons

using V3 = std::array<double, 3>;

inline V3 cross3(const V3& a, const V3& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double dot3(const V3& a, const V3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

// Signed solid angle of the geodesic triangle (a, b, c), Van Oosterom and
// Strackee.
inline double triangle_solid_angle(const V3& a, const V3& b, const V3& c) {
  const double num = dot3(a, cross3(b, c));
  const double den = 1.0 + dot3(a, b) + dot3(b, c) + dot3(c, a);
  return 2.0 * std::atan2(num, den);
}

// Normalized area to the left of a geodesic polygon that stays inside the
// open hemisphere around `apex`, by fanning triangles from `apex`.
inline double polygon_area_from_apex(const std::vector<V3>& poly, const V3& apex) {
  double omega = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    omega += triangle_solid_angle(apex, poly[i], poly[(i + 1) % poly.size()]);
  }
  double a = omega / (4.0 * pi);
  if (a < 0.0) a += 1.0;
  return a;
}

// ---- rotations

// Rotation matrix about a unit axis, built from the exponential of the cross
// product matrix.
inline std::array<V3, 3> rotation_matrix(const V3& u, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double C = 1.0 - c;
  const double x = u[0], y = u[1], z = u[2];
  return {{{c + x * x * C, x * y * C - z * s, x * z * C + y * s},
           {y * x * C + z * s, c + y * y * C, y * z * C - x * s},
           {z * x * C - y * s, z * y * C + x * s, c + z * z * C}}};
}

inline V3 apply(const std::array<V3, 3>& m, const V3& v) {
  return {dot3(m[0], v), dot3(m[1], v), dot3(m[2], v)};
}

}  // namespace oracle
