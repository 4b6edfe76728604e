#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "eqgirth/errors.hpp"
#include "eqgirth/sphere_geom.hpp"
#include "oracles.hpp"

using namespace eqgirth;

namespace {

SpherePoint random_point(std::mt19937_64& rng) {
  std::normal_distribution<double> n;
  return SpherePoint::normalized({n(rng), n(rng), n(rng)});
}

// A cap boundary with a radial wobble: radius alpha + w sin(k t) about c.
std::vector<SpherePoint> wobbly_loop(const SpherePoint& c, double alpha, double w, int k,
                                     std::size_t n) {
  const Vec3 helper = std::abs(c.z()) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
  const Vec3 e1 = (1.0 / norm(cross(helper, c.vec()))) * cross(helper, c.vec());
  const Vec3 e2 = cross(c.vec(), e1);
  std::vector<SpherePoint> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    const double r = alpha + w * std::sin(k * t);
    const Vec3 v = std::cos(r) * c.vec() + std::sin(r) * (std::cos(t) * e1 + std::sin(t) * e2);
    pts.push_back(SpherePoint::normalized(v));
  }
  return pts;
}

}  // namespace

TEST_CASE("SpherePoint rejects non-unit vectors") {
  CHECK_NOTHROW(SpherePoint(0.0, 0.0, 1.0));
  CHECK_THROWS_AS(SpherePoint(0.0, 0.0, 1.0 + 1e-9), DomainError);
  CHECK_THROWS_AS(SpherePoint::normalized({0, 0, 0}), DomainError);
  const SpherePoint p = SpherePoint::normalized({3, 4, 0});
  CHECK(p.x() == doctest::Approx(0.6));
  CHECK(p.y() == doctest::Approx(0.8));
}

TEST_CASE("angles_to_point") {
  SUBCASE("theta = pi on C_0 is the north pole") {
    const SpherePoint p = angles_to_point({kPi, 0.0});
    CHECK(std::abs(p.x()) < 1e-15);
    CHECK(std::abs(p.y()) < 1e-15);
    CHECK(p.z() == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("theta -> 0 approaches the south pole") {
    const SpherePoint p = angles_to_point({1e-9, 0.3});
    CHECK(angle_between(p, SpherePoint::south_pole()) < 1e-8);
    const SpherePoint q = angles_to_point({kTwoPi - 1e-9, -0.7});
    CHECK(angle_between(q, SpherePoint::south_pole()) < 1e-8);
  }
  SUBCASE("every circle C_phi passes through the south pole") {
    for (double phi : {-1.2, -0.4, 0.0, 0.9, 1.5}) {
      const SpherePoint p = angles_to_point({0.0, phi});
      CHECK(angle_between(p, SpherePoint::south_pole()) < 1e-12);
    }
  }
  SUBCASE("phi = 0 stays in the xz-plane") {
    for (int i = 0; i < 64; ++i) {
      const SpherePoint p = angles_to_point({kTwoPi * i / 64.0, 0.0});
      CHECK(std::abs(p.y()) <= 1e-12);
    }
  }
  SUBCASE("boundary latitudes are rejected") {
    CHECK_THROWS_AS(angles_to_point({1.0, kPi / 2}), DomainError);
    CHECK_THROWS_AS(angles_to_point({1.0, -kPi / 2}), DomainError);
    CHECK_THROWS_AS(angles_to_point({1.0, kFanPhiLimit}), DomainError);
    CHECK_THROWS_AS(angles_to_point({1.0, -kFanPhiLimit}), DomainError);
    CHECK_NOTHROW(angles_to_point({1.0, kFanPhiLimit - 1e-9}));
  }
  SUBCASE("continuity in both arguments") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> th(0.0, kTwoPi), ph(-1.4, 1.4);
    for (int i = 0; i < 200; ++i) {
      const double t = th(rng), f = ph(rng);
      const SpherePoint p = angles_to_point({t, f});
      const SpherePoint q = angles_to_point({t + 1e-7, f + 1e-7});
      CHECK(angle_between(p, q) < 1e-6);
    }
  }
}

TEST_CASE("cap_area") {
  CHECK(cap_area(0.0) == 0.0);
  CHECK(cap_area(kPi / 2) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(cap_area(kPi) == 1.0);
  CHECK_THROWS_AS(cap_area(-1e-3), DomainError);
  CHECK_THROWS_AS(cap_area(kPi + 1e-3), DomainError);
  double prev = -1.0;
  for (int i = 0; i <= 1000; ++i) {
    const double a = kPi * i / 1000.0;
    const double v = cap_area(a);
    CHECK(v > prev);
    prev = v;
    CHECK(v + cap_area(kPi - a) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(v == doctest::Approx((1.0 - std::cos(a)) / 2.0).epsilon(1e-14));
  }
}

TEST_CASE("rotate") {
  const SpherePoint z = SpherePoint::north_pole();
  const SpherePoint p = rotate(SpherePoint(1.0, 0.0, 0.0), z, kPi / 2);
  CHECK(std::abs(p.x()) < 1e-15);
  CHECK(p.y() == doctest::Approx(1.0));
  CHECK(rotate(p, z, 0.0) == p);
  // A non-unit axis cannot even be formed.
  CHECK_THROWS_AS(rotate(p, SpherePoint(1.0, 1.0, 0.0), 0.1), DomainError);

  SUBCASE("matches the matrix exponential") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> ang(-10.0, 10.0);
    for (int i = 0; i < 100; ++i) {
      const SpherePoint u = random_point(rng);
      const SpherePoint x = random_point(rng);
      const double t = ang(rng);
      const auto m = oracle::rotation_matrix({u.x(), u.y(), u.z()}, t);
      const auto ref = oracle::apply(m, {x.x(), x.y(), x.z()});
      const SpherePoint y = rotate(x, u, t);
      CHECK(std::abs(y.x() - ref[0]) < 1e-13);
      CHECK(std::abs(y.y() - ref[1]) < 1e-13);
      CHECK(std::abs(y.z() - ref[2]) < 1e-13);
    }
  }
  SUBCASE("composition law") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> ang(-kPi, kPi);
    for (int i = 0; i < 100; ++i) {
      const SpherePoint u = random_point(rng);
      const SpherePoint x = random_point(rng);
      const double t1 = ang(rng), t2 = ang(rng);
      const SpherePoint a = rotate(rotate(x, u, t2), u, t1);
      const SpherePoint b = rotate(x, u, t1 + t2);
      CHECK(norm(a.vec() - b.vec()) <= 1e-12);
    }
  }
}

TEST_CASE("ClosedCurve validation") {
  std::vector<SpherePoint> few;
  for (int i = 0; i < 15; ++i) few.push_back(angles_to_point({0.1 + 0.3 * i, 0.2}));
  CHECK_THROWS_AS(ClosedCurve::on_sphere(few), DomainError);

  std::vector<SpherePoint> dup;
  for (int i = 0; i < 20; ++i) dup.push_back(angles_to_point({0.1 + 0.3 * i, 0.2}));
  dup[5] = dup[4];
  CHECK_THROWS_AS(ClosedCurve::on_sphere(dup), DomainError);

  // Duplicated endpoint is also a repeated consecutive pair.
  std::vector<SpherePoint> closed;
  for (int i = 0; i < 20; ++i) closed.push_back(angles_to_point({0.1 + 0.3 * i, 0.2}));
  closed.push_back(closed.front());
  CHECK_THROWS_AS(ClosedCurve::on_sphere(closed), DomainError);
}

TEST_CASE("enclosed_area of great circles and caps") {
  const ClosedCurve eq = great_circle(SpherePoint::north_pole(), 256);
  CHECK(enclosed_area(eq) == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(enclosed_area(eq.reversed()) == doctest::Approx(0.5).epsilon(1e-6));

  const ClosedCurve cap = cap_boundary(SpherePoint::north_pole(), kPi / 3);
  CHECK(std::abs(enclosed_area(cap) - 0.25) <= 1e-6);
  CHECK(std::abs(enclosed_area(cap.reversed()) - 0.75) <= 1e-6);

  SUBCASE("random caps at 512 samples") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> rad(0.02, kPi - 0.02);
    for (int i = 0; i < 200; ++i) {
      const SpherePoint c = random_point(rng);
      const double alpha = rad(rng);
      const ClosedCurve b = cap_boundary(c, alpha, 512);
      const double a = enclosed_area(b);
      CHECK(std::abs(a - cap_area(alpha)) <= 1e-6);
      CHECK(std::abs(a + enclosed_area(b.reversed()) - 1.0) <= 2e-6);
    }
  }
  SUBCASE("rotation invariance") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> rad(0.1, 3.0), ang(-kPi, kPi);
    for (int i = 0; i < 50; ++i) {
      const ClosedCurve b = cap_boundary(random_point(rng), rad(rng), 512);
      const ClosedCurve r = rotate(b, random_point(rng), ang(rng));
      CHECK(std::abs(enclosed_area(b) - enclosed_area(r)) <= 1e-6);
    }
  }
}

TEST_CASE("enclosed_area against a dense geodesic polygon") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 20; ++i) {
    const SpherePoint c = random_point(rng);
    const double alpha = 0.4 + 0.05 * i;
    const int k = 2 + i % 4;
    const double w = 0.15;
    const ClosedCurve curve = ClosedCurve::on_sphere(wobbly_loop(c, alpha, w, k, 512));

    std::vector<oracle::V3> dense;
    for (const SpherePoint& p : wobbly_loop(c, alpha, w, k, 1 << 17)) {
      dense.push_back({p.x(), p.y(), p.z()});
    }
    const double ref = oracle::polygon_area_from_apex(dense, {c.x(), c.y(), c.z()});
    CHECK(std::abs(enclosed_area(curve) - ref) <= 1e-6);
  }
}

TEST_CASE("enclosed_area errors") {
  SUBCASE("chart pole on the curve") {
    const ClosedCurve through_poles = great_circle(SpherePoint(1.0, 0.0, 0.0), 64);
    CHECK_THROWS_AS(enclosed_area_in_chart(through_poles, SpherePoint::north_pole()), ChartError);
    // The automatic chart avoids the poles.
    CHECK(enclosed_area(through_poles) == doctest::Approx(0.5).epsilon(1e-6));
  }
  SUBCASE("figure eight") {
    std::vector<SpherePoint> pts;
    const int n = 401;
    for (int i = 0; i < n; ++i) {
      const double t = kTwoPi * i / n;
      const double lon = 0.5 * std::sin(t);
      const double lat = 0.3 * std::sin(2 * t);
      pts.push_back(SpherePoint(std::cos(lat) * std::cos(lon), std::cos(lat) * std::sin(lon),
                                std::sin(lat)));
    }
    CHECK_THROWS_AS(enclosed_area(ClosedCurve::on_sphere(pts)), TopologyError);
  }
}
