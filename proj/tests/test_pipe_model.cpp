#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>

#include "eqgirth/errors.hpp"
#include "eqgirth/pipe_model.hpp"
#include "oracles.hpp"

using namespace eqgirth;
using oracle::Rational;

namespace {

CostQuadruple random_quad(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 0.5);
  return {u(rng), u(rng), u(rng), u(rng)};
}

}  // namespace

TEST_CASE("PipeParams and planar regions") {
  CHECK_THROWS_AS(PipeParams(0.0, 0.2, 0.01), DomainError);
  CHECK_THROWS_AS(PipeParams(0.2, 0.49, 0.01), DomainError);
  CHECK_THROWS_AS(PipeParams(0.2, 0.2, 0.0), DomainError);
  CHECK_THROWS_AS(PipeParams(0.2, 0.2, 0.2), DomainError);

  const PlanarRegions r = planar_regions(PipeParams(0.2, 0.3, 0.01));
  CHECK(r.L == 0.3);
  CHECK(r.R == doctest::Approx(0.19).epsilon(1e-15));
  CHECK(r.C == 0.2);
  CHECK(r.U == doctest::Approx(0.29).epsilon(1e-15));
  CHECK(r.Pe == 0.01);
  CHECK(r.Pi == 0.01);
  CHECK(std::abs(r.total() - 1.0) <= 1e-15);

  const double mid = (0.5 - 0.01) / 2;
  const PlanarRegions s = planar_regions(PipeParams(mid, mid, 0.01));
  CHECK(s.L == s.R);
  CHECK(s.C == s.U);

  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> d(1e-4, 0.1);
  for (int i = 0; i < 1000; ++i) {
    const double delta = d(rng);
    std::uniform_real_distribution<double> ab(1e-6, 0.5 - delta - 1e-6);
    const PlanarRegions p = planar_regions(PipeParams(ab(rng), ab(rng), delta));
    for (double v : {p.L, p.R, p.C, p.U, p.Pe, p.Pi}) CHECK(v >= 0.0);
    CHECK(std::abs(p.total() - 1.0) <= 1e-15);
  }
}

TEST_CASE("parameter charts") {
  const double d = 0.01, e = 0.05;
  const double top = kPi / 2 - e;
  CHECK(area_S(top, d, e) == 0.0);
  CHECK(area_S(0.0, d, e) == 0.25 - d / 2);
  CHECK(a_of_phi(0.0, d, e) == 0.25 - d / 2);
  CHECK(a_of_phi(top, d, e) == 0.0);
  CHECK(b_of_theta(0.0, d) == 0.5 - d);
  CHECK(b_of_theta(kTwoPi, d) == 0.0);
  CHECK(b_of_theta(kPi, d) == doctest::Approx((b_of_theta(0, d) + b_of_theta(kTwoPi, d)) / 2)
                                  .epsilon(1e-15));

  CHECK_THROWS_AS(area_S(-1e-9, d, e), DomainError);
  CHECK_THROWS_AS(area_S(top + 1e-9, d, e), DomainError);
  CHECK_THROWS_AS(a_of_phi(-top - 1e-9, d, e), DomainError);
  CHECK_THROWS_AS(b_of_theta(7.0, d), DomainError);
  CHECK_THROWS_AS(area_S(0.1, d, kPi / 4), DomainError);

  double prev = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 1000; ++i) {
    const double phi = top * i / 999.0;
    const double s = area_S(phi, d, e);
    CHECK(s < prev);
    prev = s;
    CHECK(std::abs(a_of_phi(phi, d, e) - s) <= 1e-15);
  }
  // The chart covers [0, 1/2 - delta] as phi runs over [-top, top].
  CHECK(a_of_phi(-top, d, e) == 0.5 - d);
}

TEST_CASE("cost functions at named points") {
  const CostQuadruple x0{1.0 / 3, 1.0 / 3, 1.0 / 6, 1.0 / 6};
  CHECK(f1(x0) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(f2(x0) == doctest::Approx(1.0 / 3).epsilon(1e-15));
  CHECK(F(x0) == doctest::Approx(1.0 / 3).epsilon(1e-15));

  CHECK(f1({0.25, 0.25, 0.25, 0.25}) == 0.5);
  CHECK(f2({0.5, 0.5, 0.0, 0.0}) == 1.0);
  CHECK(F({0.2, 0.4, 0.2, 0.4}) == 0.0);
  CHECK(F({0.25, 0.25, 0.3, 0.3}) == doctest::Approx(0.1).epsilon(1e-14));
  CHECK(f1({0.25, 0.25, 0.3, 0.3}) == doctest::Approx(0.45).epsilon(1e-14));
  CHECK(f1({0.0, 0.3, 0.2, 0.4}) == doctest::Approx(0.1));
  CHECK(f1({0.0, 0.3, 0.25, 0.25}) == 0.25);
}

TEST_CASE("exact branch agreement at x0") {
  const BasicCostQuadruple<Rational> x0{Rational(1, 3), Rational(1, 3), Rational(1, 6),
                                        Rational(1, 6)};
  CHECK(cost::f1(x0) == Rational(1, 3));
  CHECK(cost::f2(x0) == Rational(1, 3));
  CHECK(cost::F(x0) == Rational(1, 3));
}

TEST_CASE("library templates agree with the rational oracle on the twelfths grid") {
  for (int i = 0; i < 7 * 7 * 7 * 7; ++i) {
    const Rational a1(i % 7, 12), b1(i / 7 % 7, 12), a2(i / 49 % 7, 12), b2(i / 343, 12);
    const BasicCostQuadruple<Rational> q{a1, b1, a2, b2};
    CHECK(cost::f1(q) == oracle::rf1(a1, b1, a2, b2));
    CHECK(cost::f2(q) == oracle::rf2(a1, b1, a2, b2));
    CHECK(cost::F(q) == oracle::rF(a1, b1, a2, b2));
    CHECK(cost::F(q) <= Rational(1, 3));
  }
}

TEST_CASE("double evaluation on the sixths grid is within one ulp of the rational value") {
  // 1/2 - 1/3 and 1/6 are different doubles, so exact equality fails at a
  // few points; one ulp is the sharp statement.
  int inexact = 0;
  for (int i = 0; i < 4 * 4 * 4 * 4; ++i) {
    const int k[4] = {i % 4, i / 4 % 4, i / 16 % 4, i / 64};
    const CostQuadruple q{k[0] / 6.0, k[1] / 6.0, k[2] / 6.0, k[3] / 6.0};
    const Rational r = oracle::rF(Rational(k[0], 6), Rational(k[1], 6), Rational(k[2], 6),
                                  Rational(k[3], 6));
    const double exact = static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
    const double v = F(q);
    if (v != exact) ++inexact;
    CHECK(std::abs(v - exact) <= std::nextafter(exact, 1.0) - exact);
  }
  CHECK(inexact == 24);  // frozen from the rational oracle
}

TEST_CASE("symmetries of F") {
  std::mt19937_64 rng(21);
  for (int i = 0; i < 20000; ++i) {
    const CostQuadruple q = random_quad(rng);
    const double v = F(q);
    CHECK(v == F({q.a2, q.b2, q.a1, q.b1}));
    CHECK(v == F({q.b1, q.a1, q.b2, q.a2}));
    CHECK(v >= 0.0);
    CHECK(v <= 0.5);
    CHECK(v <= 1.0 / 3 + 1e-15);
    CHECK(v == oracle::F(q.a1, q.b1, q.a2, q.b2));
  }
  // Reflection a -> 1/2 - a is exact on dyadic inputs, where 1/2 - a is
  // representable without rounding.
  for (int i = 0; i < 20000; ++i) {
    std::uniform_int_distribution<int> k(0, 1 << 20);
    const double s = 0.5 / (1 << 20);
    const CostQuadruple q{k(rng) * s, k(rng) * s, k(rng) * s, k(rng) * s};
    CHECK(F(q) == F({0.5 - q.a1, q.b1, 0.5 - q.a2, q.b2}));
    CHECK(F(q) == F({q.a1, 0.5 - q.b1, q.a2, 0.5 - q.b2}));
  }
}

TEST_CASE("F is piecewise linear: slopes are sums of unit steps") {
  std::mt19937_64 rng(4);
  const double h = 1e-7;
  int checked = 0;
  for (int i = 0; i < 5000; ++i) {
    const CostQuadruple q = random_quad(rng);
    if (!is_valid({q.a1 + h, q.b1, q.a2, q.b2})) continue;
    const double left = (F(q) - F({q.a1 - h, q.b1, q.a2, q.b2})) / h;
    const double right = (F({q.a1 + h, q.b1, q.a2, q.b2}) - F(q)) / h;
    if (std::abs(left - right) > 1e-6) continue;  // kink nearby
    CHECK(std::abs(right - std::round(right)) < 1e-6);
    CHECK(std::abs(right) <= 2.0 + 1e-6);
    ++checked;
  }
  CHECK(checked > 4000);
}

TEST_CASE("pair_distance_upper") {
  const PipeParams p(1.0 / 3, 1.0 / 3, 0.01);
  const PipeParams q(1.0 / 6, 1.0 / 6, 0.01);
  CHECK(pair_distance_upper(p, p).value == 0.01);
  CHECK(pair_distance_upper(p, q).value == doctest::Approx(1.0 / 3 + 0.01).epsilon(1e-15));
  CHECK(pair_distance_upper(p, q, PipeSlack::two_delta).value ==
        doctest::Approx(1.0 / 3 + 0.02).epsilon(1e-15));
  CHECK(pair_distance_upper(p, q).source == BoundSource::cost_function);
  CHECK_THROWS_AS(pair_distance_upper(p, PipeParams(0.2, 0.2, 0.02)), DomainError);

  std::mt19937_64 rng(31);
  for (int i = 0; i < 2000; ++i) {
    std::uniform_real_distribution<double> ab(1e-6, 0.5 - 0.1 - 1e-6);
    const PipeParams x(ab(rng), ab(rng), 0.1), y(ab(rng), ab(rng), 0.1);
    CHECK(pair_distance_upper(x, y).value <= 0.5);
  }
}
