#pragma once

// Pipe equators and the two energy estimates for moving one into another.
//
// A pipe equator is fixed by the pipe area delta and two side areas: `a`, the
// area on one side of the pipe in the upper hemisphere, and `b`, the part of
// the lower hemisphere not yet flowed through that pipe.
//
// The cost functions are templates so the same expressions can be evaluated
// in exact rational arithmetic as well as in double precision. The double
// instantiation is also the reference for kernels::cost_F: keep the operation
// order in sync with src/kernels/.

#include <algorithm>

#include "eqgirth/hofer_bounds.hpp"

namespace eqgirth {

inline constexpr double kDefaultDelta = 0.01;
inline constexpr double kDefaultEps = 0.05;
inline constexpr double kMaxDelta = 0.1;

class PipeParams {
 public:
  // Requires 0 < delta <= kMaxDelta, 0 < a < 1/2 - delta, 0 < b < 1/2 - delta.
  PipeParams(double a, double b, double delta);

  double a() const { return a_; }
  double b() const { return b_; }
  double delta() const { return delta_; }

 private:
  double a_;
  double b_;
  double delta_;
};

// Areas of the six planar regions of a pipe equator:
// L (lower hemisphere, not flowed) = b, R (lower, flowed) = 1/2 - delta - b,
// C (upper, not flowed) = a, U (upper, flowed) = 1/2 - delta - a,
// and the two pipes Pe (upper) and Pi (lower) of area delta.
struct PlanarRegions {
  double L;
  double R;
  double C;
  double U;
  double Pe;
  double Pi;

  double total() const { return L + R + C + U + Pe + Pi; }
};

PlanarRegions planar_regions(const PipeParams& p);

template <class T>
struct BasicCostQuadruple {
  T a1;
  T b1;
  T a2;
  T b2;
};

using CostQuadruple = BasicCostQuadruple<double>;

// Coordinates in the closed cube [0, 1/2]^4.
bool is_valid(const CostQuadruple& q);

namespace cost {

template <class T>
T half() {
  return T(1) / T(2);
}

template <class T>
T abs_diff(const T& x, const T& y) {
  return x < y ? y - x : x - y;
}

// Cheapest way to flow one pipe equator onto the boundary circle: flow one of
// the regions of area a, 1/2 - a, b, 1/2 - b (pipes excluded).
template <class T>
T side_cost(const T& a, const T& b) {
  const T h = half<T>();
  return std::min(std::min(a, T(h - a)), std::min(b, T(h - b)));
}

// Flow both equators onto the boundary circle.
template <class T>
T f1(const BasicCostQuadruple<T>& q) {
  return side_cost(q.a1, q.b1) + side_cost(q.a2, q.b2);
}

// Flow the differences between the two equators.
template <class T>
T f2(const BasicCostQuadruple<T>& q) {
  return abs_diff(q.a1, q.a2) + abs_diff(q.b1, q.b2);
}

template <class T>
T F(const BasicCostQuadruple<T>& q) {
  return std::min(f1(q), f2(q));
}

}  // namespace cost

inline double f1(const CostQuadruple& q) { return cost::f1(q); }
inline double f2(const CostQuadruple& q) { return cost::f2(q); }
inline double F(const CostQuadruple& q) { return cost::F(q); }

// Area(S) = (1 - 2 delta) / (4 eps - 2 pi) * phi - delta / 2 + 1/4 for
// phi in [0, pi/2 - eps]; requires 0 < eps < pi/4 and 0 < delta <= kMaxDelta.
double area_S(double phi, double delta, double eps);

// a(phi) = (2 delta - 1) / (2 pi - 4 eps) * phi + 1/4 - delta/2 for
// |phi| <= pi/2 - eps. Runs from 1/2 - delta at phi = -(pi/2 - eps) down to 0
// at phi = pi/2 - eps.
double a_of_phi(double phi, double delta, double eps);

// b(theta) = (2 delta - 1) / (4 pi) * theta + 1/2 - delta for theta in
// [0, 2 pi].
double b_of_theta(double theta, double delta);

// How many pipe areas to add to the cost-function bound.
enum class PipeSlack { one_delta, two_delta };

// d_H(i_p(a1, b1), i_p(a2, b2)) <= F(a1, b1, a2, b2) + slack, where slack is
// delta or 2 delta. Both parameters must share delta.
BoundReport pair_distance_upper(const PipeParams& p1, const PipeParams& p2,
                                PipeSlack slack = PipeSlack::one_delta);

double slack_amount(PipeSlack slack, double delta);

}  // namespace eqgirth
