#include "eqgirth/pipe_model.hpp"

#include <cmath>
#include <string>

#include "eqgirth/errors.hpp"

namespace eqgirth {

namespace {

void check_delta(double delta) {
  if (!(delta > 0.0 && delta <= kMaxDelta)) {
    throw DomainError("pipe area delta must lie in (0, 0.1]");
  }
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < kPi / 4)) {
    throw DomainError("transition width eps must lie in (0, pi/4)");
  }
}

}  // namespace

PipeParams::PipeParams(double a, double b, double delta) : a_(a), b_(b), delta_(delta) {
  check_delta(delta);
  const double hi = 0.5 - delta;
  if (!(a > 0.0 && a < hi)) {
    throw DomainError("PipeParams: a = " + std::to_string(a) + " outside (0, 1/2 - delta)");
  }
  if (!(b > 0.0 && b < hi)) {
    throw DomainError("PipeParams: b = " + std::to_string(b) + " outside (0, 1/2 - delta)");
  }
}

PlanarRegions planar_regions(const PipeParams& p) {
  const double d = p.delta();
  return {.L = p.b(),
          .R = 0.5 - d - p.b(),
          .C = p.a(),
          .U = 0.5 - d - p.a(),
          .Pe = d,
          .Pi = d};
}

bool is_valid(const CostQuadruple& q) {
  for (double c : {q.a1, q.b1, q.a2, q.b2}) {
    if (!(c >= 0.0 && c <= 0.5)) return false;
  }
  return true;
}

double area_S(double phi, double delta, double eps) {
  check_delta(delta);
  check_eps(eps);
  const double top = kPi / 2 - eps;
  if (!(phi >= 0.0 && phi <= top)) {
    throw DomainError("area_S: phi must lie in [0, pi/2 - eps]");
  }
  // At the top endpoint the linear term cancels the constant exactly; return
  // the exact value rather than the rounding residue.
  if (phi == top) return 0.0;
  return (1.0 - 2.0 * delta) / (4.0 * eps - 2.0 * kPi) * phi - delta / 2.0 + 0.25;
}

double a_of_phi(double phi, double delta, double eps) {
  check_delta(delta);
  check_eps(eps);
  const double top = kPi / 2 - eps;
  if (!(std::abs(phi) <= top)) {
    throw DomainError("a_of_phi: |phi| must not exceed pi/2 - eps");
  }
  if (phi == top) return 0.0;
  if (phi == -top) return 0.5 - delta;
  return (2.0 * delta - 1.0) / (2.0 * kPi - 4.0 * eps) * phi + 0.25 - delta / 2.0;
}

double b_of_theta(double theta, double delta) {
  check_delta(delta);
  if (!(theta >= 0.0 && theta <= kTwoPi)) {
    throw DomainError("b_of_theta: theta must lie in [0, 2 pi]");
  }
  if (theta == kTwoPi) return 0.0;
  return (2.0 * delta - 1.0) / (4.0 * kPi) * theta + 0.5 - delta;
}

double slack_amount(PipeSlack slack, double delta) {
  return slack == PipeSlack::two_delta ? 2.0 * delta : delta;
}

BoundReport pair_distance_upper(const PipeParams& p1, const PipeParams& p2, PipeSlack slack) {
  if (p1.delta() != p2.delta()) {
    throw DomainError("pair_distance_upper: pipe equators with different delta");
  }
  const CostQuadruple q{p1.a(), p1.b(), p2.a(), p2.b()};
  const double value = F(q) + slack_amount(slack, p1.delta());
  return {BoundKind::upper, value, BoundSource::cost_function,
          slack == PipeSlack::two_delta ? "min(f1, f2) + 2 delta" : "min(f1, f2) + delta"};
}

}  // namespace eqgirth
