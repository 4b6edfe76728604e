#include "eqgirth/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "eqgirth/errors.hpp"
#include "eqgirth/sphere_geom.hpp"

namespace eqgirth {

GraphPerturbation::GraphPerturbation(double amplitude, int frequency, double phase)
    : amplitude_(amplitude), frequency_(frequency), phase_(phase) {
  if (!(amplitude >= 0.0 && amplitude <= kMaxAmplitude)) {
    throw DomainError("GraphPerturbation: amplitude must lie in [0, 0.1]");
  }
  if (frequency < 1) {
    throw DomainError("GraphPerturbation: frequency must be a positive integer");
  }
  if (!std::isfinite(phase)) {
    throw DomainError("GraphPerturbation: non-finite phase");
  }
}

double GraphPerturbation::value(double t) const {
  return amplitude_ * std::sin(frequency_ * t + phase_);
}

double GraphPerturbation::derivative(double t) const {
  return amplitude_ * frequency_ * std::cos(frequency_ * t + phase_);
}

double GraphPerturbation::primitive(double t) const {
  return -amplitude_ * std::cos(frequency_ * t + phase_) / frequency_;
}

// f - g is a trigonometric polynomial of degree at most max(r, s), so it has
// at most 2 max(r, s) roots per period and consecutive roots of a transversal
// pair are separated on the scale pi / (r + s). The grid below is 640 times
// finer than that scale; two roots inside one cell would need a near-tangency,
// which the extremum scan in intersection_count reports.
std::size_t bracketing_samples(const GraphPerturbation& f, const GraphPerturbation& g) {
  return 10 * static_cast<std::size_t>(f.frequency() + g.frequency()) * 64;
}

namespace {

template <class Fn>
double bisect(Fn&& fn, double lo, double hi, double f_lo) {
  while (hi - lo > kRootTolerance) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    const double fm = fn(mid);
    if (fm == 0.0) return mid;
    if ((fm < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

IntersectionSet intersection_count(const GraphPerturbation& f, const GraphPerturbation& g) {
  auto diff = [&](double t) { return f.value(t) - g.value(t); };
  auto slope = [&](double t) { return f.derivative(t) - g.derivative(t); };
  auto check_transversal = [&](double t) {
    if (std::abs(slope(t)) < kTransversalityTolerance) {
      throw DegeneracyError("intersection_count: non-transversal intersection at t = " +
                                std::to_string(t),
                            t);
    }
  };

  const std::size_t n = bracketing_samples(f, g);
  std::vector<double> t(n + 1), d(n + 1), s(n + 1);
  for (std::size_t k = 0; k < n; ++k) {
    t[k] = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    d[k] = diff(t[k]);
    s[k] = slope(t[k]);
  }
  t[n] = kTwoPi;
  d[n] = d[0];  // periodic: reuse the sample at 0
  s[n] = s[0];

  IntersectionSet out;
  for (std::size_t k = 0; k < n; ++k) {
    if (d[k] == 0.0) {
      check_transversal(t[k]);
      out.params.push_back(t[k]);
      continue;
    }
    if (d[k + 1] != 0.0 && ((d[k] < 0.0) != (d[k + 1] < 0.0))) {
      double root = bisect(diff, t[k], t[k + 1], d[k]);
      check_transversal(root);
      if (root >= kTwoPi) root -= kTwoPi;
      out.params.push_back(root);
      continue;
    }
    // No crossing in this cell; a local extremum of f - g touching zero would
    // be a tangency the sign scan cannot see.
    if ((s[k] < 0.0) != (s[k + 1] < 0.0) && s[k] != 0.0 && s[k + 1] != 0.0) {
      const double te = bisect(slope, t[k], t[k + 1], s[k]);
      if (std::abs(diff(te)) < kTransversalityTolerance) {
        throw DegeneracyError("intersection_count: tangency near t = " + std::to_string(te), te);
      }
    }
  }
  std::sort(out.params.begin(), out.params.end());
  out.count = out.params.size();
  return out;
}

OverlapDecomposition overlap_decomposition(const GraphPerturbation& f,
                                           const GraphPerturbation& g) {
  const IntersectionSet roots = intersection_count(f, g);
  if (roots.count < 2) {
    throw DegeneracyError("overlap_decomposition: fewer than two intersections",
                          roots.count == 1 ? roots.params.front() : 0.0);
  }
  OverlapDecomposition out;
  out.intersection_params = roots.params;
  const std::size_t m = roots.count;
  out.component_signed_areas.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double lo = roots.params[i];
    const double hi = i + 1 < m ? roots.params[i + 1] : roots.params[0] + kTwoPi;
    const double raw = (f.primitive(hi) - f.primitive(lo)) - (g.primitive(hi) - g.primitive(lo));
    const double area = raw / (4.0 * kPi);
    out.component_signed_areas.push_back(area);
    out.largest_component_area = std::max(out.largest_component_area, std::abs(area));
  }
  return out;
}

BoundReport lemma1_bound(const GraphPerturbation& f, const GraphPerturbation& g) {
  const OverlapDecomposition dec = overlap_decomposition(f, g);
  return {BoundKind::upper, 0.5 - dec.largest_component_area, BoundSource::energy_capacity,
          "1/2 - largest lens area after merging the smaller components into it"};
}

GraphFlowReport graph_flow_check(const GraphPerturbation& f, std::size_t n_steps,
                                 std::size_t n_starts) {
  if (n_steps < kMinFlowSteps) {
    throw DomainError("graph_flow_check: n_steps must be at least 100");
  }
  if (n_starts == 0) {
    throw DomainError("graph_flow_check: need at least one starting point");
  }
  // H(q, p) = int_0^q f, so dH/dq = f(q), dH/dp = 0.
  struct State {
    double q;
    double p;
  };
  auto field = [&](const State& x) { return State{0.0, -f.value(x.q)}; };

  const double dt = 1.0 / static_cast<double>(n_steps);
  GraphFlowReport rep;
  rep.n_steps = n_steps;
  rep.n_starts = n_starts;
  for (std::size_t j = 0; j < n_starts; ++j) {
    const double q0 = kTwoPi * static_cast<double>(j) / static_cast<double>(n_starts);
    State x{q0, 0.0};
    for (std::size_t step = 0; step < n_steps; ++step) {
      const State k1 = field(x);
      const State k2 = field({x.q + 0.5 * dt * k1.q, x.p + 0.5 * dt * k1.p});
      const State k3 = field({x.q + 0.5 * dt * k2.q, x.p + 0.5 * dt * k2.p});
      const State k4 = field({x.q + dt * k3.q, x.p + dt * k3.p});
      x.q += dt / 6.0 * (k1.q + 2.0 * k2.q + 2.0 * k3.q + k4.q);
      x.p += dt / 6.0 * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
    }
    rep.max_deviation = std::max(rep.max_deviation, std::abs(x.p - rep.sign * f.value(q0)));
  }
  return rep;
}

}  // namespace eqgirth
