#pragma once

// Graph perturbations t -> amplitude * sin(frequency * t + phase) of a great
// circle, seen in a (q, p) strip chart around it, and the area ledger of the
// lenses two such graphs cut out.
//
// The strip carries the sphere's normalized area form, so raw integrals of
// p dq are divided by 4 pi.

#include <cstddef>
#include <vector>

#include "eqgirth/hofer_bounds.hpp"

namespace eqgirth {

class GraphPerturbation {
 public:
  static constexpr double kMaxAmplitude = 0.1;

  // Requires 0 <= amplitude <= kMaxAmplitude and frequency >= 1. Amplitude 0
  // is the unperturbed circle.
  GraphPerturbation(double amplitude, int frequency, double phase = 0.0);

  double amplitude() const { return amplitude_; }
  int frequency() const { return frequency_; }
  double phase() const { return phase_; }

  double value(double t) const;
  double derivative(double t) const;
  // Antiderivative with zero mean structure: -amplitude cos(r t + phase) / r.
  double primitive(double t) const;

 private:
  double amplitude_;
  int frequency_;
  double phase_;
};

struct IntersectionSet {
  std::size_t count = 0;
  std::vector<double> params;  // strictly increasing in [0, 2 pi)
};

// Transversality threshold on |f' - g'| at a root.
inline constexpr double kTransversalityTolerance = 1e-8;
inline constexpr double kRootTolerance = 1e-12;

// Grid samples used to bracket roots of f - g.
std::size_t bracketing_samples(const GraphPerturbation& f, const GraphPerturbation& g);

// All t in [0, 2 pi) with f(t) = g(t). Throws DegeneracyError (carrying the
// offending t) at a non-transversal crossing.
IntersectionSet intersection_count(const GraphPerturbation& f, const GraphPerturbation& g);

struct OverlapDecomposition {
  std::vector<double> intersection_params;
  // component_signed_areas[i] is the normalized integral of f - g from
  // intersection i to intersection i+1 (cyclically).
  std::vector<double> component_signed_areas;
  double largest_component_area = 0.0;
};

// Requires at least two intersections; otherwise DegeneracyError.
OverlapDecomposition overlap_decomposition(const GraphPerturbation& f,
                                           const GraphPerturbation& g);

// d_H(L, L') <= 1/2 - eps', eps' the largest lens area.
BoundReport lemma1_bound(const GraphPerturbation& f, const GraphPerturbation& g);

struct GraphFlowReport {
  double max_deviation = 0.0;
  // p(1) = sign * f(q) for the flow of H(q, p) = int_0^q f under
  // dq/dt = dH/dp, dp/dt = -dH/dq.
  double sign = -1.0;
  std::size_t n_steps = 0;
  std::size_t n_starts = 0;
};

inline constexpr std::size_t kMinFlowSteps = 100;

// Integrates the flow of H(q, p) = int_0^q f(t) dt for unit time with RK4
// from points (q, 0) on the zero section and compares with the closed form
// (q, -f(q)).
GraphFlowReport graph_flow_check(const GraphPerturbation& f, std::size_t n_steps,
                                 std::size_t n_starts = 256);

}  // namespace eqgirth
