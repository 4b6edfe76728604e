#pragma once

// Global maximization of the pipe-equator cost F over [0, 1/2]^4 and the
// resulting Hofer-diameter bound for the pipe equator embedding.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "eqgirth/pipe_model.hpp"
#include "eqgirth/sphere_geom.hpp"

namespace eqgirth {

struct OptimizationResult {
  double max_value = 0.0;
  // All grid (or refined) points within kArgmaxTolerance of max_value, in
  // lexicographic order and deduplicated at kArgmaxDedup. The first entry is
  // the canonical argmax.
  std::vector<CostQuadruple> argmax_points;
  double grid_resolution = 0.0;  // actual step: (1/2) / intervals
  std::size_t intervals = 0;     // grid points per axis minus one
  bool refined = false;
  std::size_t rows_pruned = 0;   // (a1, b1) rows skipped by the upper bound
};

inline constexpr double kArgmaxTolerance = 1e-12;
inline constexpr double kArgmaxDedup = 1e-9;

// Upper limit on (intervals + 1)^4 for the exhaustive sweep.
inline constexpr double kMaxGridPoints = 2e10;

// Exhaustive sweep of F over the grid {k * step} ^ 4, step = (1/2) / round(
// 1/(2 resolution)). Rows (a1, b1) whose analytic upper bound on F falls below
// the running maximum are skipped; this never changes the result. With
// `refine`, grid points within two steps of the grid maximum are replaced by
// the exact maximum of F over the box of one step around them (F is
// piecewise linear, so this is a handful of small linear programs).
//
// Throws ConfigError if resolution is outside [1e-4, 1e-1] or the grid exceeds
// kMaxGridPoints.
OptimizationResult maximize_F(double resolution, bool refine);

// Maximum of F restricted to a1 = b1, a2 = b2, on a grid of the given step.
// Used as a reference and for plotting.
struct DiagonalMaximum {
  double max_value;
  double a1;
  double a2;
};
DiagonalMaximum maximize_F_on_diagonal(double step);

// Numerical audit of the two-case argument for F <= 1/3.
struct CaseSplitReport {
  // (i) f2 <= 1/3 on [1/6, 1/3]^4.
  bool inner_claim_holds = false;
  std::size_t inner_points = 0;
  std::vector<CostQuadruple> inner_counterexamples;

  // (ii) outside [1/6, 1/3]^4 both side costs m_1, m_2 are <= 1/6.
  bool outer_claim_holds = false;
  std::size_t outer_points = 0;
  std::size_t outer_violations = 0;
  std::vector<CostQuadruple> outer_counterexamples;  // first few, grid order

  // What the argument actually needs outside the cube: f1 <= 1/3, and the
  // conclusion F <= 1/3.
  bool outer_f1_bound_holds = false;
  std::size_t outer_f1_violations = 0;
  std::vector<CostQuadruple> outer_f1_counterexamples;
  bool outer_F_bound_holds = false;

  std::size_t inner_grid = 0;  // points per axis on [1/6, 1/3]
  std::size_t outer_grid = 0;  // points per axis on [0, 1/2]
};

inline constexpr std::size_t kMaxCounterexamples = 8;

// Grid sizes default to 31 points per axis for both parts. The outer grid
// must have intervals divisible by 6 so the cube faces lie on grid lines.
CaseSplitReport verify_case_split(std::size_t inner_grid = 31,
                                  std::size_t outer_grid = 31);

struct DiameterReport {
  // Overall bound: max over all sampled pairs, transition bands included.
  double max_bound = 0.0;
  std::pair<AngleCoords, AngleCoords> witness_pair{};

  // Pairs of pipe equators only: F + pipe slack.
  double core_max_bound = 0.0;
  std::pair<AngleCoords, AngleCoords> core_witness_pair{};
  std::pair<PipeParams, PipeParams> core_witness_params{
      PipeParams(0.25, 0.25, kDefaultDelta), PipeParams(0.25, 0.25, kDefaultDelta)};

  // Pairs with at least one point in a polar transition band: distance to
  // L0 of the other point plus band_slack.
  double band_max_bound = 0.0;
  double band_slack = 0.0;
  bool has_band_points = false;

  double delta = 0.0;
  double eps = 0.0;
  PipeSlack slack_mode = PipeSlack::one_delta;
  std::size_t n_theta = 0;
  std::size_t n_phi = 0;
  std::size_t pipe_points = 0;
  std::size_t band_points = 0;
};

inline constexpr std::size_t kMinDiameterGrid = 32;

// Whether a fan latitude lies in a polar transition band, |phi| > pi/2 - 2 eps.
bool in_transition_band(double phi, double eps);

// Sample points of the diameter grid (cell centres in theta and phi).
AngleCoords diameter_grid_point(std::size_t i_theta, std::size_t i_phi,
                                std::size_t n_theta, std::size_t n_phi);

// Pipe parameters of a fan point outside the transition bands.
PipeParams pipe_params_at(const AngleCoords& c, double delta, double eps);

// Bound on the Hofer diameter of the sampled pipe equator embedding.
// Throws ConfigError for grids below kMinDiameterGrid or delta/eps outside
// the ranges accepted by a_of_phi and b_of_theta.
DiameterReport embedding_diameter_bound(double delta, double eps, std::size_t n_theta,
                                        std::size_t n_phi,
                                        PipeSlack slack = PipeSlack::one_delta);

}  // namespace eqgirth
