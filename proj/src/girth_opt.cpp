#include "eqgirth/girth_opt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <string>
#include <tuple>

#include "eqgirth/errors.hpp"
#include "eqgirth/kernels.hpp"
#include "parallel.hpp"

namespace eqgirth {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

std::vector<double> half_interval_grid(std::size_t intervals) {
  std::vector<double> g(intervals + 1);
  const double n = static_cast<double>(intervals);
  for (std::size_t k = 0; k <= intervals; ++k) g[k] = (0.5 * static_cast<double>(k)) / n;
  return g;
}

bool lex_less(const CostQuadruple& x, const CostQuadruple& y) {
  return std::tie(x.a1, x.b1, x.a2, x.b2) < std::tie(y.a1, y.b1, y.a2, y.b2);
}

bool near(const CostQuadruple& x, const CostQuadruple& y, double tol) {
  return std::abs(x.a1 - y.a1) <= tol && std::abs(x.b1 - y.b1) <= tol &&
         std::abs(x.a2 - y.a2) <= tol && std::abs(x.b2 - y.b2) <= tol;
}

// A linear function c . (a1, b1, a2, b2) + c0.
struct Affine {
  std::array<double, 4> c{};
  double c0 = 0.0;

  double at(const std::array<double, 4>& x) const {
    return c0 + c[0] * x[0] + c[1] * x[1] + c[2] * x[2] + c[3] * x[3];
  }
};

// The four pieces of the side cost of coordinates (i, i + 1): a, 1/2 - a, b,
// 1/2 - b.
std::array<Affine, 4> side_pieces(int i) {
  std::array<Affine, 4> p{};
  p[0].c[i] = 1.0;
  p[1].c[i] = -1.0;
  p[1].c0 = 0.5;
  p[2].c[i + 1] = 1.0;
  p[3].c[i + 1] = -1.0;
  p[3].c0 = 0.5;
  return p;
}

// Maximizes obj . x subject to A x <= rhs, x >= 0, where rhs >= 0 so the
// slack basis is feasible. Dense tableau, Bland's rule.
template <std::size_t N>
std::array<double, N> simplex_max(const std::vector<std::array<double, N>>& A,
                                  const std::vector<double>& rhs,
                                  const std::array<double, N>& obj) {
  constexpr double kPivotEps = 1e-12;
  const std::size_t m = A.size();
  const std::size_t cols = N + m + 1;
  std::vector<std::vector<double>> T(m + 1, std::vector<double>(cols, 0.0));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < N; ++j) T[i][j] = A[i][j];
    T[i][N + i] = 1.0;
    T[i][cols - 1] = rhs[i];
    basis[i] = N + i;
  }
  for (std::size_t j = 0; j < N; ++j) T[m][j] = -obj[j];

  for (int iter = 0; iter < 1000; ++iter) {
    std::size_t enter = cols;
    for (std::size_t j = 0; j + 1 < cols; ++j) {
      if (T[m][j] < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter == cols) break;
    std::size_t leave = m;
    double best_ratio = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= kPivotEps) continue;
      const double ratio = T[i][cols - 1] / T[i][enter];
      if (leave == m || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave == m) break;  // unbounded; cannot happen for a boxed problem
    const double piv = T[leave][enter];
    for (double& v : T[leave]) v /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || T[i][enter] == 0.0) continue;
      const double f = T[i][enter];
      for (std::size_t j = 0; j < cols; ++j) T[i][j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }
  std::array<double, N> x{};
  for (std::size_t i = 0; i < m; ++i) {
    if (basis[i] < N) x[basis[i]] = T[i][cols - 1];
  }
  return x;
}

// Exact maximum of F over the box [q - step, q + step] clipped to the cube.
//
// f1 is the minimum of the 16 sums of side-cost pieces and f2 the maximum of
// the 4 signed sums +-(a1 - a2) +-(b1 - b2). Hence
//   max F = max_j max_box min(f1, M_j),
// and each inner problem is a linear program in (x, t): maximize t with
// t <= every f1 piece, t <= M_j. Variables are shifted to y = x - lo and
// t' = t + 1 so that the origin is feasible.
CostQuadruple refine_point(const CostQuadruple& q, double step) {
  const std::array<double, 4> centre{q.a1, q.b1, q.a2, q.b2};
  std::array<double, 4> lo{}, width{};
  for (int k = 0; k < 4; ++k) {
    lo[k] = std::max(0.0, centre[k] - step);
    width[k] = std::min(0.5, centre[k] + step) - lo[k];
  }

  std::vector<Affine> f1_pieces;
  for (const Affine& p1 : side_pieces(0)) {
    for (const Affine& p2 : side_pieces(2)) {
      Affine s;
      for (int k = 0; k < 4; ++k) s.c[k] = p1.c[k] + p2.c[k];
      s.c0 = p1.c0 + p2.c0;
      f1_pieces.push_back(s);
    }
  }

  CostQuadruple best = q;
  double best_value = F(q);
  for (double sa : {1.0, -1.0}) {
    for (double sb : {1.0, -1.0}) {
      const Affine mj{{sa, sb, -sa, -sb}, 0.0};
      std::vector<std::array<double, 5>> A;
      std::vector<double> rhs;
      auto bound_t = [&](const Affine& piece) {
        // t' - c . y <= piece(lo) + 1
        A.push_back({-piece.c[0], -piece.c[1], -piece.c[2], -piece.c[3], 1.0});
        rhs.push_back(std::max(0.0, piece.at(lo) + 1.0));
      };
      for (const Affine& p : f1_pieces) bound_t(p);
      bound_t(mj);
      for (int k = 0; k < 4; ++k) {
        std::array<double, 5> row{};
        row[static_cast<std::size_t>(k)] = 1.0;
        A.push_back(row);
        rhs.push_back(width[k]);
      }
      const auto y = simplex_max<5>(A, rhs, {0.0, 0.0, 0.0, 0.0, 1.0});
      CostQuadruple cand{};
      double* out[4] = {&cand.a1, &cand.b1, &cand.a2, &cand.b2};
      for (int k = 0; k < 4; ++k) {
        *out[k] = std::clamp(lo[k] + y[static_cast<std::size_t>(k)], lo[k], lo[k] + width[k]);
      }
      const double v = F(cand);
      if (v > best_value) {
        best_value = v;
        best = cand;
      }
    }
  }
  return best;
}

std::vector<CostQuadruple> dedup_sorted(std::vector<CostQuadruple> pts) {
  std::sort(pts.begin(), pts.end(), lex_less);
  std::vector<CostQuadruple> out;
  for (const auto& p : pts) {
    const bool dup = std::any_of(out.begin(), out.end(),
                                 [&](const CostQuadruple& o) { return near(o, p, kArgmaxDedup); });
    if (!dup) out.push_back(p);
  }
  return out;
}

constexpr std::size_t kMaxRefineCandidates = 2048;

}  // namespace

OptimizationResult maximize_F(double resolution, bool refine) {
  if (!(resolution >= 1e-4 && resolution <= 1e-1)) {
    throw ConfigError("maximize_F: resolution must lie in [1e-4, 1e-1]");
  }
  const auto intervals = static_cast<std::size_t>(std::llround(0.5 / resolution));
  const std::size_t P = intervals + 1;
  const double total = std::pow(static_cast<double>(P), 4);
  if (total > kMaxGridPoints) {
    throw ConfigError("maximize_F: grid of " + std::to_string(P) +
                      "^4 points exceeds the sweep budget; use a coarser resolution with "
                      "refinement");
  }
  const std::vector<double> g = half_interval_grid(intervals);

  // Inner plane (a2, b2), row-major.
  std::vector<double> a2(P * P), b2(P * P);
  for (std::size_t i = 0; i < P; ++i) {
    for (std::size_t j = 0; j < P; ++j) {
      a2[i * P + j] = g[i];
      b2[i * P + j] = g[j];
    }
  }

  // Per-row analytic bound: F <= f1 <= m1 + 1/4 and F <= f2 <= max|a1 - a2| +
  // max|b1 - b2|.
  const std::size_t rows = P * P;
  std::vector<double> row_bound(rows);
  for (std::size_t r = 0; r < rows; ++r) {
    const double a1 = g[r / P], b1 = g[r % P];
    row_bound[r] = std::min(cost::side_cost(a1, b1) + 0.25,
                            std::max(a1, 0.5 - a1) + std::max(b1, 0.5 - b1));
  }

  std::vector<kernels::ArgMax> row_best(rows, kernels::ArgMax{kNegInf, 0});
  auto sweep_row = [&](std::size_t r) {
    row_best[r] = kernels::cost_F_max(g[r / P], g[r % P], a2, b2);
  };

  // Seed: the P rows with the largest bound (ties in row order). The seed only
  // decides which rows may be skipped, so the result does not depend on it.
  std::vector<std::size_t> order(rows);
  for (std::size_t r = 0; r < rows; ++r) order[r] = r;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return row_bound[x] > row_bound[y]; });
  const std::size_t seed_rows = std::min(rows, P);
  detail::parallel_for(seed_rows, [&](std::size_t begin, std::size_t end) {
    for (std::size_t s = begin; s < end; ++s) sweep_row(order[s]);
  });
  double seed_best = kNegInf;
  for (std::size_t s = 0; s < seed_rows; ++s) seed_best = std::max(seed_best, row_best[order[s]].value);

  // Refinement candidates may sit up to 2 steps below the grid maximum (F is
  // 1-Lipschitz per coordinate in each branch), so keep those rows too.
  const double step = 0.5 / static_cast<double>(intervals);
  const double keep_margin = (refine ? 2.0 * step : 0.0) + kArgmaxTolerance;
  std::vector<char> skipped(rows, 0);
  detail::parallel_for(rows, [&](std::size_t begin, std::size_t end) {
    for (std::size_t r = begin; r < end; ++r) {
      if (row_best[r].value != kNegInf) continue;
      if (row_bound[r] < seed_best - keep_margin) {
        skipped[r] = 1;
        continue;
      }
      sweep_row(r);
    }
  });

  OptimizationResult result;
  result.intervals = intervals;
  result.grid_resolution = step;
  result.refined = refine;
  result.rows_pruned = static_cast<std::size_t>(std::count(skipped.begin(), skipped.end(), 1));

  double grid_max = kNegInf;
  for (const auto& rb : row_best) grid_max = std::max(grid_max, rb.value);

  // Collect points near the maximum in row-major (= lexicographic) order.
  const double collect_below = refine ? 2.0 * step : kArgmaxTolerance;
  std::vector<double> buf(P * P);
  std::vector<CostQuadruple> argmax;
  using Scored = std::pair<double, std::size_t>;  // (value, flat index)
  auto worse = [](const Scored& x, const Scored& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  };
  std::priority_queue<Scored, std::vector<Scored>, decltype(worse)> near_max(worse);
  for (std::size_t r = 0; r < rows; ++r) {
    if (row_best[r].value < grid_max - collect_below) continue;
    const double a1 = g[r / P], b1 = g[r % P];
    kernels::cost_F(a1, b1, a2, b2, buf);
    for (std::size_t c = 0; c < P * P; ++c) {
      if (buf[c] >= grid_max - kArgmaxTolerance) argmax.push_back({a1, b1, a2[c], b2[c]});
      if (refine && buf[c] >= grid_max - collect_below) {
        near_max.emplace(buf[c], r * P * P + c);
        if (near_max.size() > kMaxRefineCandidates) near_max.pop();
      }
    }
  }

  double best = grid_max;
  if (refine) {
    std::vector<CostQuadruple> refined;
    while (!near_max.empty()) {
      const std::size_t flat = near_max.top().second;
      near_max.pop();
      const std::size_t r = flat / (P * P), c = flat % (P * P);
      refined.push_back(refine_point({g[r / P], g[r % P], a2[c], b2[c]}, step));
    }
    for (const auto& q : refined) best = std::max(best, F(q));
    argmax.insert(argmax.end(), refined.begin(), refined.end());
  }
  std::erase_if(argmax, [&](const CostQuadruple& q) { return F(q) < best - kArgmaxTolerance; });

  result.max_value = best;
  result.argmax_points = dedup_sorted(std::move(argmax));
  return result;
}

DiagonalMaximum maximize_F_on_diagonal(double step) {
  if (!(step > 0.0 && step <= 0.5)) {
    throw ConfigError("maximize_F_on_diagonal: step must lie in (0, 1/2]");
  }
  const auto intervals = static_cast<std::size_t>(std::llround(0.5 / step));
  const std::vector<double> g = half_interval_grid(intervals);
  DiagonalMaximum best{kNegInf, 0.0, 0.0};
  for (double s : g) {
    const kernels::ArgMax am = kernels::cost_F_max(s, s, g, g);
    // The inner sweep pairs (a2, b2) = (g[i], g[i]) only.
    if (am.value > best.max_value) best = {am.value, s, g[am.index]};
  }
  return best;
}

CaseSplitReport verify_case_split(std::size_t inner_grid, std::size_t outer_grid) {
  if (inner_grid < 2 || outer_grid < 7 || (outer_grid - 1) % 6 != 0) {
    throw ConfigError("verify_case_split: need inner_grid >= 2 and outer_grid - 1 divisible by 6");
  }
  constexpr double kThird = 1.0 / 3.0;
  constexpr double kSixth = 1.0 / 6.0;
  constexpr double kTol = 1e-12;

  CaseSplitReport rep;
  rep.inner_grid = inner_grid;
  rep.outer_grid = outer_grid;

  // (i) Inner cube, points (n + k) / (6 n) with n = inner_grid - 1.
  {
    const std::size_t n = inner_grid - 1;
    std::vector<double> c(inner_grid);
    for (std::size_t k = 0; k <= n; ++k) {
      c[k] = static_cast<double>(n + k) / static_cast<double>(6 * n);
    }
    for (double a1 : c)
      for (double b1 : c)
        for (double a2 : c)
          for (double b2 : c) {
            const CostQuadruple q{a1, b1, a2, b2};
            ++rep.inner_points;
            if (f2(q) > kThird + kTol && rep.inner_counterexamples.size() < kMaxCounterexamples) {
              rep.inner_counterexamples.push_back(q);
            }
          }
    rep.inner_claim_holds = rep.inner_counterexamples.empty();
  }

  // (ii) Outside the cube on the grid k / (2 n), n = outer_grid - 1. The cube
  // faces are k = n/3 and k = 2n/3 in these units.
  {
    const std::size_t n = outer_grid - 1;
    const std::vector<double> g = half_interval_grid(n);
    auto inside = [n](std::size_t k) { return 3 * k >= n && 3 * k <= 2 * n; };
    bool F_ok = true;
    for (std::size_t i = 0; i <= n; ++i)
      for (std::size_t j = 0; j <= n; ++j)
        for (std::size_t k = 0; k <= n; ++k)
          for (std::size_t l = 0; l <= n; ++l) {
            if (inside(i) && inside(j) && inside(k) && inside(l)) continue;
            const CostQuadruple q{g[i], g[j], g[k], g[l]};
            ++rep.outer_points;
            const double m1 = cost::side_cost(q.a1, q.b1);
            const double m2 = cost::side_cost(q.a2, q.b2);
            if (m1 > kSixth + kTol || m2 > kSixth + kTol) {
              ++rep.outer_violations;
              if (rep.outer_counterexamples.size() < kMaxCounterexamples) {
                rep.outer_counterexamples.push_back(q);
              }
            }
            if (f1(q) > kThird + kTol) {
              ++rep.outer_f1_violations;
              if (rep.outer_f1_counterexamples.size() < kMaxCounterexamples) {
                rep.outer_f1_counterexamples.push_back(q);
              }
            }
            if (F(q) > kThird + kTol) F_ok = false;
          }
    rep.outer_claim_holds = rep.outer_violations == 0;
    rep.outer_f1_bound_holds = rep.outer_f1_violations == 0;
    rep.outer_F_bound_holds = F_ok;
  }
  return rep;
}

bool in_transition_band(double phi, double eps) { return std::abs(phi) > kPi / 2 - 2.0 * eps; }

AngleCoords diameter_grid_point(std::size_t i_theta, std::size_t i_phi, std::size_t n_theta,
                                std::size_t n_phi) {
  return {kTwoPi * (static_cast<double>(i_theta) + 0.5) / static_cast<double>(n_theta),
          -kPi / 2 + kPi * (static_cast<double>(i_phi) + 0.5) / static_cast<double>(n_phi)};
}

PipeParams pipe_params_at(const AngleCoords& c, double delta, double eps) {
  if (in_transition_band(c.phi, eps)) {
    throw DomainError("pipe_params_at: point lies in a transition band");
  }
  return PipeParams(a_of_phi(c.phi, delta, eps), b_of_theta(c.theta, delta), delta);
}

DiameterReport embedding_diameter_bound(double delta, double eps, std::size_t n_theta,
                                        std::size_t n_phi, PipeSlack slack) {
  if (n_theta < kMinDiameterGrid || n_phi < kMinDiameterGrid) {
    throw ConfigError("embedding_diameter_bound: grid must be at least 32 x 32");
  }
  if (!(delta > 0.0 && delta <= kMaxDelta) || !(eps > 0.0 && eps < kPi / 4)) {
    throw ConfigError("embedding_diameter_bound: need 0 < delta <= 0.1 and 0 < eps < pi/4");
  }

  DiameterReport rep;
  rep.delta = delta;
  rep.eps = eps;
  rep.slack_mode = slack;
  rep.n_theta = n_theta;
  rep.n_phi = n_phi;
  rep.band_slack = 2.0 * eps;

  std::vector<AngleCoords> pipe_pts, band_pts;
  std::vector<double> a, b;
  for (std::size_t ip = 0; ip < n_phi; ++ip) {
    for (std::size_t it = 0; it < n_theta; ++it) {
      const AngleCoords c = diameter_grid_point(it, ip, n_theta, n_phi);
      if (in_transition_band(c.phi, eps)) {
        band_pts.push_back(c);
      } else {
        const PipeParams p = pipe_params_at(c, delta, eps);
        pipe_pts.push_back(c);
        a.push_back(p.a());
        b.push_back(p.b());
      }
    }
  }
  rep.pipe_points = pipe_pts.size();
  rep.band_points = band_pts.size();
  rep.has_band_points = !band_pts.empty();
  if (pipe_pts.empty()) {
    throw ConfigError("embedding_diameter_bound: no grid point outside the transition bands");
  }

  const double pipe_slack = slack_amount(slack, delta);

  // Core: all pairs of pipe equators, one kernel sweep per row.
  const std::size_t n = pipe_pts.size();
  std::vector<kernels::ArgMax> row(n);
  detail::parallel_for(n, [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) row[i] = kernels::cost_F_max(a[i], b[i], a, b);
  });
  std::size_t wi = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (row[i].value > row[wi].value) wi = i;
  }
  const std::size_t wj = row[wi].index;
  rep.core_max_bound = row[wi].value + pipe_slack;
  rep.core_witness_pair = {pipe_pts[wi], pipe_pts[wj]};
  rep.core_witness_params = {PipeParams(a[wi], b[wi], delta), PipeParams(a[wj], b[wj], delta)};
  rep.max_bound = rep.core_max_bound;
  rep.witness_pair = rep.core_witness_pair;

  // Bands: every band equator is taken to be within band_slack of L0, and a
  // pipe equator reaches L0 by flowing its cheapest side plus one pipe.
  if (rep.has_band_points) {
    std::size_t closest = 0;
    double to_l0 = kNegInf;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = cost::side_cost(a[i], b[i]) + delta;
      if (d > to_l0) {
        to_l0 = d;
        closest = i;
      }
    }
    const double band_core = std::max(to_l0, 0.0);
    rep.band_max_bound = band_core + rep.band_slack;
    if (rep.band_max_bound > rep.max_bound) {
      rep.max_bound = rep.band_max_bound;
      rep.witness_pair = {band_pts.front(), pipe_pts[closest]};
    }
  }
  return rep;
}

}  // namespace eqgirth
