#include <algorithm>
#include <cassert>

#include "eqgirth/kernels.hpp"
#include "eqgirth/pipe_model.hpp"

namespace eqgirth::kernels::scalar {

namespace {

void cost_F(double a1, double b1, std::span<const double> a2, std::span<const double> b2,
            std::span<double> out) {
  assert(a2.size() == b2.size() && out.size() == a2.size());
  for (std::size_t i = 0; i < a2.size(); ++i) {
    out[i] = cost::F(CostQuadruple{a1, b1, a2[i], b2[i]});
  }
}

ArgMax cost_F_max(double a1, double b1, std::span<const double> a2,
                  std::span<const double> b2) {
  assert(a2.size() == b2.size() && !a2.empty());
  ArgMax best{cost::F(CostQuadruple{a1, b1, a2[0], b2[0]}), 0};
  for (std::size_t i = 1; i < a2.size(); ++i) {
    const double v = cost::F(CostQuadruple{a1, b1, a2[i], b2[i]});
    if (v > best.value) best = {v, i};
  }
  return best;
}

double z_dtheta(std::span<const double> theta, std::span<const double> z) {
  assert(theta.size() == z.size());
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < theta.size(); ++i) {
    sum += 0.5 * (z[i] + z[i + 1]) * (theta[i + 1] - theta[i]);
  }
  return sum;
}

}  // namespace

const KernelTable& table() {
  static const KernelTable t{&cost_F, &cost_F_max, &z_dtheta};
  return t;
}

}  // namespace eqgirth::kernels::scalar
