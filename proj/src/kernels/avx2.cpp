// Compiled with -mavx2. Nothing in here may be called unless the dispatcher
// has confirmed AVX2 support at runtime.

#include <immintrin.h>

#include <cassert>

#include "eqgirth/kernels.hpp"

namespace eqgirth::kernels::avx2 {

namespace {

// Lane-wise mirror of cost::F. _mm256_min_pd(x, y) is x < y ? x : y, while
// std::min(a, b) is b < a ? b : a, hence the swapped operands.
struct CostLanes {
  __m256d half = _mm256_set1_pd(0.5);
  __m256d sign = _mm256_set1_pd(-0.0);
  __m256d a1;
  __m256d b1;
  __m256d m1;

  CostLanes(double a1s, double b1s) : a1(_mm256_set1_pd(a1s)), b1(_mm256_set1_pd(b1s)) {
    m1 = side_cost(a1, b1);
  }

  __m256d side_cost(__m256d a, __m256d b) const {
    const __m256d ma = _mm256_min_pd(_mm256_sub_pd(half, a), a);
    const __m256d mb = _mm256_min_pd(_mm256_sub_pd(half, b), b);
    return _mm256_min_pd(mb, ma);
  }

  __m256d abs_diff(__m256d x, __m256d y) const {
    return _mm256_andnot_pd(sign, _mm256_sub_pd(x, y));
  }

  __m256d operator()(__m256d a2, __m256d b2) const {
    const __m256d f1 = _mm256_add_pd(m1, side_cost(a2, b2));
    const __m256d f2 = _mm256_add_pd(abs_diff(a1, a2), abs_diff(b1, b2));
    return _mm256_min_pd(f2, f1);
  }
};

double scalar_F(double a1, double b1, double a2, double b2) {
  auto side = [](double a, double b) {
    const double ma = (0.5 - a) < a ? 0.5 - a : a;
    const double mb = (0.5 - b) < b ? 0.5 - b : b;
    return mb < ma ? mb : ma;
  };
  auto absd = [](double x, double y) { return x < y ? y - x : x - y; };
  const double f1 = side(a1, b1) + side(a2, b2);
  const double f2 = absd(a1, a2) + absd(b1, b2);
  return f2 < f1 ? f2 : f1;
}

void cost_F(double a1, double b1, std::span<const double> a2, std::span<const double> b2,
            std::span<double> out) {
  assert(a2.size() == b2.size() && out.size() == a2.size());
  const CostLanes lanes(a1, b1);
  const std::size_t n = a2.size();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v = lanes(_mm256_loadu_pd(a2.data() + i), _mm256_loadu_pd(b2.data() + i));
    _mm256_storeu_pd(out.data() + i, v);
  }
  for (; i < n; ++i) out[i] = scalar_F(a1, b1, a2[i], b2[i]);
}

ArgMax cost_F_max(double a1, double b1, std::span<const double> a2,
                  std::span<const double> b2) {
  assert(a2.size() == b2.size() && !a2.empty());
  const CostLanes lanes(a1, b1);
  const std::size_t n = a2.size();
  std::size_t i = 0;
  ArgMax best{-1.0, 0};
  if (n >= 4) {
    // Per-lane running maximum and the index where it first occurred.
    __m256d best_v = _mm256_set1_pd(-1.0);
    __m256i best_i = _mm256_setzero_si256();
    __m256i idx = _mm256_setr_epi64x(0, 1, 2, 3);
    const __m256i step = _mm256_set1_epi64x(4);
    for (; i + 4 <= n; i += 4) {
      const __m256d v = lanes(_mm256_loadu_pd(a2.data() + i), _mm256_loadu_pd(b2.data() + i));
      const __m256d gt = _mm256_cmp_pd(v, best_v, _CMP_GT_OQ);
      best_v = _mm256_blendv_pd(best_v, v, gt);
      best_i = _mm256_castpd_si256(
          _mm256_blendv_pd(_mm256_castsi256_pd(best_i), _mm256_castsi256_pd(idx), gt));
      idx = _mm256_add_epi64(idx, step);
    }
    alignas(32) double vals[4];
    alignas(32) long long inds[4];
    _mm256_store_pd(vals, best_v);
    _mm256_store_si256(reinterpret_cast<__m256i*>(inds), best_i);
    for (int l = 0; l < 4; ++l) {
      const auto li = static_cast<std::size_t>(inds[l]);
      if (vals[l] > best.value || (vals[l] == best.value && li < best.index)) {
        best = {vals[l], li};
      }
    }
  }
  for (; i < n; ++i) {
    const double v = scalar_F(a1, b1, a2[i], b2[i]);
    if (v > best.value) best = {v, i};
  }
  return best;
}

double z_dtheta(std::span<const double> theta, std::span<const double> z) {
  assert(theta.size() == z.size());
  const std::size_t n = theta.size();
  if (n < 2) return 0.0;
  const std::size_t edges = n - 1;
  __m256d acc = _mm256_setzero_pd();
  const __m256d halfv = _mm256_set1_pd(0.5);
  std::size_t i = 0;
  for (; i + 4 <= edges; i += 4) {
    const __m256d z0 = _mm256_loadu_pd(z.data() + i);
    const __m256d z1 = _mm256_loadu_pd(z.data() + i + 1);
    const __m256d t0 = _mm256_loadu_pd(theta.data() + i);
    const __m256d t1 = _mm256_loadu_pd(theta.data() + i + 1);
    const __m256d term =
        _mm256_mul_pd(_mm256_mul_pd(halfv, _mm256_add_pd(z0, z1)), _mm256_sub_pd(t1, t0));
    acc = _mm256_add_pd(acc, term);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double sum = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < edges; ++i) sum += 0.5 * (z[i] + z[i + 1]) * (theta[i + 1] - theta[i]);
  return sum;
}

}  // namespace

const KernelTable& table() {
  static const KernelTable t{&cost_F, &cost_F_max, &z_dtheta};
  return t;
}

}  // namespace eqgirth::kernels::avx2
