#pragma once

// Data-parallel inner loops.
//
// Every kernel has a scalar reference implementation and, when the build has
// it, an AVX2 variant. The dispatched entry points in namespace `kernels`
// choose a variant once at first use: AVX2 when the CPU reports it, scalar
// otherwise. The environment variable EQUATOR_GIRTH_ISA=scalar forces the
// reference path.
//
// The cost kernels use only min, abs, add and subtract, so the two variants
// agree bit for bit. The quadrature sum is reassociated by the vector variant
// and agrees to rounding.

#include <cstddef>
#include <span>
#include <string_view>

namespace eqgirth::kernels {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

struct ArgMax {
  double value;
  std::size_t index;  // lowest index attaining `value`
};

// Signatures shared by all variants. Spans passed together must have equal
// length.
//
// cost_F:     out[i] = F(a1, b1, a2[i], b2[i])
// cost_F_max: max_i F(a1, b1, a2[i], b2[i]); inputs must be non-empty
// z_dtheta:   sum_i (z[i] + z[i+1]) / 2 * (theta[i+1] - theta[i]) for
//             i < n-1, i.e. the trapezoid rule along an open polyline
struct KernelTable {
  void (*cost_F)(double a1, double b1, std::span<const double> a2,
                 std::span<const double> b2, std::span<double> out);
  ArgMax (*cost_F_max)(double a1, double b1, std::span<const double> a2,
                       std::span<const double> b2);
  double (*z_dtheta)(std::span<const double> theta, std::span<const double> z);
};

namespace scalar {
const KernelTable& table();
}

#if defined(EQGIRTH_HAVE_AVX2)
namespace avx2 {
const KernelTable& table();
}
#endif

// True if `isa` was compiled in and the running CPU supports it.
bool available(Isa isa);

// Variant used by the dispatched entry points.
Isa active_isa();

// Forces a variant; throws ConfigError if it is not available. Not meant to
// be called while other threads are running kernels.
void set_active_isa(Isa isa);

const KernelTable& table(Isa isa);

void cost_F(double a1, double b1, std::span<const double> a2,
            std::span<const double> b2, std::span<double> out);
ArgMax cost_F_max(double a1, double b1, std::span<const double> a2,
                  std::span<const double> b2);
double z_dtheta(std::span<const double> theta, std::span<const double> z);

}  // namespace eqgirth::kernels
