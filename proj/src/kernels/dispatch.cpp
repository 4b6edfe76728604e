#include <atomic>
#include <cstdlib>
#include <string>

#include "eqgirth/errors.hpp"
#include "eqgirth/kernels.hpp"

namespace eqgirth::kernels {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "?";
}

bool available(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(EQGIRTH_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!available(isa)) {
    throw ConfigError("kernel variant '" + std::string(to_string(isa)) +
                      "' is not available on this build or CPU");
  }
#if defined(EQGIRTH_HAVE_AVX2)
  if (isa == Isa::avx2) return avx2::table();
#endif
  return scalar::table();
}

namespace {

Isa initial_isa() {
  if (const char* env = std::getenv("EQUATOR_GIRTH_ISA")) {
    const std::string v(env);
    if (v == "scalar") return Isa::scalar;
    if (v == "avx2" && available(Isa::avx2)) return Isa::avx2;
  }
  return available(Isa::avx2) ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

const KernelTable& active() { return table(current().load(std::memory_order_relaxed)); }

}  // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  (void)table(isa);
  current().store(isa, std::memory_order_relaxed);
}

void cost_F(double a1, double b1, std::span<const double> a2, std::span<const double> b2,
            std::span<double> out) {
  active().cost_F(a1, b1, a2, b2, out);
}

ArgMax cost_F_max(double a1, double b1, std::span<const double> a2,
                  std::span<const double> b2) {
  return active().cost_F_max(a1, b1, a2, b2);
}

double z_dtheta(std::span<const double> theta, std::span<const double> z) {
  return active().z_dtheta(theta, z);
}

}  // namespace eqgirth::kernels
