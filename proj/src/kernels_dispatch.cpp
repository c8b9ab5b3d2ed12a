#include <atomic>
#include <cstdlib>
#include <cstring>

#include "stablemix/kernels.hpp"

namespace stablemix::kernels {
namespace {

std::atomic<Isa> g_isa{Isa::Auto};

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa resolve_auto() {
  if (const char* env = std::getenv("STABLEMIX_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return Isa::Scalar;
    if (std::strcmp(env, "avx2") == 0 && cpu_has_avx2()) return Isa::Avx2;
  }
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

}  // namespace

bool avx2_supported() { return cpu_has_avx2(); }

void select_isa(Isa isa) {
  if (isa == Isa::Avx2 && !cpu_has_avx2()) isa = Isa::Scalar;
  g_isa.store(isa);
}

Isa selected_isa() {
  Isa isa = g_isa.load();
  return isa == Isa::Auto ? resolve_auto() : isa;
}

const Ops& active_ops() {
  switch (selected_isa()) {
    case Isa::Avx2:
      return avx2_ops();
    default:
      return scalar_ops();
  }
}

}  // namespace stablemix::kernels
