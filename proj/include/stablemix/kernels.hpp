#pragma once

#include <cstddef>
#include <cstdint>

// Array kernels backing the hot loops (CG vector ops, stencil rows, spectral
// multipliers). Scalar reference implementations and AVX2+FMA variants share
// one table; the active table is picked once at runtime from cpuid and can be
// overridden for testing.

namespace stablemix::kernels {

struct Ops {
  const char* name;

  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // sum_i x[i]*y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // max_i |x[i]|
  double (*max_abs)(const double* x, std::size_t n);
  // x[i] *= a
  void (*scale)(double a, double* x, std::size_t n);
  // Interleaved complex z (2n doubles) scaled by real multiplier m (n values).
  void (*cmul_real)(double* z, const double* m, std::size_t n);
  // y[i] = diag*u[i] + sum_{k=1..nw} w[k-1]*(u[i+k*stride] + u[i-k*stride])
  // for i in [lo, hi). Caller guarantees u is addressable over the full
  // reach (padded buffers).
  void (*symmetric_convolve)(const double* u, double* y, std::size_t lo,
                             std::size_t hi, const double* w, std::size_t nw,
                             std::ptrdiff_t stride, double diag);
  // y[i] += (ap[i]*(u[i+stride]-u[i]) + am[i]*(u[i-stride]-u[i])) * inv_h2
  void (*flux_row)(const double* u, const double* am, const double* ap,
                   double* y, std::size_t lo, std::size_t hi,
                   std::ptrdiff_t stride, double inv_h2);
};

const Ops& scalar_ops();
const Ops& avx2_ops();  // call only when avx2_supported()
bool avx2_supported();

enum class Isa { Auto, Scalar, Avx2 };

// Selection: Auto consults cpuid and the STABLEMIX_SIMD env var
// ("scalar"/"avx2").
void select_isa(Isa isa);
Isa selected_isa();
const Ops& active_ops();

}  // namespace stablemix::kernels
