// AVX2+FMA kernel variants. This TU is the only one compiled with -mavx2;
// callers must check avx2_supported() before using this table.

#include <immintrin.h>

#include <cmath>

#include "stablemix/kernels.hpp"

namespace stablemix::kernels {
namespace {

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double dot(const double* x, const double* y, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4),
                           _mm256_loadu_pd(y + i + 4), acc1);
  }
  acc0 = _mm256_add_pd(acc0, acc1);
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc0);
  double s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

double max_abs(const double* x, std::size_t n) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  __m256d vm = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    vm = _mm256_max_pd(vm, _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i)));
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, vm);
  double m = std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3]));
  for (; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

void scale(double a, double* x, std::size_t n) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
  for (; i < n; ++i) x[i] *= a;
}

void cmul_real(double* z, const double* m, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m128d lo = _mm_loaddup_pd(m + i);
    const __m128d hi = _mm_loaddup_pd(m + i + 1);
    const __m256d vm = _mm256_set_m128d(hi, lo);
    _mm256_storeu_pd(z + 2 * i,
                     _mm256_mul_pd(vm, _mm256_loadu_pd(z + 2 * i)));
  }
  for (; i < n; ++i) {
    z[2 * i] *= m[i];
    z[2 * i + 1] *= m[i];
  }
}

void symmetric_convolve(const double* u, double* y, std::size_t lo,
                        std::size_t hi, const double* w, std::size_t nw,
                        std::ptrdiff_t stride, double diag) {
  const __m256d vdiag = _mm256_set1_pd(diag);
  std::size_t i = lo;
  for (; i + 4 <= hi; i += 4) {
    __m256d acc = _mm256_mul_pd(vdiag, _mm256_loadu_pd(u + i));
    const double* up = u + i;
    for (std::size_t k = 1; k <= nw; ++k) {
      const std::ptrdiff_t off = static_cast<std::ptrdiff_t>(k) * stride;
      const __m256d sum =
          _mm256_add_pd(_mm256_loadu_pd(up + off), _mm256_loadu_pd(up - off));
      acc = _mm256_fmadd_pd(_mm256_set1_pd(w[k - 1]), sum, acc);
    }
    _mm256_storeu_pd(y + i, acc);
  }
  for (; i < hi; ++i) {
    double s = diag * u[i];
    const double* up = u + i;
    for (std::size_t k = 1; k <= nw; ++k) {
      const std::ptrdiff_t off = static_cast<std::ptrdiff_t>(k) * stride;
      s += w[k - 1] * (up[off] + up[-off]);
    }
    y[i] = s;
  }
}

void flux_row(const double* u, const double* am, const double* ap, double* y,
              std::size_t lo, std::size_t hi, std::ptrdiff_t stride,
              double inv_h2) {
  const __m256d vh = _mm256_set1_pd(inv_h2);
  std::size_t i = lo;
  for (; i + 4 <= hi; i += 4) {
    const __m256d uc = _mm256_loadu_pd(u + i);
    const __m256d dp = _mm256_sub_pd(_mm256_loadu_pd(u + i + stride), uc);
    const __m256d dm = _mm256_sub_pd(_mm256_loadu_pd(u + i - stride), uc);
    __m256d s = _mm256_mul_pd(_mm256_loadu_pd(ap + i), dp);
    s = _mm256_fmadd_pd(_mm256_loadu_pd(am + i), dm, s);
    _mm256_storeu_pd(y + i,
                     _mm256_fmadd_pd(s, vh, _mm256_loadu_pd(y + i)));
  }
  for (; i < hi; ++i) {
    y[i] += (ap[i] * (u[i + stride] - u[i]) + am[i] * (u[i - stride] - u[i])) *
            inv_h2;
  }
}

}  // namespace

const Ops& avx2_ops() {
  static const Ops ops{"avx2",  axpy,  dot,
                       max_abs, scale, cmul_real,
                       symmetric_convolve, flux_row};
  return ops;
}

}  // namespace stablemix::kernels
