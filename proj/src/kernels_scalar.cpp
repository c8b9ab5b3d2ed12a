#include <cmath>

#include "stablemix/kernels.hpp"

namespace stablemix::kernels {
namespace {

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

double max_abs(const double* x, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

void scale(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

void cmul_real(double* z, const double* m, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    z[2 * i] *= m[i];
    z[2 * i + 1] *= m[i];
  }
}

void symmetric_convolve(const double* u, double* y, std::size_t lo,
                        std::size_t hi, const double* w, std::size_t nw,
                        std::ptrdiff_t stride, double diag) {
  for (std::size_t i = lo; i < hi; ++i) {
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
  for (std::size_t i = lo; i < hi; ++i) {
    y[i] += (ap[i] * (u[i + stride] - u[i]) + am[i] * (u[i - stride] - u[i])) *
            inv_h2;
  }
}

}  // namespace

const Ops& scalar_ops() {
  static const Ops ops{"scalar", axpy,  dot,
                       max_abs,  scale, cmul_real,
                       symmetric_convolve, flux_row};
  return ops;
}

}  // namespace stablemix::kernels
