#include "stablemix/spectral_apply.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>

#include "stablemix/kernels.hpp"

namespace stablemix {

namespace {
// FFTW's planner is not thread-safe; executions on plan-owned buffers are.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

CpxFft::CpxFft(int dim, int n) : dim_(dim), n_(n) {
  size_ = dim == 1 ? static_cast<std::size_t>(n)
                   : static_cast<std::size_t>(n) * n;
  buf_ = reinterpret_cast<std::complex<double>*>(
      fftw_malloc(sizeof(fftw_complex) * size_));
  if (!buf_) throw NumericError("fftw_malloc failed");
  auto* raw = reinterpret_cast<fftw_complex*>(buf_);
  std::lock_guard<std::mutex> lock(planner_mutex());
  if (dim == 1) {
    fwd_ = fftw_plan_dft_1d(n, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_1d(n, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
  } else {
    fwd_ = fftw_plan_dft_2d(n, n, raw, raw, FFTW_FORWARD, FFTW_ESTIMATE);
    bwd_ = fftw_plan_dft_2d(n, n, raw, raw, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (!fwd_ || !bwd_) throw NumericError("fftw plan creation failed");
}

CpxFft::~CpxFft() {
  std::lock_guard<std::mutex> lock(planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(fwd_));
  fftw_destroy_plan(static_cast<fftw_plan>(bwd_));
  fftw_free(buf_);
}

void CpxFft::zero() {
  std::fill(buf_, buf_ + size_, std::complex<double>(0.0, 0.0));
}

void CpxFft::forward() { fftw_execute(static_cast<fftw_plan>(fwd_)); }
void CpxFft::backward() { fftw_execute(static_cast<fftw_plan>(bwd_)); }

Field apply_multiplier(const Field& u,
                       const std::function<double(Vec2)>& multiplier,
                       int pad_factor) {
  const auto& g = *u.grid;
  if (pad_factor <= 0) pad_factor = g.dim == 1 ? 128 : 8;
  int q = g.points;  // pad_factor 1: plain periodic transform on the box
  if (pad_factor > 1) {
    q = 1;
    while (q < g.points * pad_factor) q <<= 1;
  }
  CpxFft fft(g.dim, q);
  fft.zero();
  auto* d = fft.data();
  if (g.dim == 1) {
    for (int i = 0; i < g.points; ++i) d[i] = u.values[i];
  } else {
    for (int j = 0; j < g.points; ++j)
      for (int i = 0; i < g.points; ++i)
        d[static_cast<std::size_t>(j) * q + i] = u.at(i, j);
  }
  fft.forward();
  const double dxi = 2.0 * std::numbers::pi / (q * g.h);
  const double scale = 1.0 / (g.dim == 1 ? static_cast<double>(q)
                                         : static_cast<double>(q) * q);
  std::vector<double> mult(fft.size());
  if (g.dim == 1) {
    for (int k = 0; k < q; ++k)
      mult[k] = multiplier({signed_index(k, q) * dxi, 0.0}) * scale;
  } else {
    for (int kj = 0; kj < q; ++kj) {
      const double xj = signed_index(kj, q) * dxi;
      for (int ki = 0; ki < q; ++ki)
        mult[static_cast<std::size_t>(kj) * q + ki] =
            multiplier({signed_index(ki, q) * dxi, xj}) * scale;
    }
  }
  kernels::active_ops().cmul_real(reinterpret_cast<double*>(fft.data()),
                                  mult.data(), fft.size());
  fft.backward();
  Field out(u.grid);
  out.exterior_value = 0.0;
  if (g.dim == 1) {
    for (int i = 0; i < g.points; ++i) out.values[i] = d[i].real();
  } else {
    for (int j = 0; j < g.points; ++j)
      for (int i = 0; i < g.points; ++i)
        out.at(i, j) = d[static_cast<std::size_t>(j) * q + i].real();
  }
  return out;
}

Field apply_fft(const OperatorSpec& spec, const Field& u, int pad_factor) {
  spec.validate_or_throw();
  const double k_s = line_normalization(spec.s);
  const auto nodes = spec.measure.directional_nodes();
  const double p = 2.0 * spec.s;
  auto mult = [&](Vec2 xi) {
    double a = 0.0;
    for (const auto& n : nodes) {
      const double t = std::abs(xi[0] * n.dir[0] + xi[1] * n.dir[1]);
      if (t > 0.0) a += n.weight * std::pow(t, p);
    }
    return -k_s * a;
  };
  return apply_multiplier(u, mult, pad_factor);
}

}  // namespace stablemix
