#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "stablemix/grid.hpp"
#include "stablemix/operator_spec.hpp"

namespace stablemix {

// In-place complex DFT workspace of fixed shape (n per axis, dim axes) with
// cached FFTW plans. Execution is deterministic (FFTW_ESTIMATE plans).
// Instances own their buffer; not thread-safe.
class CpxFft {
 public:
  CpxFft(int dim, int n);
  ~CpxFft();
  CpxFft(const CpxFft&) = delete;
  CpxFft& operator=(const CpxFft&) = delete;

  int n() const { return n_; }
  int dim() const { return dim_; }
  std::size_t size() const { return size_; }
  std::complex<double>* data() { return buf_; }
  void zero();
  void forward();   // unnormalized
  void backward();  // unnormalized

 private:
  int dim_, n_;
  std::size_t size_;
  std::complex<double>* buf_;
  void* fwd_;
  void* bwd_;
};

// Signed frequency index: k for k <= n/2, k-n beyond.
inline int signed_index(int k, int n) { return k <= n / 2 ? k : k - n; }

// Applies a real Fourier multiplier to the field on a zero-padded periodic
// extension of its grid (pad_factor times the box per axis; 0 = default:
// 128 in 1D, 8 in 2D — generous padding keeps the periodization images of
// slowly decaying kernels below the cross-validation tolerances). Returns
// the restriction to the original grid.
Field apply_multiplier(const Field& u,
                       const std::function<double(Vec2)>& multiplier,
                       int pad_factor = 0);

// Transform-domain route for the operator: multiplier
// -line_normalization(s) * symbol(xi). Interior values agree with apply_L
// for smooth, centrally supported fields.
Field apply_fft(const OperatorSpec& spec, const Field& u, int pad_factor = 0);

}  // namespace stablemix
