#include "stablemix/heat_kernel.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "stablemix/coefficient.hpp"
#include "stablemix/linear_system.hpp"
#include "stablemix/spectral_apply.hpp"

namespace stablemix {

MixedSymbol::MixedSymbol(OperatorSpec op, double a_const)
    : op_(std::move(op)), a_(a_const) {
  // Mass-zero measures are admitted: the pure-local limiting case has the
  // Gaussian kernel of a_const * |xi|^2.
  for (const auto& v : op_.validate())
    if (v.find("empty measure") == std::string::npos) throw ConfigError(v);
  if (!(a_ > 0.0)) throw ConfigError("a_const must be positive");
  ks_ = line_normalization(op_.s);
  p_ = 2.0 * op_.s;
  nodes_ = op_.measure.directional_nodes();
}

double MixedSymbol::operator()(Vec2 xi) const {
  double a = 0.0;
  for (const auto& n : nodes_) {
    const double t = std::abs(xi[0] * n.dir[0] + xi[1] * n.dir[1]);
    if (t > 0.0) a += n.weight * std::pow(t, p_);
  }
  return ks_ * a + a_ * (xi[0] * xi[0] + xi[1] * xi[1]);
}

namespace {

// DFT frequencies and centering phase for a node-centered grid with an odd
// point count (origin on a node).
void require_odd(const GridDomain& g) {
  if (g.points % 2 == 0)
    throw ConfigError("heat kernel grids need an odd points_per_axis");
}

}  // namespace

KernelSlice heat_kernel(const MixedSymbol& symbol,
                        std::shared_ptr<const GridDomain> grid, double t) {
  if (!(t > 0.0)) throw ConfigError("kernel time must be positive");
  const auto& g = *grid;
  require_odd(g);
  const int P = g.points;
  const double T = P * g.h;
  const double dxi = 2.0 * std::numbers::pi / T;
  const double xi_max = dxi * (P / 2);
  const double worst =
      g.dim == 1
          ? std::exp(-symbol({xi_max, 0.0}) * t)
          : std::exp(-std::min(symbol({xi_max, 0.0}), symbol({0.0, xi_max})) * t);
  if (worst > 1e-14) {
    std::ostringstream os;
    os << "under-resolved kernel grid: exp(-A(xi_max) t)=" << worst
       << " at xi_max=" << xi_max
       << "; raise points_per_axis or shrink the box until the largest"
          " frequency value falls below 1e-14";
    throw NumericError(os.str());
  }

  CpxFft fft(g.dim, P);
  auto* d = fft.data();
  const int c = (P - 1) / 2;  // origin node index
  auto phase = [&](int k) {
    // e^{-2 pi i k c / P}
    const double a = -2.0 * std::numbers::pi * k * c / P;
    return std::complex<double>(std::cos(a), std::sin(a));
  };
  if (g.dim == 1) {
    for (int k = 0; k < P; ++k) {
      const double xi = signed_index(k, P) * dxi;
      d[k] = std::exp(-symbol({xi, 0.0}) * t) * phase(k);
    }
  } else {
    for (int kj = 0; kj < P; ++kj)
      for (int ki = 0; ki < P; ++ki) {
        const double xi = signed_index(ki, P) * dxi;
        const double xj = signed_index(kj, P) * dxi;
        d[static_cast<std::size_t>(kj) * P + ki] =
            std::exp(-symbol({xi, xj}) * t) * phase(ki) * phase(kj);
      }
  }
  fft.backward();
  const double scale = std::pow(1.0 / T, g.dim);
  KernelSlice slice;
  slice.grid = grid;
  slice.t = t;
  slice.values.resize(g.size());
  double imres = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    slice.values[i] = d[i].real() * scale;
    imres = std::max(imres, std::abs(d[i].imag()) * scale);
  }
  slice.max_imag = imres;
  double m = 0.0;
  for (double v : slice.values) m += v;
  slice.mass = m * std::pow(g.h, g.dim);
  return slice;
}

double moment_check(const KernelSlice& k, double s, double delta) {
  if (!(delta > 0.0 && delta < 2.0 * s))
    throw ConfigError("moment exponent delta must lie in (0, 2s)");
  const auto& g = *k.grid;
  const double p = 2.0 * s - delta;
  double acc = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec2 x = g.point(i);
    const double r = g.dim == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]);
    acc += (1.0 + std::pow(r, p)) * k.values[i];
  }
  return acc * std::pow(g.h, g.dim);
}

double lipschitz_seminorm(const KernelSlice& k) {
  const auto& g = *k.grid;
  const int P = g.points;
  double m = 0.0;
  if (g.dim == 1) {
    for (int i = 0; i + 1 < P; ++i)
      m = std::max(m, std::abs(k.values[i + 1] - k.values[i]));
  } else {
    for (int j = 0; j < P; ++j)
      for (int i = 0; i < P; ++i) {
        if (i + 1 < P)
          m = std::max(m, std::abs(k.values[g.index(i + 1, j)] -
                                   k.values[g.index(i, j)]));
        if (j + 1 < P)
          m = std::max(m, std::abs(k.values[g.index(i, j + 1)] -
                                   k.values[g.index(i, j)]));
      }
  }
  return m / g.h;
}

std::vector<double> convolve_periodic(const KernelSlice& a,
                                      const KernelSlice& b) {
  const auto& g = *a.grid;
  if (b.grid->points != g.points || b.grid->dim != g.dim)
    throw ConfigError("convolve_periodic: mismatched grids");
  require_odd(g);
  const int P = g.points;
  const int c = (P - 1) / 2;
  CpxFft fa(g.dim, P), fb(g.dim, P);
  for (std::size_t i = 0; i < g.size(); ++i) {
    fa.data()[i] = a.values[i];
    fb.data()[i] = b.values[i];
  }
  fa.forward();
  fb.forward();
  const double hn = std::pow(g.h, g.dim);
  const double scale = hn / std::pow(static_cast<double>(P), g.dim);
  auto shift = [&](int k) {
    const double ang = 2.0 * std::numbers::pi * k * c / P;
    return std::complex<double>(std::cos(ang), std::sin(ang));
  };
  if (g.dim == 1) {
    for (int k = 0; k < P; ++k)
      fa.data()[k] *= fb.data()[k] * shift(k) * scale;
  } else {
    for (int kj = 0; kj < P; ++kj)
      for (int ki = 0; ki < P; ++ki) {
        const std::size_t idx = static_cast<std::size_t>(kj) * P + ki;
        fa.data()[idx] *= fb.data()[idx] * shift(ki) * shift(kj) * scale;
      }
  }
  fa.backward();
  std::vector<double> out(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) out[i] = fa.data()[i].real();
  return out;
}

double smoothing_invariance(const MixedSymbol& symbol, const Field& v) {
  const auto& g = *v.grid;
  const int P = g.points;
  CpxFft fft(g.dim, P);
  for (std::size_t i = 0; i < g.size(); ++i) fft.data()[i] = v.values[i];
  fft.forward();
  const double dxi = 2.0 * std::numbers::pi / (P * g.h);
  const double scale = 1.0 / std::pow(static_cast<double>(P), g.dim);
  if (g.dim == 1) {
    for (int k = 0; k < P; ++k)
      fft.data()[k] *= std::exp(-symbol({signed_index(k, P) * dxi, 0.0})) * scale;
  } else {
    for (int kj = 0; kj < P; ++kj)
      for (int ki = 0; ki < P; ++ki)
        fft.data()[static_cast<std::size_t>(kj) * P + ki] *=
            std::exp(-symbol({signed_index(ki, P) * dxi,
                              signed_index(kj, P) * dxi})) *
            scale;
  }
  fft.backward();
  const double quarter = g.halfwidth / 4.0;
  double m = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Vec2 x = g.point(i);
    if (std::abs(x[0]) > quarter || (g.dim == 2 && std::abs(x[1]) > quarter))
      continue;
    m = std::max(m, std::abs(v.values[i] - fft.data()[i].real()));
  }
  return m;
}

SymbolBounds symbol_sandwich(const MixedSymbol& symbol, double xi_max,
                             int samples_per_axis) {
  if (samples_per_axis < 2) throw ConfigError("need at least 2 samples per axis");
  if (!(xi_max > 1.0)) throw ConfigError("xi_max must exceed 1");
  SymbolBounds b;
  b.lambda = 1e300;
  const double s = symbol.s();
  auto visit = [&](Vec2 xi) {
    const double r = std::hypot(xi[0], xi[1]);
    if (r == 0.0) return;
    const double a = symbol(xi);
    const double r2s = std::pow(r, 2.0 * s), r2 = r * r;
    b.lambda = std::min(b.lambda, a / std::min(r2s, r2));
    b.Lambda = std::max(b.Lambda, a / std::max(r2s, r2));
  };
  // Log-spaced radii spanning both asymptotic regimes; the unit ring (where
  // min and max branches meet, pinning lambda <= Lambda) is always sampled.
  std::vector<double> radii;
  const double r_lo = 1e-6 * xi_max;
  const int nr = std::max(2 * samples_per_axis, 64);
  for (int i = 0; i <= nr; ++i)
    radii.push_back(r_lo * std::pow(xi_max / r_lo, double(i) / nr));
  radii.push_back(1.0);
  const int dim = symbol.spec().measure.dim;
  if (dim == 1) {
    for (double r : radii) visit({r, 0.0});
  } else {
    const int na = 64;
    for (double r : radii)
      for (int a = 0; a < na; ++a) {
        const double phi = std::numbers::pi * a / na;  // evenness: half turn
        visit({r * std::cos(phi), r * std::sin(phi)});
      }
  }
  return b;
}

LiouvilleReport liouville_harness(const OperatorSpec& spec, double a_const,
                                  int points, double halfwidth,
                                  double band_width, double data_frequency) {
  auto grid = GridDomain::interval(halfwidth, points, -halfwidth + band_width,
                                   halfwidth - band_width);
  const MixedSymbol symbol(spec, a_const);
  LiouvilleReport rep;
  rep.points = points;

  // Exact global solutions: constants and affine fields are fixed points.
  Field cfield(grid, 3.25);
  cfield.exterior_value = 3.25;
  rep.defect_constant = smoothing_invariance(symbol, cfield);
  // The affine identity rests on the vanishing odd moment of the symmetric
  // kernel, so convolve the true affine function against the kernel slice
  // directly (periodizing it would introduce a sawtooth jump).
  {
    const KernelSlice H = heat_kernel(symbol, grid, 1.0);
    const auto& g = *grid;
    const double slope = 0.4;
    const double quarter = halfwidth / 4.0;
    double worst = 0.0;
    for (int i = 0; i < g.points; ++i) {
      const double x = g.coord(i);
      if (std::abs(x) > quarter) continue;
      double conv = 0.0;
      for (int j = 0; j < g.points; ++j)
        conv += H.values[j] * slope * (x - g.coord(j));
      conv *= g.h;
      worst = std::max(worst, std::abs(slope * x - conv));
    }
    rep.defect_affine = worst;
  }

  // Discretely harmonic field driven by smooth band data.
  MixedProblem p;
  p.op = spec;
  p.grid = grid;
  p.a = make_coefficient("constant", 0.5, a_const, a_const, grid);
  p.f = Field(grid);
  p.lambda_shift = 0.0;
  // Band data tapers smoothly to zero at the outer box edge so the field
  // has no jump against the zero exterior; the reach-in of that jump would
  // otherwise dominate the fixed-point defect.
  Field band(grid);
  const double inner_edge = halfwidth - band_width;
  for (std::size_t k = 0; k < grid->size(); ++k) {
    if (grid->omega[k]) continue;
    const Vec2 x = grid->point(k);
    const double depth = (std::abs(x[0]) - inner_edge) / band_width;
    const double taper = std::cos(0.5 * std::numbers::pi * std::min(1.0, std::max(0.0, depth)));
    band.values[k] = std::sin(data_frequency * x[0]) * taper * taper;
  }
  const SolveReport sol = solve_with_prescribed(p, band);
  rep.defect_harmonic = smoothing_invariance(symbol, sol.u);
  const double quarter = halfwidth / 4.0;
  double lo = 1e300, hi = -1e300;
  for (std::size_t k = 0; k < grid->size(); ++k) {
    const Vec2 x = grid->point(k);
    if (std::abs(x[0]) > quarter) continue;
    lo = std::min(lo, sol.u.values[k]);
    hi = std::max(hi, sol.u.values[k]);
  }
  rep.oscillation = hi - lo;
  rep.ratio = rep.oscillation > 0 ? rep.defect_harmonic / rep.oscillation : 0.0;
  return rep;
}

}  // namespace stablemix
