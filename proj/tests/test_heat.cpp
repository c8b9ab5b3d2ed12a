#include <doctest.h>

#include <cmath>
#include <numbers>

#include "stablemix/heat_kernel.hpp"

using namespace stablemix;

namespace {

OperatorSpec pair_spec(double s, double w = 1.0) {
  OperatorSpec spec;
  spec.s = s;
  spec.measure = SpectralMeasure::atomic_1d(w, w);
  return spec;
}

OperatorSpec empty_measure_spec(double s) {
  OperatorSpec spec;
  spec.s = s;
  spec.measure = SpectralMeasure::uniform(1, 0.0);
  return spec;
}

}  // namespace

TEST_CASE("mixed symbol basics") {
  const MixedSymbol A(pair_spec(0.5), 1.0);
  CHECK(A({0.0, 0.0}) == 0.0);
  CHECK(A({1.3, 0.0}) == doctest::Approx(A({-1.3, 0.0})));
  CHECK(A({1.3, 0.0}) > 0.0);
  // K_s * 2|xi|^{2s} + |xi|^2 with K_{1/2} = 2 pi.
  CHECK(A({2.0, 0.0}) ==
        doctest::Approx(2.0 * std::numbers::pi * 2.0 * 2.0 + 4.0));
}

TEST_CASE("kernel mass is unit for all tested times") {
  auto g = GridDomain::box(1, 40.0, 4097);
  const MixedSymbol A(pair_spec(0.5), 1.0);
  for (double t : {0.25, 1.0, 4.0}) {
    const KernelSlice k = heat_kernel(A, g, t);
    CHECK(std::abs(k.mass - 1.0) <= 1e-6);
    CHECK(k.max_imag <= 1e-12);
  }
}

TEST_CASE("pure local kernel matches the closed-form Gaussian") {
  const double a = 0.7, t = 1.0;
  auto g = GridDomain::box(1, 24.0, 4097);
  const MixedSymbol A(empty_measure_spec(0.5), a);
  const KernelSlice k = heat_kernel(A, g, t);
  double sup = 0.0;
  for (int i = 0; i < g->points; ++i) {
    const double x = g->coord(i);
    const double G =
        std::exp(-x * x / (4.0 * a * t)) / std::sqrt(4.0 * std::numbers::pi * a * t);
    sup = std::max(sup, std::abs(k.values[i] - G));
  }
  CHECK(sup <= 1e-6);

  // Lipschitz seminorm against max |G'| = G'(sqrt(2 a t)).
  const double sigma2 = 2.0 * a * t;
  const double xstar = std::sqrt(sigma2);
  const double gmax = xstar / sigma2 *
                      std::exp(-xstar * xstar / (2.0 * sigma2)) /
                      std::sqrt(2.0 * std::numbers::pi * sigma2);
  CHECK(lipschitz_seminorm(k) == doctest::Approx(gmax).epsilon(0.02));

  // Moment against the closed-form integrand quadrature.
  const double s = 0.5, delta = 0.25;
  double oracle = 0.0;
  const int N = 400000;
  for (int i = 0; i < N; ++i) {
    const double x = -24.0 + 48.0 * (i + 0.5) / N;
    const double G =
        std::exp(-x * x / (4.0 * a * t)) / std::sqrt(4.0 * std::numbers::pi * a * t);
    oracle += (1.0 + std::pow(std::abs(x), 2.0 * s - delta)) * G * 48.0 / N;
  }
  CHECK(moment_check(k, s, delta) == doctest::Approx(oracle).epsilon(0.01));
}

TEST_CASE("semigroup property under periodic self-convolution") {
  auto g = GridDomain::box(1, 40.0, 4097);
  const MixedSymbol A(pair_spec(0.5), 1.0);
  const KernelSlice k1 = heat_kernel(A, g, 1.0);
  const KernelSlice k2 = heat_kernel(A, g, 2.0);
  const auto conv = convolve_periodic(k1, k1);
  double sup = 0.0;
  for (std::size_t i = 0; i < conv.size(); ++i)
    sup = std::max(sup, std::abs(conv[i] - k2.values[i]));
  CHECK(sup <= 1e-6);
}

TEST_CASE("moment integrand is monotone in delta and refinement stable") {
  auto g1 = GridDomain::box(1, 40.0, 2049);
  auto g2 = GridDomain::box(1, 40.0, 4097);
  const MixedSymbol A(pair_spec(0.5), 1.0);
  const KernelSlice k1 = heat_kernel(A, g1, 1.0);
  const KernelSlice k2 = heat_kernel(A, g2, 1.0);
  const double m1 = moment_check(k1, 0.5, 0.25);
  const double m2 = moment_check(k2, 0.5, 0.25);
  CHECK(std::isfinite(m1));
  CHECK(std::abs(m2 - m1) <= 0.05 * m1);
  // larger delta shrinks the moment toward something <= 2-ish
  const double md = moment_check(k2, 0.5, 0.49);
  CHECK(md <= m2);
  CHECK(md >= 1.0);

  const double l1 = lipschitz_seminorm(k1);
  const double l2 = lipschitz_seminorm(k2);
  CHECK(std::abs(l2 - l1) <= 0.10 * l1);

  CHECK_THROWS_AS(moment_check(k1, 0.5, 1.5), ConfigError);
}

TEST_CASE("diffusion smooths: larger time, smaller gradient, off-center max") {
  auto g = GridDomain::box(1, 40.0, 4097);
  const MixedSymbol A(pair_spec(0.5), 1.0);
  const KernelSlice k1 = heat_kernel(A, g, 1.0);
  const KernelSlice k4 = heat_kernel(A, g, 4.0);
  CHECK(lipschitz_seminorm(k4) < lipschitz_seminorm(k1));
  // the steepest edge of a symmetric bump is away from the center node
  int arg = 0;
  double best = 0.0;
  for (int i = 0; i + 1 < g->points; ++i) {
    const double d = std::abs(k1.values[i + 1] - k1.values[i]);
    if (d > best) {
      best = d;
      arg = i;
    }
  }
  CHECK(std::abs(g->coord(arg)) > 0.1);
}

TEST_CASE("kernel positivity up to ringing tolerance") {
  auto g = GridDomain::box(1, 40.0, 4097);
  for (double s : {0.3, 0.5, 0.75}) {
    const KernelSlice k = heat_kernel(MixedSymbol(pair_spec(s), 1.0), g, 1.0);
    double mn = 0.0, mx = 0.0;
    for (double v : k.values) {
      mn = std::min(mn, v);
      mx = std::max(mx, v);
    }
    CHECK(mn >= -1e-6 * mx);
  }
}

TEST_CASE("under-resolved kernel grids are rejected with guidance") {
  auto g = GridDomain::box(1, 40.0, 129);
  const MixedSymbol A(pair_spec(0.25), 0.01);
  CHECK_THROWS_WITH_AS(heat_kernel(A, g, 0.01),
                       doctest::Contains("under-resolved"), NumericError);
  auto geven = GridDomain::box(1, 10.0, 128);
  CHECK_THROWS_AS(heat_kernel(MixedSymbol(pair_spec(0.5), 1.0), geven, 1.0),
                  ConfigError);
}

TEST_CASE("symbol sandwich bounds for catalog measures") {
  std::vector<OperatorSpec> specs;
  specs.push_back(pair_spec(0.5));
  {
    OperatorSpec s2;
    s2.s = 0.3;
    s2.measure = SpectralMeasure::axis_2d(1.0);
    specs.push_back(s2);
  }
  {
    OperatorSpec s3;
    s3.s = 0.7;
    s3.measure = SpectralMeasure::uniform(2, 1.0, 128);
    specs.push_back(s3);
  }
  for (const auto& spec : specs)
    for (double a : {0.5, 1.0, 2.0}) {
      const MixedSymbol A(spec, a);
      const auto b = symbol_sandwich(A, 200.0, 64);
      CHECK(b.lambda > 0.0);
      CHECK(std::isfinite(b.Lambda));
      CHECK(b.lambda <= b.Lambda);
    }
}

TEST_CASE("constants are exact convolution fixed points") {
  auto g = GridDomain::box(1, 16.0, 513);
  const MixedSymbol A(pair_spec(0.5), 1.0);
  Field c(g, 2.5);
  c.exterior_value = 2.5;
  CHECK(smoothing_invariance(A, c) <= 1e-12);
}

TEST_CASE("liouville harness: affine and harmonic defects") {
  OperatorSpec spec = pair_spec(0.85, 0.125);
  const LiouvilleReport rep =
      liouville_harness(spec, 1.0, 1025, 64.0, 6.0, 0.077);
  CHECK(rep.defect_constant <= 1e-12);
  CHECK(rep.defect_affine <= 1e-8);
  CHECK(rep.oscillation > 0.0);
  CHECK(rep.ratio <= 1e-3);
}
