#include <doctest.h>

#include <cmath>
#include <random>

#include "stablemix/coefficient.hpp"
#include "stablemix/regularity.hpp"

using namespace stablemix;

TEST_CASE("flux form is exact for quadratics with constant coefficient") {
  auto g = GridDomain::interval(1.0, 101, -0.9, 0.9);
  auto a = make_coefficient("constant", 0.5, 1.0, 1.0, g);
  Field u = Field::from_function(g, [](Vec2 x) { return x[0] * x[0]; });
  for (int i = 10; i < 90; i += 7)
    CHECK(apply_div_a_grad(a, u, i) == doctest::Approx(2.0).epsilon(1e-10));
}

TEST_CASE("constant coefficient factors out") {
  auto g = GridDomain::box(2, 1.0, 33);
  auto a1 = make_coefficient("constant", 0.5, 1.0, 1.0, g);
  auto ac = make_coefficient("constant", 0.5, 2.5, 2.5, g);
  Rng rng(4);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Field u(g);
  for (auto& v : u.values) v = gauss(rng);
  for (std::size_t k : g->omega_indices())
    CHECK(apply_div_a_grad(ac, u, k) ==
          doctest::Approx(2.5 * apply_div_a_grad(a1, u, k)).epsilon(1e-12));
}

TEST_CASE("variable coefficient matches the symbolic derivative") {
  // a(x) = 1+x, u(x) = x: div(a u') = d/dx (1+x) = 1.
  auto g = GridDomain::interval(0.5, 201, -0.4, 0.4);
  CoefficientField a;
  a.samples = Field::from_function(g, [](Vec2 x) { return 1.0 + x[0]; });
  a.samples.exterior_value = 1.0;
  a.alpha = 0.9;
  a.a_minus = 0.5;
  a.a_plus = 1.5;
  Field u = Field::from_function(g, [](Vec2 x) { return x[0]; });
  for (int i = 50; i < 150; i += 11)
    CHECK(apply_div_a_grad(a, u, i) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("coefficient catalog") {
  auto g = GridDomain::box(1, 1.0, 513);

  auto c = make_coefficient("constant", 0.5, 1.0, 1.0, g);
  for (double v : c.samples.values) CHECK(v == 1.0);
  CHECK(c.validate().empty());
  CHECK(c.is_constant_one());

  auto s = make_coefficient("smooth-sine", 0.7, 1.0, 2.0, g);
  CHECK(s.validate().empty());
  double lo = 1e300, hi = -1e300;
  for (double v : s.samples.values) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(lo >= 1.0);
  CHECK(hi <= 2.0);
  // Lipschitz (Holder-1) ratio bounded over dyadic pairs
  double ratio = 0.0;
  for (int off : {1, 2, 4, 8, 16})
    for (int i = 0; i + off < g->points; ++i)
      ratio = std::max(ratio, std::abs(s.samples.values[i + off] -
                                       s.samples.values[i]) /
                                  (off * g->h));
  CHECK(ratio < 10.0);

  CHECK_THROWS_AS(make_coefficient("garbage", 0.5, 1.0, 2.0, g), ConfigError);
  CHECK_THROWS_AS(make_coefficient("constant", 0.5, 1.0, 2.0, g), ConfigError);
  CHECK_THROWS_AS(make_coefficient("smooth-sine", 1.5, 1.0, 2.0, g),
                  ConfigError);
}

TEST_CASE("lacunary generator recovers its exponent") {
  auto g = GridDomain::box(1, 1.0, 2049);
  for (double alpha : {0.3, 0.5, 0.7}) {
    auto w = make_coefficient("weierstrass-alpha", alpha, 1.0, 2.0, g, 42);
    CHECK(w.validate().empty());
    Region r{{-0.9, 0.0}, {0.9, 0.0}};
    const LinearFit fit = recover_exponent(w.samples, r);
    CAPTURE(alpha);
    CHECK(std::abs(fit.slope - alpha) <= 0.1);
  }
}

TEST_CASE("discrete self-adjointness and negative semidefiniteness") {
  auto g = GridDomain::disk(1.0, 41, {0.0, 0.0}, 0.85);
  auto a = make_coefficient("smooth-sine", 0.5, 1.0, 2.0, g);
  Rng rng(8);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Field u(g), v(g);
  for (std::size_t k : g->omega_indices()) {
    u.values[k] = gauss(rng);
    v.values[k] = gauss(rng);
  }
  double uv = 0.0, vu = 0.0, uu = 0.0;
  for (std::size_t k = 0; k < g->size(); ++k) {
    const Vec2 p = g->point(k);
    if (std::abs(p[0]) >= g->halfwidth - g->h || std::abs(p[1]) >= g->halfwidth - g->h)
      continue;
    uv += v.values[k] * apply_div_a_grad(a, u, k);
    vu += u.values[k] * apply_div_a_grad(a, v, k);
    uu += u.values[k] * apply_div_a_grad(a, u, k);
  }
  CHECK(uv == doctest::Approx(vu).epsilon(1e-10));
  CHECK(uu <= 1e-12);
}

TEST_CASE("Dirichlet energy grows with the coefficient") {
  auto g = GridDomain::interval(1.0, 129, -0.8, 0.8);
  auto a1 = make_coefficient("smooth-sine", 0.5, 1.0, 1.5, g);
  CoefficientField a2 = a1;
  for (auto& v : a2.samples.values) v += 0.5;  // pointwise larger
  a2.a_minus += 0.5;
  a2.a_plus += 0.5;
  Rng rng(12);
  std::normal_distribution<double> gauss(0.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    Field u(g);
    for (std::size_t k : g->omega_indices()) u.values[k] = gauss(rng);
    double e1 = 0.0, e2 = 0.0;
    for (int i = 1; i < g->points - 1; ++i) {
      e1 -= u.values[i] * apply_div_a_grad(a1, u, i);
      e2 -= u.values[i] * apply_div_a_grad(a2, u, i);
    }
    CHECK(e2 >= e1 - 1e-10);
  }
}
