#include "stablemix/stable_operator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

#include "stablemix/kernels.hpp"
#include "stablemix/spectral_apply.hpp"

namespace stablemix {

namespace {

// int_a^b r^{p-1-2s} dr, stable when the exponent p-2s approaches 0.
double power_moment(double a, double b, double q) {
  if (std::abs(q) < 1e-9) {
    // r^{q-1} integrates to a^q*expm1(q*log(b/a))/q -> log(b/a) at q = 0.
    const double l = std::log(b / a);
    if (q == 0.0) return l;
    return std::pow(a, q) * std::expm1(q * l) / q;
  }
  return (std::pow(b, q) - std::pow(a, q)) / q;
}

int axis_of(Vec2 dir) {
  if (std::abs(dir[1]) < 1e-14) return 0;
  if (std::abs(dir[0]) < 1e-14) return 1;
  return -1;
}

}  // namespace

double second_difference(const Field& u, std::size_t at, Vec2 y) {
  const Vec2 x = u.grid->point(at);
  return u.sample({x[0] + y[0], x[1] + y[1]}) +
         u.sample({x[0] - y[0], x[1] - y[1]}) - 2.0 * u.values[at];
}

RadialRule build_radial_rule(double s, double h, int m, double tail_radius) {
  if (m < 2) throw ConfigError("inner_cut must be at least two grid cells");
  const int last = static_cast<int>(std::floor(tail_radius / h + 1e-9));
  const int J = last - m;
  if (J < 2)
    throw ConfigError("tail_radius too small for the grid radial rule");
  RadialRule rule;
  rule.m = m;
  rule.cut = m * h;
  rule.r_eff = last * h;

  // Matched Taylor node: m'^2 ~ m^2 (1-s)/(2-s) equates the r^4 moment of
  // the zone integral with that of the estimator.
  const double target = m * m * (1.0 - s) / (2.0 - s);
  int mp = std::max(1, static_cast<int>(std::lround(std::sqrt(target))));
  mp = std::min(mp, m - 1);
  rule.first = mp;

  rule.w.assign(static_cast<std::size_t>(last - mp + 1), 0.0);
  auto wk = [&](int k) -> double& { return rule.w[k - mp]; };

  const double q0 = -2.0 * s, q1 = 1.0 - 2.0 * s, q2 = 2.0 - 2.0 * s;
  auto node_r = [&](int j) { return (m + j) * h; };

  // Product-quadratic pairs; odd remainder handled by one product-linear
  // panel at the far end.
  int j = 0;
  while (j + 2 <= J) {
    const double r0 = node_r(j), r1 = node_r(j + 1), r2 = node_r(j + 2);
    const double s0 = power_moment(r0, r2, q0);
    const double s1 = power_moment(r0, r2, q1);
    const double s2 = power_moment(r0, r2, q2);
    const double d01 = r0 - r1, d02 = r0 - r2, d12 = r1 - r2;
    wk(m + j) += (s2 - (r1 + r2) * s1 + r1 * r2 * s0) / (d01 * d02);
    wk(m + j + 1) += (s2 - (r0 + r2) * s1 + r0 * r2 * s0) / (-d01 * d12);
    wk(m + j + 2) += (s2 - (r0 + r1) * s1 + r0 * r1 * s0) / (d02 * d12);
    j += 2;
  }
  if (j + 1 <= J) {
    const double r0 = node_r(j), r1 = node_r(j + 1);
    const double s0 = power_moment(r0, r1, q0);
    const double s1 = power_moment(r0, r1, q1);
    wk(m + j) += (r1 * s0 - s1) / (r1 - r0);
    wk(m + j + 1) += (s1 - r0 * s0) / (r1 - r0);
  }
  // Taylor zone [0, cut): int_0^c r^2 w(r) dr times the second-difference
  // estimate of the directional second derivative at the matched node.
  const double m2 = std::pow(rule.cut, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
  wk(mp) += m2 / (mp * h * mp * h);
  return rule;
}

QuadraturePlan make_plan(const OperatorSpec& spec, const GridDomain& grid) {
  spec.validate_or_throw();
  QuadraturePlan plan;
  plan.s = spec.s;
  plan.h = grid.h;
  const int m = spec.inner_cut > 0.0
                    ? std::max(2, static_cast<int>(std::lround(spec.inner_cut / grid.h)))
                    : 4;
  const double diam = 2.0 * grid.halfwidth * std::sqrt(double(grid.dim));
  const double tail = spec.tail_radius > 0.0 ? spec.tail_radius : 2.05 * diam;
  plan.radial = build_radial_rule(spec.s, grid.h, m, tail);
  plan.nodes = spec.measure.directional_nodes();
  plan.total_mass = spec.measure.total_mass;
  plan.tail_coefficient = 2.0 * plan.total_mass *
                          std::pow(plan.radial.r_eff, -2.0 * spec.s) / spec.s;
  return plan;
}

double apply_L(const QuadraturePlan& plan, const Field& u, std::size_t at,
               TailModel tail) {
  const auto& g = *u.grid;
  if (at >= g.size()) throw ConfigError("apply point outside grid");
  const double uc = u.values[at];
  const Vec2 x = g.point(at);
  const int P = g.points;
  const int i0 = static_cast<int>(at) % P;
  const int j0 = g.dim == 2 ? static_cast<int>(at) / P : 0;
  double acc = 0.0;
  for (const auto& node : plan.nodes) {
    const int ax = g.dim == 1 ? 0 : axis_of(node.dir);
    double dir_sum = 0.0;
    if (ax >= 0) {
      // On-grid path: nodes land exactly on grid points.
      for (std::size_t j = 0; j < plan.radial.w.size(); ++j) {
        const int k = plan.radial.first + static_cast<int>(j);
        double up, um;
        if (ax == 0) {
          up = (i0 + k < P) ? u.values[at + k] : u.exterior_value;
          um = (i0 - k >= 0) ? u.values[at - k] : u.exterior_value;
        } else {
          up = (j0 + k < P) ? u.values[at + static_cast<std::size_t>(k) * P]
                            : u.exterior_value;
          um = (j0 - k >= 0) ? u.values[at - static_cast<std::size_t>(k) * P]
                             : u.exterior_value;
        }
        dir_sum += plan.radial.w[j] * (up + um - 2.0 * uc);
      }
    } else {
      // Extended bilinear gather: out-of-range corners read exterior_value.
      // This is the exact linearization the stencil scatter realizes, so the
      // two routes agree identically.
      const double hw = g.halfwidth, h = g.h;
      auto val = [&](int i, int j) {
        return (i < 0 || i >= P || j < 0 || j >= P) ? u.exterior_value
                                                    : u.values[g.index(i, j)];
      };
      auto extended = [&](double px, double py) {
        const double tx = (px + hw) / h, ty = (py + hw) / h;
        const int bi = static_cast<int>(std::floor(tx));
        const int bj = static_cast<int>(std::floor(ty));
        const double fx = tx - bi, fy = ty - bj;
        return (1 - fx) * (1 - fy) * val(bi, bj) +
               fx * (1 - fy) * val(bi + 1, bj) +
               (1 - fx) * fy * val(bi, bj + 1) + fx * fy * val(bi + 1, bj + 1);
      };
      for (std::size_t j = 0; j < plan.radial.w.size(); ++j) {
        const double r = (plan.radial.first + static_cast<int>(j)) * plan.h;
        const double dxt = r * node.dir[0], dyt = r * node.dir[1];
        const double d = extended(x[0] + dxt, x[1] + dyt) +
                         extended(x[0] - dxt, x[1] - dyt) - 2.0 * uc;
        dir_sum += plan.radial.w[j] * d;
      }
    }
    acc += node.weight * 2.0 * dir_sum;  // full line
  }
  if (tail == TailModel::ExteriorConstant)
    acc += plan.tail_coefficient * (u.exterior_value - uc);
  return acc;
}

double apply_L(const OperatorSpec& spec, const Field& u, std::size_t at,
               TailModel tail) {
  return apply_L(make_plan(spec, *u.grid), u, at, tail);
}

double apply_L(const OperatorSpec& spec, const std::function<double(Vec2)>& fn,
               Vec2 at, double support_radius) {
  spec.validate_or_throw();
  if (!(support_radius > 0.0))
    throw ConfigError("support_radius must be positive");
  const double s = spec.s;
  const double cut =
      spec.inner_cut > 0.0 ? spec.inner_cut : support_radius * 1e-3;
  const double fc = fn(at);
  auto delta = [&](double r, Vec2 dir) {
    return fn({at[0] + r * dir[0], at[1] + r * dir[1]}) +
           fn({at[0] - r * dir[0], at[1] - r * dir[1]}) - 2.0 * fc;
  };
  const double rho = std::pow(10.0, 1.0 / spec.radial_points_per_decade);
  // Matched estimator radius cancels the fourth-derivative term of the zone.
  const double cut_est = cut * std::sqrt((1.0 - s) / (2.0 - s));
  double acc = 0.0;
  for (const auto& node : spec.measure.directional_nodes()) {
    // Taylor zone.
    double dir_sum = delta(cut_est, node.dir) / (cut_est * cut_est) *
                     std::pow(cut, 2.0 - 2.0 * s) / (2.0 - 2.0 * s);
    // Geometric product-linear panels up to the support radius.
    double r0 = cut;
    double g0 = delta(r0, node.dir);
    while (r0 < support_radius) {
      const double r1 = std::min(r0 * rho, support_radius);
      const double g1 = delta(r1, node.dir);
      const double s0 = power_moment(r0, r1, -2.0 * s);
      const double s1 = power_moment(r0, r1, 1.0 - 2.0 * s);
      dir_sum += (g0 * (r1 * s0 - s1) + g1 * (s1 - r0 * s0)) / (r1 - r0);
      r0 = r1;
      g0 = g1;
    }
    acc += node.weight * 2.0 * dir_sum;
  }
  // fn vanishes beyond the support radius.
  acc += 2.0 * spec.measure.total_mass *
         std::pow(support_radius, -2.0 * s) / s * (0.0 - fc);
  return acc;
}

void scatter_weights(const QuadraturePlan& plan, const GridDomain& grid,
                     const std::function<void(int, int, double)>& emit) {
  for (const auto& node : plan.nodes) {
    const int ax = grid.dim == 1 ? 0 : axis_of(node.dir);
    for (std::size_t j = 0; j < plan.radial.w.size(); ++j) {
      const double c = node.weight * 2.0 * plan.radial.w[j];
      if (c == 0.0) continue;
      const int k = plan.radial.first + static_cast<int>(j);
      if (ax == 0) {
        emit(k, 0, c);
        emit(-k, 0, c);
      } else if (ax == 1) {
        emit(0, k, c);
        emit(0, -k, c);
      } else {
        const double r = k * plan.h;
        for (int sign : {+1, -1}) {
          const double dx = sign * r * node.dir[0] / plan.h;
          const double dy = sign * r * node.dir[1] / plan.h;
          const int bi = static_cast<int>(std::floor(dx));
          const int bj = static_cast<int>(std::floor(dy));
          const double fx = dx - bi, fy = dy - bj;
          emit(bi, bj, c * (1 - fx) * (1 - fy));
          emit(bi + 1, bj, c * fx * (1 - fy));
          emit(bi, bj + 1, c * (1 - fx) * fy);
          emit(bi + 1, bj + 1, c * fx * fy);
        }
      }
    }
  }
}

double Stencil::apply(const Field& u, std::size_t at) const {
  const auto& g = *u.grid;
  const int P = g.points;
  const int i0 = static_cast<int>(at) % P;
  const int j0 = g.dim == 2 ? static_cast<int>(at) / P : 0;
  double acc = diagonal * u.values[at] + tail_coefficient * u.exterior_value;
  for (std::size_t k = 0; k < offsets.size(); ++k) {
    const int i = i0 + offsets[k][0];
    const int j = j0 + offsets[k][1];
    double v;
    if (i < 0 || i >= P || (g.dim == 2 && (j < 0 || j >= P)))
      v = u.exterior_value;
    else
      v = u.values[g.index(i, j)];
    acc += weights[k] * v;
  }
  return acc;
}

Stencil assemble_stencil(const OperatorSpec& spec, const GridDomain& grid) {
  const int cap = grid.dim == 1 ? 256 : 128;
  if (grid.points > cap)
    throw NumericError("grid too large for dense stencil");
  const QuadraturePlan plan = make_plan(spec, grid);
  std::map<std::pair<int, int>, double> acc;
  double diag_extra = 0.0;
  scatter_weights(plan, grid, [&](int di, int dj, double w) {
    if (w == 0.0) return;
    if (di == 0 && dj == 0)
      diag_extra += w;
    else
      acc[{di, dj}] += w;
  });
  Stencil st;
  st.dim = grid.dim;
  st.tail_coefficient = plan.tail_coefficient;
  double wsum = diag_extra;
  for (const auto& [off, w] : acc) {
    st.offsets.push_back({off.first, off.second});
    st.weights.push_back(w);
    wsum += w;
  }
  st.diagonal = -(wsum + st.tail_coefficient) + diag_extra;
  return st;
}

// ---------------------------------------------------------------------------

struct NonlocalApplicator::Impl {
  enum class Mode { Axis1D, Axis2D, Fft } mode;
  // axis modes
  std::vector<double> wx, wy;  // one-sided convolution weights, index k-1
  double diag_x = 0.0, diag_y = 0.0;
  int reach = 0;
  std::vector<double> padded, part1, part2;
  // fft mode
  std::unique_ptr<CpxFft> fft;
  std::vector<double> multiplier;  // real spectrum of the kernel / Q^n
};

NonlocalApplicator::NonlocalApplicator(const OperatorSpec& spec,
                                       std::shared_ptr<const GridDomain> grid)
    : plan_(make_plan(spec, *grid)), grid_(std::move(grid)) {
  impl_ = std::make_unique<Impl>();
  const auto& g = *grid_;
  const int P = g.points;
  bool axis_only = true;
  for (const auto& n : plan_.nodes)
    if (g.dim == 2 && axis_of(n.dir) < 0) axis_only = false;

  const int reach_full = plan_.radial.first + static_cast<int>(plan_.radial.w.size()) - 1;
  const int reach = std::min(reach_full, P - 1);
  impl_->reach = reach;

  if (axis_only && (g.dim == 1 ? reach <= 512 : true)) {
    impl_->mode = g.dim == 1 ? Impl::Mode::Axis1D : Impl::Mode::Axis2D;
    double mass_x = 0.0, mass_y = 0.0;
    for (const auto& n : plan_.nodes) {
      if (g.dim == 1 || axis_of(n.dir) == 0)
        mass_x += n.weight;
      else
        mass_y += n.weight;
    }
    impl_->wx.assign(reach, 0.0);
    impl_->wy.assign(reach, 0.0);
    double sum_all_x = 0.0, sum_all_y = 0.0;
    for (std::size_t j = 0; j < plan_.radial.w.size(); ++j) {
      const int k = plan_.radial.first + static_cast<int>(j);
      const double cx = mass_x * 2.0 * plan_.radial.w[j];
      const double cy = mass_y * 2.0 * plan_.radial.w[j];
      sum_all_x += cx;
      sum_all_y += cy;
      if (k <= reach) {
        impl_->wx[k - 1] = cx;
        if (g.dim == 2) impl_->wy[k - 1] = cy;
      }
    }
    // Weights beyond the box reach only ever see exterior zeros; they still
    // count in the diagonal.
    impl_->diag_x = -2.0 * sum_all_x - plan_.tail_coefficient;
    impl_->diag_y = -2.0 * sum_all_y;
    if (g.dim == 1) {
      impl_->padded.assign(static_cast<std::size_t>(P) + 2 * reach, 0.0);
    } else {
      const std::size_t W = static_cast<std::size_t>(P) + 2 * reach;
      impl_->padded.assign(W * W, 0.0);
      impl_->part1.assign(g.size(), 0.0);
      impl_->part2.assign(g.size(), 0.0);
    }
    diagonal_ = impl_->diag_x + impl_->diag_y;
  } else {
    impl_->mode = Impl::Mode::Fft;
    int q = 1;
    while (q < 2 * P) q <<= 1;
    impl_->fft = std::make_unique<CpxFft>(g.dim, q);
    // Kernel image -> real spectrum (the stencil is even, so the transform
    // is real up to rounding).
    CpxFft kimg(g.dim, q);
    kimg.zero();
    auto* kd = kimg.data();
    double wsum = 0.0, diag00 = 0.0;
    auto wrap = [q](int k) { return k >= 0 ? k % q : (k % q + q) % q; };
    scatter_weights(plan_, g, [&](int di, int dj, double w) {
      if (w == 0.0) return;
      wsum += w;
      if (std::abs(di) > P - 1 || std::abs(dj) > P - 1)
        return;  // exterior-only reach: diagonal part still applies
      if (di == 0 && dj == 0) {
        diag00 += w;
        return;
      }
      const std::size_t idx =
          g.dim == 1 ? static_cast<std::size_t>(wrap(di))
                     : static_cast<std::size_t>(wrap(dj)) * q + wrap(di);
      kd[idx] += w;
    });
    diagonal_ = -(wsum + plan_.tail_coefficient) + diag00;
    kd[0] += diagonal_;
    kimg.forward();
    const double scale = 1.0 / (g.dim == 1 ? double(q) : double(q) * q);
    impl_->multiplier.resize(kimg.size());
    for (std::size_t i = 0; i < kimg.size(); ++i)
      impl_->multiplier[i] = kd[i].real() * scale;
  }
}

NonlocalApplicator::~NonlocalApplicator() = default;

void NonlocalApplicator::apply(std::span<const double> u,
                               std::span<double> y) {
  const auto& g = *grid_;
  const int P = g.points;
  const auto& ops = kernels::active_ops();
  switch (impl_->mode) {
    case Impl::Mode::Axis1D: {
      const int K = impl_->reach;
      double* pu = impl_->padded.data();
      std::copy(u.begin(), u.end(), pu + K);
      ops.symmetric_convolve(pu + K, y.data(), 0, P, impl_->wx.data(),
                             impl_->wx.size(), 1, impl_->diag_x);
      break;
    }
    case Impl::Mode::Axis2D: {
      const int K = impl_->reach;
      const std::size_t W = static_cast<std::size_t>(P) + 2 * K;
      double* pu = impl_->padded.data();
      for (int j = 0; j < P; ++j)
        std::copy(u.begin() + static_cast<std::size_t>(j) * P,
                  u.begin() + static_cast<std::size_t>(j + 1) * P,
                  pu + (j + K) * W + K);
      for (int j = 0; j < P; ++j) {
        const double* row = pu + (j + K) * W + K;
        ops.symmetric_convolve(row, impl_->part1.data() + static_cast<std::size_t>(j) * P,
                               0, P, impl_->wx.data(), impl_->wx.size(), 1,
                               impl_->diag_x);
        ops.symmetric_convolve(row, impl_->part2.data() + static_cast<std::size_t>(j) * P,
                               0, P, impl_->wy.data(), impl_->wy.size(),
                               static_cast<std::ptrdiff_t>(W), impl_->diag_y);
      }
      std::copy(impl_->part1.begin(), impl_->part1.end(), y.begin());
      ops.axpy(1.0, impl_->part2.data(), y.data(), y.size());
      break;
    }
    case Impl::Mode::Fft: {
      auto& fft = *impl_->fft;
      fft.zero();
      auto* d = fft.data();
      const int q = fft.n();
      if (g.dim == 1) {
        for (int i = 0; i < P; ++i) d[i] = u[i];
      } else {
        for (int j = 0; j < P; ++j)
          for (int i = 0; i < P; ++i)
            d[static_cast<std::size_t>(j) * q + i] =
                u[static_cast<std::size_t>(j) * P + i];
      }
      fft.forward();
      ops.cmul_real(reinterpret_cast<double*>(d), impl_->multiplier.data(),
                    fft.size());
      fft.backward();
      if (g.dim == 1) {
        for (int i = 0; i < P; ++i) y[i] = d[i].real();
      } else {
        for (int j = 0; j < P; ++j)
          for (int i = 0; i < P; ++i)
            y[static_cast<std::size_t>(j) * P + i] =
                d[static_cast<std::size_t>(j) * q + i].real();
      }
      break;
    }
  }
}

double bilinear_energy(const OperatorSpec& spec, const Field& u,
                       const Field& v) {
  if (u.grid != v.grid &&
      (u.grid->dim != v.grid->dim || u.grid->points != v.grid->points ||
       u.grid->halfwidth != v.grid->halfwidth))
    throw ConfigError("bilinear_energy: mismatched grids");
  NonlocalApplicator op(spec, u.grid);
  std::vector<double> du(u.values.size()), dv(v.values.size());
  op.apply(u.values, du);
  op.apply(v.values, dv);
  const auto& ops = kernels::active_ops();
  const double hn = std::pow(u.grid->h, u.grid->dim);
  const double a = ops.dot(v.values.data(), du.data(), du.size());
  const double b = ops.dot(u.values.data(), dv.data(), dv.size());
  return -0.5 * hn * (a + b);
}

}  // namespace stablemix
