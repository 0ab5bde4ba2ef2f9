#include "radnlw/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "radnlw/error.hpp"
#include "radnlw/kernels.hpp"

namespace radnlw {
namespace {

constexpr double kFourPi = 4.0 * std::numbers::pi;

struct Weights {
  std::vector<double> volume;  // 4 pi r^2 dr, trapezoid
  std::vector<double> flux;    // 4 pi r dr, trapezoid
};

Weights radial_weights(const RadialGrid& grid) {
  Weights w;
  const std::size_t m = grid.size();
  w.volume.resize(m);
  w.flux.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double r = grid.node(j);
    const double end = (j == 0 || j + 1 == m) ? 0.5 : 1.0;
    w.volume[j] = kFourPi * r * r * grid.dr() * end;
    w.flux[j] = kFourPi * r * grid.dr() * end;
  }
  return w;
}

// Nodal fields every slice quantity is built from.
struct Slice {
  std::vector<double> u, ut;
  RadialDerivatives du, dut;
};

Slice slice_of(const FieldState& s) {
  Slice sl;
  sl.u = reconstruct(s.v, s.grid);
  sl.ut = reconstruct(s.w, s.grid);
  sl.du = radial_derivatives(sl.u, s.grid.dr());
  sl.dut = radial_derivatives(sl.ut, s.grid.dr());
  return sl;
}

// |grad_x^2 u|^2 = u_rr^2 + 2 (u_r / r)^2; at r = 0, u_r / r -> u_rr(0).
double hessian_density(const Slice& sl, const RadialGrid& grid, std::size_t j) {
  const double urr = sl.du.u_rr[j];
  const double ratio = j == 0 ? urr : sl.du.u_r[j] / grid.node(j);
  return urr * urr + 2.0 * ratio * ratio;
}

double pow8(double a) {
  const double a2 = a * a;
  const double a4 = a2 * a2;
  return a4 * a4;
}

double trapezoid(double t0, double t1, double x0, double x1) { return 0.5 * (t1 - t0) * (x0 + x1); }

// Multiples of a power of two sized so that every partial sum stays below 2^53 quanta.
std::vector<double> quantize(std::vector<double> segments) {
  double total = 0.0;
  for (double s : segments) total += std::fabs(s);
  if (total == 0.0 || !std::isfinite(total)) return segments;
  const int exponent = std::ilogb(total) + 1 - 52;
  for (double& s : segments) s = std::ldexp(std::nearbyint(std::ldexp(s, -exponent)), exponent);
  return segments;
}

}  // namespace

NormSnapshot snapshot_norms(const FieldState& state) {
  const RadialGrid& grid = state.grid;
  const std::size_t m = grid.size();
  const Weights wts = radial_weights(grid);
  const Slice sl = slice_of(state);

  std::vector<double> energy_d(m), grad_d(m), grad2_d(m), spatial_d(m), a_d(m), g_d(m), f_d(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double u = sl.u[j], ut = sl.ut[j], ur = sl.du.u_r[j];
    energy_d[j] = 0.5 * ut * ut + 0.5 * ur * ur + eval_F(state.spec, u);
    grad_d[j] = ut * ut + ur * ur;
    spatial_d[j] = ur * ur;
    const double utr = sl.dut.u_r[j];
    grad2_d[j] = utr * utr + hessian_density(sl, grid, j);
    a_d[j] = pow8(std::fabs(u)) * std::log(2.0 + u * u);
    g_d[j] = eval_G(state.spec, u);
    const double f = eval_f(state.spec, u);
    f_d[j] = f * f;
  }

  NormSnapshot n;
  n.t = state.t;
  n.energy = kernels::dot(energy_d, wts.volume);
  n.sup_u = kernels::max_abs(sl.u);
  n.sup_du = kernels::max_abs(sl.du.u_r);
  n.l2_grad = std::sqrt(kernels::dot(grad_d, wts.volume));
  n.l2_grad2 = std::sqrt(kernels::dot(grad2_d, wts.volume));
  n.h1_grad = std::sqrt(n.l2_grad * n.l2_grad + n.l2_grad2 * n.l2_grad2);
  n.morawetz_density = kernels::dot(g_d, wts.flux);
  n.a_density = kernels::dot(a_d, wts.volume);
  n.l2_f = std::sqrt(kernels::dot(f_d, wts.volume));

  const double spatial = std::sqrt(kernels::dot(spatial_d, wts.volume));
  if (spatial >= 1e-14) {
    double peak = 0.0;
    for (std::size_t j = 1; j < m; ++j) peak = std::max(peak, std::fabs(sl.u[j]) * std::sqrt(grid.node(j)));
    n.sobolev_ratio = peak / spatial;
  }
  return n;
}

double energy(const FieldState& state) { return snapshot_norms(state).energy; }

double norm_D(const FieldState& state) { return snapshot_norms(state).h1_grad; }

double hessian_norm_squared(const FieldState& state) {
  const RadialGrid& grid = state.grid;
  const Weights wts = radial_weights(grid);
  const Slice sl = slice_of(state);
  std::vector<double> d(grid.size());
  for (std::size_t j = 0; j < d.size(); ++j) d[j] = hessian_density(sl, grid, j);
  return kernels::dot(d, wts.volume);
}

double radial_sobolev_ratio(const FieldState& state) {
  const NormSnapshot n = snapshot_norms(state);
  if (n.sobolev_ratio == 0.0) {
    // Either the gradient is below the floor or u vanishes at every r > 0.
    const Slice sl = slice_of(state);
    std::vector<double> sq(sl.du.u_r.size());
    for (std::size_t j = 0; j < sq.size(); ++j) sq[j] = sl.du.u_r[j] * sl.du.u_r[j];
    if (std::sqrt(kernels::dot(sq, radial_weights(state.grid).volume)) < 1e-14)
      throw Error(ErrorKind::degenerate, "gradient norm below 1e-14");
  }
  return n.sobolev_ratio;
}

NormSeries::NormSeries(const Trajectory& trajectory) {
  snapshots_.reserve(trajectory.size());
  for (const FieldState& s : trajectory.states) snapshots_.push_back(snapshot_norms(s));
  build_segments();
}

NormSeries::NormSeries(std::vector<NormSnapshot> snapshots) : snapshots_(std::move(snapshots)) { build_segments(); }

void NormSeries::build_segments() {
  std::vector<double> a, flux;
  for (std::size_t k = 0; k + 1 < snapshots_.size(); ++k) {
    const NormSnapshot& s0 = snapshots_[k];
    const NormSnapshot& s1 = snapshots_[k + 1];
    a.push_back(trapezoid(s0.t, s1.t, s0.a_density, s1.a_density));
    flux.push_back(trapezoid(s0.t, s1.t, s0.morawetz_density, s1.morawetz_density));
  }
  a_segments_ = quantize(std::move(a));
  flux_segments_ = quantize(std::move(flux));
}

void NormSeries::check(Window w) const {
  if (w.first > w.last || w.last >= snapshots_.size())
    throw Error(ErrorKind::window_out_of_range, "window [" + std::to_string(w.first) + ", " +
                                                    std::to_string(w.last) + "] outside " +
                                                    std::to_string(snapshots_.size()) + " snapshots");
}

Window NormSeries::window_for_times(double t0, double t1) const {
  auto index_of = [&](double t) {
    const double tol = 1e-9 * std::max(1.0, std::fabs(t));
    for (std::size_t k = 0; k < snapshots_.size(); ++k)
      if (std::fabs(snapshots_[k].t - t) <= tol) return k;
    throw Error(ErrorKind::window_out_of_range, "time " + std::to_string(t) + " is not a snapshot time");
  };
  const Window w{index_of(t0), index_of(t1)};
  check(w);
  return w;
}

double NormSeries::a_integral(Window w) const {
  check(w);
  double sum = 0.0;
  for (std::size_t k = w.first; k < w.last; ++k) sum += a_segments_[k];
  return sum;
}

double NormSeries::flux_integral(Window w) const {
  check(w);
  double sum = 0.0;
  for (std::size_t k = w.first; k < w.last; ++k) sum += flux_segments_[k];
  return sum;
}

double accumulate_A(const NormSeries& series, Window window) { return series.a_integral(window); }

double morawetz_flux(const NormSeries& series, Window window) { return series.flux_integral(window); }

NormB norm_B_parts(const NormSeries& series, Window w) {
  series.check(w);
  NormB b;
  double u_sq = 0.0, du_sq = 0.0;
  for (std::size_t k = w.first; k <= w.last; ++k) {
    const NormSnapshot& s = series[k];
    b.grad_linf_l2 = std::max(b.grad_linf_l2, s.l2_grad);
    b.grad2_linf_l2 = std::max(b.grad2_linf_l2, s.l2_grad2);
    if (k < w.last) {
      const NormSnapshot& s1 = series[k + 1];
      u_sq += trapezoid(s.t, s1.t, s.sup_u * s.sup_u, s1.sup_u * s1.sup_u);
      du_sq += trapezoid(s.t, s1.t, s.sup_du * s.sup_du, s1.sup_du * s1.sup_du);
    }
  }
  b.u_l2_linf = std::sqrt(u_sq);
  b.du_l2_linf = std::sqrt(du_sq);
  return b;
}

double norm_B(const NormSeries& series, Window window) { return norm_B_parts(series, window).total(); }

StrichartzSides strichartz_sides(const NormSeries& series, Window w) {
  series.check(w);
  const NormB b = norm_B_parts(series, w);
  double forcing = 0.0;
  for (std::size_t k = w.first; k < w.last; ++k)
    forcing += trapezoid(series[k].t, series[k + 1].t, series[k].l2_f, series[k + 1].l2_f);
  return {b.u_l2_linf + b.grad_linf_l2, series[w.first].l2_grad + forcing};
}

DiagnosticsReport diagnose(const NormSeries& series) {
  DiagnosticsReport r;
  r.snapshots.assign(series.snapshots().begin(), series.snapshots().end());
  if (series.size() == 0) return r;
  const Window all = series.whole();
  r.A = accumulate_A(series, all);
  r.morawetz_flux = morawetz_flux(series, all);
  r.B = norm_B(series, all);
  r.D = series[0].h1_grad;
  r.E = series[0].energy;
  for (const NormSnapshot& s : r.snapshots) {
    if (r.E != 0.0) r.energy_drift = std::max(r.energy_drift, std::fabs(s.energy - r.E) / std::fabs(r.E));
    r.sobolev_ratio_max = std::max(r.sobolev_ratio_max, s.sobolev_ratio);
  }
  const StrichartzSides st = strichartz_sides(series, all);
  r.strichartz_lhs = st.lhs;
  r.strichartz_rhs = st.rhs;
  return r;
}

DiagnosticsReport diagnose(const Trajectory& trajectory) { return diagnose(NormSeries(trajectory)); }

}  // namespace radnlw
