#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "radnlw/radial_field.hpp"
#include "radnlw/solver.hpp"

namespace radnlw {

/// Time-slice quantities of one state. All space integrals use the radial
/// measure 4 pi r^2 dr with trapezoid weights.
struct NormSnapshot {
  double t = 0.0;
  double energy = 0.0;
  double sup_u = 0.0;             // ||u||_inf
  double sup_du = 0.0;            // ||u_r||_inf
  double l2_grad = 0.0;           // ||grad_{t,x} u||_2
  double l2_grad2 = 0.0;          // ||grad_x grad_{t,x} u||_2
  double h1_grad = 0.0;           // ||grad_{t,x} u||_{H^1}
  double morawetz_density = 0.0;  // int G(u) / |x| dx
  double a_density = 0.0;         // int |u|^8 log(2 + u^2) dx
  double l2_f = 0.0;              // ||f(u)||_2
  double sobolev_ratio = 0.0;     // max_j |u_j| r_j^{1/2} / ||grad_x u||_2, 0 if the gradient vanishes
};

NormSnapshot snapshot_norms(const FieldState& state);

/// 4 pi sum_j w_j [u_t^2 / 2 + u_r^2 / 2 + F(u)] r_j^2.
double energy(const FieldState& state);

/// (||grad_{t,x} u||_2^2 + ||grad_x grad_{t,x} u||_2^2)^{1/2}, using
/// |grad^2 u|^2 = u_rr^2 + 2 (u_r / r)^2 with the limit u_rr(0)^2 at the origin.
double norm_D(const FieldState& state);

/// ||grad_x grad_x u||_2^2 alone (the spatial Hessian part of the above).
double hessian_norm_squared(const FieldState& state);

/// Throws Error(degenerate) when ||grad_x u||_2 < 1e-14.
double radial_sobolev_ratio(const FieldState& state);

/// Closed snapshot index range [first, last].
struct Window {
  std::size_t first = 0;
  std::size_t last = 0;
};

/// Per-snapshot norms of a trajectory plus the time integrals of the A and
/// Morawetz densities.
///
/// Trapezoid segments of the two time integrals are rounded to a common
/// power-of-two quantum sized from the whole trajectory, so every window sum
/// is exact in double precision and adjacent windows add up bit-for-bit.
class NormSeries {
 public:
  NormSeries() = default;
  explicit NormSeries(const Trajectory& trajectory);
  explicit NormSeries(std::vector<NormSnapshot> snapshots);

  std::span<const NormSnapshot> snapshots() const noexcept { return snapshots_; }
  std::size_t size() const noexcept { return snapshots_.size(); }
  const NormSnapshot& operator[](std::size_t k) const { return snapshots_[k]; }
  Window whole() const noexcept { return {0, snapshots_.empty() ? 0 : snapshots_.size() - 1}; }

  /// Window whose endpoints are the snapshots at times t0 and t1.
  /// Throws Error(window_out_of_range) when either time is not a snapshot time.
  Window window_for_times(double t0, double t1) const;

  double a_integral(Window w) const;
  double flux_integral(Window w) const;

  void check(Window w) const;

 private:
  void build_segments();

  std::vector<NormSnapshot> snapshots_;
  std::vector<double> a_segments_;
  std::vector<double> flux_segments_;
};

double accumulate_A(const NormSeries& series, Window window);
double morawetz_flux(const NormSeries& series, Window window);

struct NormB {
  double u_l2_linf = 0.0;       // ||u||_{L^2_t L^inf_x}
  double du_l2_linf = 0.0;      // ||grad_x u||_{L^2_t L^inf_x}
  double grad_linf_l2 = 0.0;    // ||grad_{t,x} u||_{L^inf_t L^2_x}
  double grad2_linf_l2 = 0.0;   // ||grad_{t,x} grad_x u||_{L^inf_t L^2_x}
  double total() const noexcept { return u_l2_linf + du_l2_linf + grad_linf_l2 + grad2_linf_l2; }
};

NormB norm_B_parts(const NormSeries& series, Window window);
double norm_B(const NormSeries& series, Window window);

struct StrichartzSides {
  double lhs = 0.0;  // ||u||_{L^2_t L^inf_x} + ||grad_{t,x} u||_{L^inf_t L^2_x}
  double rhs = 0.0;  // ||grad_{t,x} u(t_first)||_2 + ||f(u)||_{L^1_t L^2_x}
};

StrichartzSides strichartz_sides(const NormSeries& series, Window window);

struct DiagnosticsReport {
  std::vector<NormSnapshot> snapshots;
  double A = 0.0;
  double morawetz_flux = 0.0;
  double B = 0.0;
  double D = 0.0;
  double E = 0.0;
  double energy_drift = 0.0;  // max_t |E(t) - E(0)| / E(0), 0 when E(0) = 0
  double sobolev_ratio_max = 0.0;
  double strichartz_lhs = 0.0;
  double strichartz_rhs = 0.0;
};

/// Report over the whole trajectory.
DiagnosticsReport diagnose(const NormSeries& series);
DiagnosticsReport diagnose(const Trajectory& trajectory);

}  // namespace radnlw
