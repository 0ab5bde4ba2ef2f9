#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "radnlw/nonlinearity.hpp"

namespace radnlw {

/// Uniform mesh r_j = j * dr on [0, r_max], j = 0..n.
class RadialGrid {
 public:
  RadialGrid() = default;
  /// Throws Error(config) if r_max <= 0 or n < 16.
  RadialGrid(double r_max, std::size_t n);

  double r_max() const noexcept { return r_max_; }
  std::size_t cells() const noexcept { return n_; }
  std::size_t size() const noexcept { return n_ + 1; }
  double dr() const noexcept { return dr_; }

  /// r_0 = 0 and r_n = r_max exactly.
  double node(std::size_t j) const noexcept { return j == n_ ? r_max_ : static_cast<double>(j) * dr_; }
  std::vector<double> nodes() const;

  friend bool operator==(const RadialGrid&, const RadialGrid&) = default;

 private:
  double r_max_ = 1.0;
  std::size_t n_ = 16;
  double dr_ = 1.0 / 16;
};

/// The evolved pair in the reduced variable: v = r u and w = d/dt (r u).
struct FieldState {
  double t = 0.0;
  std::vector<double> v;
  std::vector<double> w;
  RadialGrid grid;
  NonlinearitySpec spec;
  bool overflowed = false;

  /// Zero state on `grid` at time 0.
  static FieldState zero(const RadialGrid& grid, const NonlinearitySpec& spec);
};

/// Radial initial position and velocity, both vanishing for r >= support_radius.
struct InitialData {
  std::function<double(double)> u0;
  std::function<double(double)> u1;
  double support_radius = 0.0;
  /// Eigenmodes that satisfy the Dirichlet condition at r_max are exempt
  /// from the support and light-cone checks.
  bool boundary_mode = false;
};

/// Parameters shared by the named profiles.
struct ProfileParams {
  double amplitude = 1.0;
  double velocity_amplitude = 0.0;
  double width = 1.0;
  double center = 0.0;
  double support_radius = 4.0;
  int mode = 1;  // standing-wave only
};

/// a exp(-(r - c)^2 / w^2) beta(r / R), beta(s) = exp(1 - 1 / (1 - s^2)) on s < 1.
/// u1 uses the same shape scaled by velocity_amplitude.
InitialData gaussian_bump(const ProfileParams& params);

/// a (1 - (r / R)^2)^4 on r < R.
InitialData polynomial_bump(const ProfileParams& params);

InitialData zero_data();

/// u0 = a sin(mode pi r / r_max) / r, u1 = 0: the linear standing wave with
/// v = a sin(mode pi r / r_max) cos(mode pi t / r_max).
InitialData standing_wave(const ProfileParams& params, double r_max);

/// Rows "r,u0,u1" (optional header, '#' comments), linear interpolation,
/// zero outside the tabulated range. The support radius is the first tabulated
/// r past the last nonzero entry unless `support_radius` is positive.
InitialData table_profile(const std::string& path, double support_radius = 0.0);

/// Builds a profile by name: gaussian-bump, polynomial-bump, zero,
/// standing-wave. ("table" needs a path; use table_profile.)
InitialData named_profile(const std::string& name, const ProfileParams& params, double r_max);

/// v_j = r_j u0(r_j), w_j = r_j u1(r_j), t = 0.
/// Throws Error(unsupported_data) when the data leak past support_radius or
/// support_radius >= r_max, Error(resolution) when the support spans fewer
/// than 8 cells.
FieldState sample_initial(const RadialGrid& grid, const NonlinearitySpec& spec, const InitialData& data);

/// u_j = v_j / r_j; u_0 = (v_1 - v_0) / dr.
std::vector<double> reconstruct_u(const FieldState& state);

/// Same map applied to any field in the reduced variable (w -> u_t).
std::vector<double> reconstruct(std::span<const double> reduced, const RadialGrid& grid);

struct RadialDerivatives {
  std::vector<double> u_r;
  std::vector<double> u_rr;
};

/// Second-order finite differences of a nodal radial profile. Even extension
/// at the origin, one-sided second-order stencils at the outer node.
RadialDerivatives radial_derivatives(std::span<const double> u, double dr);

RadialDerivatives radial_derivatives(const FieldState& state);

/// Radius of the outermost node where v or w is nonzero (0 for the zero state).
double support_extent(const FieldState& state);

}  // namespace radnlw
