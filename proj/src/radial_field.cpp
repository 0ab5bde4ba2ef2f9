#include "radnlw/radial_field.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <sstream>

#include "radnlw/error.hpp"

namespace radnlw {
namespace {

constexpr double kLeakTolerance = 1e-14;

double smooth_cutoff(double r, double radius) {
  const double s = r / radius;
  if (s >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

}  // namespace

RadialGrid::RadialGrid(double r_max, std::size_t n) : r_max_(r_max), n_(n), dr_(r_max / static_cast<double>(n)) {
  if (!(r_max > 0.0) || !std::isfinite(r_max))
    throw Error(ErrorKind::config, "grid.r_max: must be positive");
  if (n < 16) throw Error(ErrorKind::config, "grid.n: must be at least 16");
}

std::vector<double> RadialGrid::nodes() const {
  std::vector<double> r(size());
  for (std::size_t j = 0; j < r.size(); ++j) r[j] = node(j);
  return r;
}

FieldState FieldState::zero(const RadialGrid& grid, const NonlinearitySpec& spec) {
  FieldState s;
  s.grid = grid;
  s.spec = spec;
  s.v.assign(grid.size(), 0.0);
  s.w.assign(grid.size(), 0.0);
  return s;
}

InitialData gaussian_bump(const ProfileParams& p) {
  auto shape = [c = p.center, w = p.width, R = p.support_radius](double r) {
    if (r >= R) return 0.0;
    const double x = (r - c) / w;
    return std::exp(-x * x) * smooth_cutoff(r, R);
  };
  InitialData d;
  d.u0 = [shape, a = p.amplitude](double r) { return a * shape(r); };
  d.u1 = [shape, b = p.velocity_amplitude](double r) { return b * shape(r); };
  d.support_radius = p.support_radius;
  return d;
}

InitialData polynomial_bump(const ProfileParams& p) {
  auto shape = [R = p.support_radius](double r) {
    if (r >= R) return 0.0;
    const double s = 1.0 - (r / R) * (r / R);
    return s * s * s * s;
  };
  InitialData d;
  d.u0 = [shape, a = p.amplitude](double r) { return a * shape(r); };
  d.u1 = [shape, b = p.velocity_amplitude](double r) { return b * shape(r); };
  d.support_radius = p.support_radius;
  return d;
}

InitialData zero_data() {
  InitialData d;
  d.u0 = [](double) { return 0.0; };
  d.u1 = [](double) { return 0.0; };
  d.support_radius = 0.0;
  return d;
}

InitialData standing_wave(const ProfileParams& p, double r_max) {
  const double k = p.mode * std::numbers::pi / r_max;
  InitialData d;
  d.u0 = [k, a = p.amplitude](double r) { return r == 0.0 ? a * k : a * std::sin(k * r) / r; };
  d.u1 = [](double) { return 0.0; };
  d.support_radius = r_max;
  d.boundary_mode = true;
  return d;
}

InitialData table_profile(const std::string& path, double support_radius) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::config, "data.table: cannot open '" + path + "'");
  std::vector<double> r, u0, u1;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream row(line);
    double a, b, c;
    if (!(row >> a >> b >> c)) {
      if (r.empty()) continue;  // header
      throw Error(ErrorKind::config, "data.table: malformed row '" + line + "'");
    }
    if (!r.empty() && a <= r.back())
      throw Error(ErrorKind::config, "data.table: radii must be strictly increasing");
    r.push_back(a);
    u0.push_back(b);
    u1.push_back(c);
  }
  if (r.size() < 2) throw Error(ErrorKind::config, "data.table: need at least two rows");

  auto interp = [r](const std::vector<double>& y) {
    return [r, y](double x) {
      if (x < r.front() || x > r.back()) return 0.0;
      const auto it = std::upper_bound(r.begin(), r.end(), x);
      const std::size_t hi = std::min<std::size_t>(it - r.begin(), r.size() - 1);
      const std::size_t lo = hi - 1;
      const double s = (x - r[lo]) / (r[hi] - r[lo]);
      return y[lo] + s * (y[hi] - y[lo]);
    };
  };
  InitialData d;
  d.u0 = interp(u0);
  d.u1 = interp(u1);
  if (support_radius > 0.0) {
    d.support_radius = support_radius;
  } else {
    double last = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i)
      if (u0[i] != 0.0 || u1[i] != 0.0) last = i + 1 < r.size() ? r[i + 1] : r[i];
    d.support_radius = last;
  }
  return d;
}

InitialData named_profile(const std::string& name, const ProfileParams& params, double r_max) {
  if (name == "gaussian-bump") return gaussian_bump(params);
  if (name == "polynomial-bump") return polynomial_bump(params);
  if (name == "zero") return zero_data();
  if (name == "standing-wave") return standing_wave(params, r_max);
  throw Error(ErrorKind::config, "data.profile: unknown profile '" + name + "'");
}

FieldState sample_initial(const RadialGrid& grid, const NonlinearitySpec& spec, const InitialData& data) {
  spec.validate();
  FieldState s = FieldState::zero(grid, spec);
  if (!data.boundary_mode) {
    if (data.support_radius >= grid.r_max())
      throw Error(ErrorKind::unsupported_data, "support radius must lie inside the grid");
    if (data.support_radius > 0.0 && data.support_radius < 8.0 * grid.dr())
      throw Error(ErrorKind::resolution, "data support spans fewer than 8 cells");
  }
  for (std::size_t j = 1; j < grid.size(); ++j) {
    const double r = grid.node(j);
    const double a = data.u0(r);
    const double b = data.u1(r);
    if (!data.boundary_mode && r >= data.support_radius &&
        (std::fabs(a) > kLeakTolerance || std::fabs(b) > kLeakTolerance))
      throw Error(ErrorKind::unsupported_data, "data nonzero beyond support radius at r = " + std::to_string(r));
    s.v[j] = r * a;
    s.w[j] = r * b;
  }
  s.v.back() = data.boundary_mode ? 0.0 : s.v.back();
  s.w.back() = data.boundary_mode ? 0.0 : s.w.back();
  return s;
}

std::vector<double> reconstruct(std::span<const double> reduced, const RadialGrid& grid) {
  std::vector<double> u(reduced.size());
  if (reduced.empty()) return u;
  for (std::size_t j = 1; j < reduced.size(); ++j) u[j] = reduced[j] / grid.node(j);
  u[0] = reduced.size() > 1 ? (reduced[1] - reduced[0]) / grid.dr() : 0.0;
  return u;
}

std::vector<double> reconstruct_u(const FieldState& state) { return reconstruct(state.v, state.grid); }

RadialDerivatives radial_derivatives(std::span<const double> u, double dr) {
  const std::size_t m = u.size();
  RadialDerivatives d{std::vector<double>(m, 0.0), std::vector<double>(m, 0.0)};
  if (m < 4) return d;
  const double inv2 = 1.0 / (2.0 * dr);
  const double invsq = 1.0 / (dr * dr);
  // Even extension u(-dr) = u(dr).
  d.u_r[0] = 0.0;
  d.u_rr[0] = 2.0 * (u[1] - u[0]) * invsq;
  for (std::size_t j = 1; j + 1 < m; ++j) {
    d.u_r[j] = (u[j + 1] - u[j - 1]) * inv2;
    d.u_rr[j] = (u[j + 1] - 2.0 * u[j] + u[j - 1]) * invsq;
  }
  const std::size_t n = m - 1;
  d.u_r[n] = (3.0 * u[n] - 4.0 * u[n - 1] + u[n - 2]) * inv2;
  d.u_rr[n] = (2.0 * u[n] - 5.0 * u[n - 1] + 4.0 * u[n - 2] - u[n - 3]) * invsq;
  return d;
}

RadialDerivatives radial_derivatives(const FieldState& state) {
  return radial_derivatives(reconstruct_u(state), state.grid.dr());
}

double support_extent(const FieldState& state) {
  for (std::size_t j = state.v.size(); j-- > 0;)
    if (state.v[j] != 0.0 || state.w[j] != 0.0) return state.grid.node(j);
  return 0.0;
}

}  // namespace radnlw
