#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "radnlw/diagnostics.hpp"
#include "radnlw/error.hpp"

using namespace radnlw;
using boost::math::quadrature::gauss_kronrod;

namespace {

constexpr double kPi = std::numbers::pi;
const NonlinearitySpec kSpec{};

template <class F>
double integrate(F f, double a, double b) {
  return gauss_kronrod<double, 61>::integrate(f, a, b, 12, 1e-12);
}

// State with v = r u(r), w = r ut(r) sampled directly on the grid.
template <class U, class Ut>
FieldState state_from(const RadialGrid& g, const NonlinearitySpec& spec, U u, Ut ut) {
  FieldState s = FieldState::zero(g, spec);
  for (std::size_t j = 1; j < g.size(); ++j) {
    const double r = g.node(j);
    s.v[j] = r * u(r);
    s.w[j] = r * ut(r);
  }
  return s;
}

auto zero_fn = [](double) { return 0.0; };

// Analytic gaussian bump a exp(-r^2/w^2) exp(1 - 1/(1 - (r/R)^2)) and its
// first two radial derivatives via the logarithmic derivative L.
struct Bump {
  double a = 1.0, w = 1.0, R = 4.0;
  double u(double r) const {
    if (r >= R) return 0.0;
    const double s = r / R;
    return a * std::exp(-r * r / (w * w)) * std::exp(1.0 - 1.0 / (1.0 - s * s));
  }
  double dL(double r) const {
    const double s = r / R, q = 1.0 - s * s;
    return -2.0 * r / (w * w) - 2.0 * s / (R * q * q);
  }
  double ddL(double r) const {
    const double s = r / R, q = 1.0 - s * s;
    return -2.0 / (w * w) - 2.0 / (R * R) * (1.0 + 3.0 * s * s) / (q * q * q);
  }
  double ur(double r) const { return r >= R ? 0.0 : u(r) * dL(r); }
  double urr(double r) const { return r >= R ? 0.0 : u(r) * (dL(r) * dL(r) + ddL(r)); }
};

double F_quad(double u) {
  const double a = std::abs(u);
  if (a == 0.0) return 0.0;
  // polynomial times a smooth log on a short interval: one fixed panel suffices
  return boost::math::quadrature::gauss<double, 30>::integrate(
      [](double v) { return std::pow(v, 5) * std::log(2.0 + v * v); }, 0.0, a);
}

FieldState bump_state(std::size_t n, double amp, double vel = 0.0) {
  ProfileParams p;
  p.amplitude = amp;
  p.velocity_amplitude = vel;
  return sample_initial(RadialGrid(12.0, n), kSpec, gaussian_bump(p));
}

SolveConfig solve(double t_final, std::size_t stride = 1) {
  SolveConfig c;
  c.t_final = t_final;
  c.record_stride = stride;
  return c;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

}  // namespace

TEST_CASE("zero state and zero trajectory") {
  const FieldState z = FieldState::zero(RadialGrid(12.0, 128), kSpec);
  CHECK(energy(z) == 0.0);
  CHECK(norm_D(z) == 0.0);
  CHECK(hessian_norm_squared(z) == 0.0);
  const NormSnapshot s = snapshot_norms(z);
  CHECK(s.sup_u == 0.0);
  CHECK(s.sobolev_ratio == 0.0);
  try {
    radial_sobolev_ratio(z);
    FAIL("expected degenerate");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::degenerate);
  }

  const Trajectory t = evolve(z, solve(3.0));
  const NormSeries series(t);
  const Window all = series.whole();
  CHECK(accumulate_A(series, all) == 0.0);
  CHECK(morawetz_flux(series, all) == 0.0);
  CHECK(norm_B(series, all) == 0.0);
  const auto sides = strichartz_sides(series, all);
  CHECK(sides.lhs == 0.0);
  CHECK(sides.rhs == 0.0);
  const DiagnosticsReport r = diagnose(t);
  CHECK(r.E == 0.0);
  CHECK(r.energy_drift == 0.0);
}

TEST_CASE("standing wave energy matches the closed form at second order") {
  // v = sin(k r) cos(k t): E = 2 pi int_0^R v_r^2 + v_t^2 dr = pi k^2 R.
  const double R = 10.0, k = kPi / R, exact = kPi * k * k * R;
  NonlinearitySpec off;
  off.enabled = false;
  std::vector<double> errs;
  for (std::size_t n : {200u, 400u, 800u}) {
    const RadialGrid g(R, n);
    const double t = 0.37;
    const FieldState s = state_from(
        g, off, [&](double r) { return std::sin(k * r) * std::cos(k * t) / r; },
        [&](double r) { return -k * std::sin(k * r) * std::sin(k * t) / r; });
    errs.push_back(rel(energy(s), exact));
  }
  CHECK(errs[0] < 1e-3);
  CHECK(errs[0] / errs[1] == doctest::Approx(4.0).epsilon(0.1));
  CHECK(errs[1] / errs[2] == doctest::Approx(4.0).epsilon(0.1));
}

TEST_CASE("static bump energy and D against continuum quadrature") {
  const Bump b{1.0, 1.0, 4.0};
  const double E = 4.0 * kPi * integrate([&](double r) { return (0.5 * b.ur(r) * b.ur(r) + F_quad(b.u(r))) * r * r; }, 0.0, 4.0);
  const double grad2 = 4.0 * kPi * integrate([&](double r) { return b.ur(r) * b.ur(r) * r * r; }, 0.0, 4.0);
  const double hess2 = 4.0 * kPi * integrate(
      [&](double r) { return b.urr(r) * b.urr(r) * r * r + 2.0 * b.ur(r) * b.ur(r); }, 0.0, 4.0);
  const double D = std::sqrt(grad2 + hess2);

  const RadialGrid g(4.5, 16384);
  const FieldState s = sample_initial(g, kSpec, gaussian_bump({}));
  CHECK(rel(energy(s), E) < 1e-6);
  CHECK(rel(norm_D(s), D) < 1e-5);
  CHECK(rel(hessian_norm_squared(s), hess2) < 1e-5);
}

TEST_CASE("Hessian identity against Cartesian quadrature") {
  // u = exp(-|x|^2): d_i d_j u = (4 x_i x_j - 2 delta_ij) u, summed over all
  // nine entries on a box, with no radial reduction.
  auto entry_sum = [](double x, double y, double z) {
    const double xs[3] = {x, y, z};
    const double u = std::exp(-(x * x + y * y + z * z));
    double s = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const double h = (4.0 * xs[i] * xs[j] - (i == j ? 2.0 : 0.0)) * u;
        s += h * h;
      }
    return s;
  };
  const double L = 5.0;
  auto q1 = [](auto f, double a, double b) { return gauss_kronrod<double, 31>::integrate(f, a, b, 6, 1e-11); };
  const double cart = q1([&](double x) {
    return q1([&](double y) { return q1([&](double z) { return entry_sum(x, y, z); }, -L, L); }, -L, L);
  }, -L, L);

  const RadialGrid g(6.0, 4096);
  const FieldState s = state_from(g, kSpec, [](double r) { return std::exp(-r * r); }, zero_fn);
  CHECK(rel(hessian_norm_squared(s), cart) < 1e-4);
}

TEST_CASE("D is homogeneous of degree one") {
  const FieldState s = bump_state(1024, 0.7, 0.4);
  FieldState twice = s, thrice = s;
  for (std::size_t j = 0; j < s.v.size(); ++j) {
    twice.v[j] *= 2.0;
    twice.w[j] *= 2.0;
    thrice.v[j] *= 3.0;
    thrice.w[j] *= 3.0;
  }
  CHECK(norm_D(twice) == 2.0 * norm_D(s));
  CHECK(rel(norm_D(thrice), 3.0 * norm_D(s)) < 1e-14);
}

TEST_CASE("radial Sobolev ratio") {
  SUBCASE("piecewise linear profile against the exact ratio") {
    // |grad u|_2^2 = 4 pi int_1^2 r^2 dr = 28 pi / 3 and max |u| r^{1/2} = 1 at r = 1.
    const double exact = 1.0 / std::sqrt(28.0 * kPi / 3.0);
    const RadialGrid g(4.0, 8192);
    const FieldState s = state_from(
        g, kSpec, [](double r) { return r <= 1.0 ? 1.0 : (r <= 2.0 ? 2.0 - r : 0.0); }, zero_fn);
    CHECK(rel(radial_sobolev_ratio(s), exact) < 1e-2);
  }
  SUBCASE("scale invariant") {
    const FieldState s = bump_state(1024, 0.9);
    FieldState t = s;
    for (double& v : t.v) v *= 4.0;
    CHECK(radial_sobolev_ratio(t) == radial_sobolev_ratio(s));
  }
  SUBCASE("below the Cauchy-Schwarz constant for smooth data") {
    const double bound = 1.0 / std::sqrt(4.0 * kPi) + 1e-2;
    for (double w : {0.3, 1.0, 2.0})
      for (double c : {0.0, 1.5}) {
        ProfileParams p;
        p.width = w;
        p.center = c;
        const FieldState s = sample_initial(RadialGrid(12.0, 2048), kSpec, gaussian_bump(p));
        CHECK(radial_sobolev_ratio(s) <= bound);
      }
  }
}

TEST_CASE("A and the Morawetz flux are exactly additive and monotone") {
  const Trajectory t = evolve(bump_state(512, 1.2, 0.3), solve(6.0, 2));
  REQUIRE(t.status == RunStatus::completed);
  const NormSeries series(t);
  const Window all = series.whole();
  const double T = t.final().t;
  const std::size_t mid = all.last / 2;
  const Window left = series.window_for_times(0.0, series[mid].t);
  const Window right = series.window_for_times(series[mid].t, T);
  CHECK(left.last == mid);
  CHECK(accumulate_A(series, all) == accumulate_A(series, left) + accumulate_A(series, right));
  CHECK(morawetz_flux(series, all) == morawetz_flux(series, left) + morawetz_flux(series, right));
  CHECK(accumulate_A(series, {mid, mid}) == 0.0);
  CHECK(morawetz_flux(series, {mid, mid}) == 0.0);

  // three-way split as well
  const std::size_t a = all.last / 3, b = 2 * all.last / 3;
  CHECK(accumulate_A(series, all) ==
        accumulate_A(series, {0, a}) + accumulate_A(series, {a, b}) + accumulate_A(series, {b, all.last}));

  double prevA = 0.0, prevF = 0.0;
  for (std::size_t k = 1; k <= all.last; ++k) {
    const double A = accumulate_A(series, {0, k});
    const double F = morawetz_flux(series, {0, k});
    REQUIRE(A >= prevA);
    REQUIRE(F >= prevF);
    prevA = A;
    prevF = F;
  }
  CHECK(accumulate_A(series, all) > 0.0);
}

TEST_CASE("window errors") {
  const Trajectory t = evolve(bump_state(256, 0.5), solve(1.0, 4));
  const NormSeries series(t);
  auto expect_range = [&](auto&& fn) {
    try {
      fn();
      FAIL("expected window_out_of_range");
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::window_out_of_range);
    }
  };
  expect_range([&] { accumulate_A(series, {0, series.size()}); });
  expect_range([&] { morawetz_flux(series, {3, 2}); });
  expect_range([&] { norm_B(series, {0, 10'000}); });
  expect_range([&] { strichartz_sides(series, {5, 1}); });
  expect_range([&] { series.window_for_times(0.0, 2.0); });
  expect_range([&] { series.window_for_times(0.123456, 1.0); });
}

TEST_CASE("B is stable under halving the record stride") {
  const FieldState s0 = bump_state(1024, 0.75, 0.2);
  const double b4 = diagnose(evolve(s0, solve(6.0, 4))).B;
  const double b2 = diagnose(evolve(s0, solve(6.0, 2))).B;
  CHECK(rel(b2, b4) <= 5e-3);
}

TEST_CASE("Strichartz sides") {
  NonlinearitySpec off;
  off.enabled = false;
  ProfileParams p;
  p.amplitude = 0.8;
  const FieldState s0 = sample_initial(RadialGrid(12.0, 512), off, gaussian_bump(p));
  const NormSeries series(evolve(s0, solve(4.0, 2)));
  const auto sides = strichartz_sides(series, series.whole());
  CHECK(sides.rhs == series[0].l2_grad);
  CHECK(std::isfinite(sides.lhs));
  CHECK(sides.lhs > 0.0);

  // defocusing: the ratio is stable under one refinement
  double ratio[2];
  for (int level = 0; level < 2; ++level) {
    const DiagnosticsReport r = diagnose(evolve(bump_state(1024u << level, 0.75), solve(6.0)));
    ratio[level] = r.strichartz_lhs / r.strichartz_rhs;
  }
  CHECK(rel(ratio[1], ratio[0]) < 0.1);
}

TEST_CASE("report structure and sign symmetry") {
  const FieldState s0 = bump_state(1024, 0.9, 0.3);
  FieldState neg = s0;
  for (double& v : neg.v) v = -v;
  for (double& w : neg.w) w = -w;
  const DiagnosticsReport r = diagnose(evolve(s0, solve(6.0, 2)));
  const DiagnosticsReport q = diagnose(evolve(neg, solve(6.0, 2)));
  CHECK(r.D == r.snapshots.front().h1_grad);
  CHECK(r.D == norm_D(s0));
  CHECK(r.E == r.snapshots.front().energy);
  CHECK(r.energy_drift <= 1e-3);
  CHECK(r.morawetz_flux >= 0.0);
  CHECK(r.morawetz_flux / r.E <= 0.1);
  CHECK(r.A == q.A);
  CHECK(r.B == q.B);
  CHECK(r.D == q.D);
  CHECK(r.E == q.E);
  CHECK(r.morawetz_flux == q.morawetz_flux);
  CHECK(r.sobolev_ratio_max == q.sobolev_ratio_max);
  CHECK(r.strichartz_lhs == q.strichartz_lhs);
}

TEST_CASE("Morawetz flux over energy is stable under refinement") {
  double ratio[2];
  for (int level = 0; level < 2; ++level) {
    const DiagnosticsReport r = diagnose(evolve(bump_state(1024u << level, 1.0), solve(6.0, 2)));
    ratio[level] = r.morawetz_flux / r.E;
  }
  CHECK(rel(ratio[1], ratio[0]) < 0.01);
}

TEST_CASE("NormSeries from snapshots matches the trajectory constructor") {
  const Trajectory t = evolve(bump_state(256, 1.0), solve(3.0));
  const NormSeries a(t);
  const NormSeries b(std::vector<NormSnapshot>(a.snapshots().begin(), a.snapshots().end()));
  CHECK(a.a_integral(a.whole()) == b.a_integral(b.whole()));
  CHECK(a.flux_integral(a.whole()) == b.flux_integral(b.whole()));
}
