#include "radnlw/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "radnlw/error.hpp"

namespace radnlw {
namespace {

constexpr double kMax = std::numeric_limits<double>::max();

double saturate(double x) noexcept {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return kMax;
  return x > 0 ? kMax : -kMax;
}

double clamp_magnitude(double u) noexcept { return std::min(std::fabs(u), kSaturationInput); }

double int_pow(double a, int p) noexcept {
  double out = 1.0;
  for (int k = 0; k < p; ++k) out *= a;
  return out;
}

// |u|^p log(2+u^2)^c for a >= 0.
double magnitude_f(const NonlinearitySpec& spec, double a) noexcept {
  double val = int_pow(a, spec.p);
  if (spec.c == 1) val *= std::log(2.0 + a * a);
  return saturate(val);
}

// J(U) = int_0^U w^3 / (2 + w) dw.
double cubic_over_shift(double U) noexcept {
  if (U < 1.0) {
    // Alternating series with ratio U/2.
    double term_pow = U * U * U * U;  // U^{k+4}
    double half_pow = 0.5;            // 2^{-(k+1)}
    double sum = 0.0;
    for (int k = 0; k < 80; ++k) {
      const double term = term_pow * half_pow / (k + 4);
      sum += (k % 2 == 0) ? term : -term;
      if (term < 1e-18 * sum) break;
      term_pow *= U;
      half_pow *= 0.5;
    }
    return sum;
  }
  return U * U * U / 3.0 - U * U + 4.0 * U - 8.0 * std::log1p(0.5 * U);
}

// int_0^a v^5 log(2+v^2) dv with w = v^2:
//   1/2 int_0^U w^2 log(2+w) dw = 1/2 [U^3/3 log(2+U) - J(U)/3].
double quintic_log_potential(double a) noexcept {
  const double U = a * a;
  const double val = 0.5 * (U * U * U / 3.0 * std::log(2.0 + U) - cubic_over_shift(U) / 3.0);
  return saturate(val);
}

double quadrature_potential(const NonlinearitySpec& spec, double a) {
  if (a == 0.0) return 0.0;
  // v = a s maps the integral onto [0, 1] with an O(1) integrand; the
  // adaptive rule misjudges its error estimate on tiny intervals otherwise.
  auto integrand = [&](double s) {
    double val = int_pow(s, spec.p);
    if (spec.c == 1) val *= std::log(2.0 + a * a * s * s);
    return val;
  };
  double error = 0.0;
  const double unit = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, 1.0, 15, 1e-10, &error);
  return saturate(unit * int_pow(a, spec.p + 1));
}

}  // namespace

void NonlinearitySpec::validate() const {
  if (p < 1 || p % 2 == 0)
    throw Error(ErrorKind::config, "nonlinearity.p: must be odd and positive, got " + std::to_string(p));
  if (c != 0 && c != 1)
    throw Error(ErrorKind::config, "nonlinearity.c: must be 0 or 1, got " + std::to_string(c));
  if (sigma != 1 && sigma != -1)
    throw Error(ErrorKind::config, "nonlinearity.sigma: must be +1 or -1, got " + std::to_string(sigma));
}

double eval_f(const NonlinearitySpec& spec, double u) noexcept {
  if (!spec.enabled || u == 0.0) return 0.0;
  const double mag = magnitude_f(spec, clamp_magnitude(u));
  return (u < 0 ? -mag : mag) * spec.sigma;
}

double eval_g(const NonlinearitySpec& spec, double u) noexcept {
  if (!spec.enabled) return 0.0;
  const double a = clamp_magnitude(u);
  double val = int_pow(a, spec.p - 1);
  if (spec.c == 1) val *= std::log(2.0 + a * a);
  return saturate(val) * spec.sigma;
}

double eval_F(const NonlinearitySpec& spec, double u) {
  if (!spec.enabled || u == 0.0) return 0.0;
  const double a = clamp_magnitude(u);
  const double mag = spec.is_quintic_log() ? quintic_log_potential(a) : quadrature_potential(spec, a);
  return mag * spec.sigma;
}

double eval_G(const NonlinearitySpec& spec, double u) {
  if (!spec.enabled || u == 0.0) return 0.0;
  const double a = clamp_magnitude(u);
  const double val = a * eval_f(spec, a) - 2.0 * eval_F(spec, a);
  if (std::isnan(val)) return spec.sigma * kMax;
  return saturate(val);
}

}  // namespace radnlw
