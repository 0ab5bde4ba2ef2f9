#pragma once

namespace radnlw {

/// The nonlinearity family f(u) = sigma * u^p * log(2 + u^2)^c.
///
/// The default value is the defocusing quintic-log case p = 5, c = 1,
/// sigma = +1. With `enabled == false` the equation is the linear wave
/// equation and every derived function vanishes identically.
struct NonlinearitySpec {
  int p = 5;
  int c = 1;
  int sigma = 1;
  bool enabled = true;

  /// Throws Error(config) unless p is odd and positive, c is 0 or 1 and
  /// sigma is +1 or -1.
  void validate() const;

  bool is_quintic_log() const noexcept { return p == 5 && c == 1; }

  friend bool operator==(const NonlinearitySpec&, const NonlinearitySpec&) = default;
};

/// Magnitude above which inputs are clamped. Results that would still
/// overflow are replaced by +-DBL_MAX.
inline constexpr double kSaturationInput = 1e60;

double eval_f(const NonlinearitySpec& spec, double u) noexcept;

/// f(u) = u * g(u); g is even.
double eval_g(const NonlinearitySpec& spec, double u) noexcept;

/// Antiderivative of eval_f with F(0) = 0. Closed form for the quintic-log
/// case, adaptive quadrature otherwise.
double eval_F(const NonlinearitySpec& spec, double u);

/// G(u) = u f(u) - 2 F(u), the Morawetz integrand.
double eval_G(const NonlinearitySpec& spec, double u);

}  // namespace radnlw
