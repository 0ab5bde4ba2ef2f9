#include <cmath>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "doctest.h"
#include "radnlw/error.hpp"
#include "radnlw/nonlinearity.hpp"

using namespace radnlw;

namespace {

const NonlinearitySpec kDefault{};

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// 40-digit mpmath quadrature, rounded to double.
constexpr double kF1 = 0.16816663670001523565;
constexpr double kF2 = 17.021361834434510708;
constexpr double kF3 = 260.61727310131992142;
constexpr double kF01 = 1.1614828355442464455e-7;

// G identity quadrature int_0^u 2v (g(u) - g(v)) dv at high precision.
constexpr double kG[4][2] = {{0.5, 0.0085952057796753236322},
                             {1.0, 0.7622790152680792201},
                             {3.0, 1226.8311076673722838},
                             {10.0, 3191215.8350989379003}};

// Dense log-spaced sampling of G(u) / (u^6 log(2 + u^2)) on [1e-3, 1e3]
// gave [0.666667, 0.703205]; frozen with slack.
constexpr double kCompLo = 0.66;
constexpr double kCompHi = 0.71;

}  // namespace

TEST_CASE("f and g point values") {
  CHECK(eval_f(kDefault, 0.0) == 0.0);
  CHECK(eval_f(kDefault, 1.0) == doctest::Approx(std::log(3.0)).epsilon(1e-15));
  CHECK(eval_f(kDefault, -1.0) == -eval_f(kDefault, 1.0));
  CHECK(eval_g(kDefault, 0.0) == 0.0);
  CHECK(rel(eval_g(kDefault, 2.0), 16.0 * std::log(6.0)) < 1e-15);
  for (double u : {-3.5, -0.2, 0.7, 4.0, 123.0}) CHECK(rel(eval_f(kDefault, u), u * eval_g(kDefault, u)) < 1e-15);
}

TEST_CASE("F closed form against high-precision quadrature") {
  CHECK(eval_F(kDefault, 0.0) == 0.0);
  CHECK(rel(eval_F(kDefault, 1.0), kF1) < 1e-9);
  CHECK(rel(eval_F(kDefault, -2.0), kF2) < 1e-12);
  CHECK(rel(eval_F(kDefault, 3.0), kF3) < 1e-12);
  CHECK(rel(eval_F(kDefault, 0.1), kF01) < 1e-12);
}

TEST_CASE("F closed form against Boost quadrature across both branches") {
  using boost::math::quadrature::gauss_kronrod;
  for (double u : {1e-3, 0.05, 0.3, 0.99, 1.0, 1.01, 1.5, 7.0, 40.0}) {
    const double q = gauss_kronrod<double, 61>::integrate(
        [](double v) { return std::pow(v, 5) * std::log(2.0 + v * v); }, 0.0, u, 15, 1e-14);
    CAPTURE(u);
    CHECK(rel(eval_F(kDefault, u), q) < 1e-12);
  }
}

TEST_CASE("G identity") {
  CHECK(eval_G(kDefault, 0.0) == 0.0);
  const double g1 = eval_G(kDefault, 1.0);
  CHECK(g1 > 0.0);
  CHECK(rel(g1, std::log(3.0) - 2.0 * kF1) < 1e-12);
  for (const auto& [u, g] : kG) {
    CAPTURE(u);
    CHECK(rel(eval_G(kDefault, u), g) < 1e-8);
  }
}

TEST_CASE("parity is exact for every nonlinearity") {
  for (int p : {1, 3, 5, 7})
    for (int c : {0, 1})
      for (int s : {1, -1}) {
        const NonlinearitySpec spec{p, c, s, true};
        for (double u : {1e-6, 0.3, 1.0, 2.5, 17.0}) {
          CAPTURE(p);
          CAPTURE(c);
          CAPTURE(u);
          CHECK(eval_f(spec, -u) == -eval_f(spec, u));
          CHECK(eval_g(spec, -u) == eval_g(spec, u));
          CHECK(eval_F(spec, -u) == eval_F(spec, u));
          CHECK(eval_G(spec, -u) == eval_G(spec, u));
        }
      }
}

TEST_CASE("F' = f by centered differences") {
  const double h = 1e-5;
  for (int i = -1000; i <= 1000; ++i) {
    const double u = i * 0.01;
    const double fd = (eval_F(kDefault, u + h) - eval_F(kDefault, u - h)) / (2.0 * h);
    const double f = eval_f(kDefault, u);
    CAPTURE(u);
    if (std::abs(u) < 0.5)
      CHECK(std::abs(fd - f) <= 1e-8);
    else
      CHECK(rel(fd, f) <= 1e-6);
  }
}

TEST_CASE("G comparable to u^6 log(2 + u^2)") {
  for (int i = 0; i <= 3000; ++i) {
    const double u = std::pow(10.0, -3.0 + 6.0 * i / 3000.0);
    const double ratio = eval_G(kDefault, u) / (std::pow(u, 6) * std::log(2.0 + u * u));
    CAPTURE(u);
    CHECK(ratio >= kCompLo);
    CHECK(ratio <= kCompHi);
  }
}

TEST_CASE("defocusing g is nondecreasing and F, G are nonnegative") {
  double prev = eval_g(kDefault, 0.0);
  for (int i = 1; i <= 20000; ++i) {
    const double u = i * 1e-3;
    const double g = eval_g(kDefault, u);
    REQUIRE(g >= prev);
    prev = g;
    REQUIRE(eval_F(kDefault, u) >= 0.0);
    REQUIRE(eval_G(kDefault, u) >= 0.0);
  }
}

TEST_CASE("focusing flips signs") {
  const NonlinearitySpec foc{5, 1, -1, true};
  for (double u : {0.5, 2.0}) {
    CHECK(eval_f(foc, u) == -eval_f(kDefault, u));
    CHECK(eval_F(foc, u) == -eval_F(kDefault, u));
    CHECK(eval_G(foc, u) == -eval_G(kDefault, u));
  }
}

TEST_CASE("disabled nonlinearity is identically zero") {
  NonlinearitySpec off;
  off.enabled = false;
  for (double u : {-3.0, 0.0, 1.0, 1e50}) {
    CHECK(eval_f(off, u) == 0.0);
    CHECK(eval_g(off, u) == 0.0);
    CHECK(eval_F(off, u) == 0.0);
    CHECK(eval_G(off, u) == 0.0);
  }
}

TEST_CASE("quadrature fallback for other exponents") {
  // mpmath reference values
  CHECK(rel(eval_F({3, 1, 1, true}, 2.0), 6.0684255882441103119) < 1e-10);
  CHECK(rel(eval_F({7, 1, 1, true}, 1.5), 4.2605156955622940673) < 1e-10);
  // c = 0 is a pure power
  CHECK(rel(eval_F({5, 0, 1, true}, 2.0), 64.0 / 6.0) < 1e-12);
  CHECK(rel(eval_F({1, 0, 1, true}, 3.0), 4.5) < 1e-12);
}

TEST_CASE("huge inputs saturate to finite values") {
  const double big = std::numeric_limits<double>::max();
  for (double u : {1e59, 1e61, 1e200, big}) {
    CAPTURE(u);
    CHECK(std::isfinite(eval_f(kDefault, u)));
    CHECK(std::isfinite(eval_g(kDefault, u)));
    CHECK(std::isfinite(eval_F(kDefault, u)));
    CHECK(std::isfinite(eval_G(kDefault, u)));
    CHECK(eval_f(kDefault, -u) == -eval_f(kDefault, u));
  }
  CHECK(eval_f(kDefault, 1e200) == eval_f(kDefault, 1e61));
}

TEST_CASE("nonlinearity parameter validation") {
  CHECK_NOTHROW(kDefault.validate());
  CHECK_THROWS_AS((NonlinearitySpec{4, 1, 1, true}.validate()), Error);
  CHECK_THROWS_AS((NonlinearitySpec{-1, 1, 1, true}.validate()), Error);
  CHECK_THROWS_AS((NonlinearitySpec{5, 2, 1, true}.validate()), Error);
  CHECK_THROWS_AS((NonlinearitySpec{5, 1, 0, true}.validate()), Error);
}
