#include "zetacusp/quadrature.hpp"
#include "zetacusp/specfun.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "doctest.h"

using namespace zetacusp;

namespace {
constexpr double kPi = 3.14159265358979323846;
double cd(Complex a, Complex b) { return std::abs(a - b); }
}  // namespace

TEST_CASE("bernoulli table holds the exact rationals") {
  const auto& table = BernoulliTable::standard();
  REQUIRE(table.size() >= 4);
  CHECK(table.b2k(1) == Rational(1, 6));
  CHECK(table.b2k(2) == Rational(-1, 30));
  CHECK(table.b2k(3) == Rational(1, 42));
  CHECK(table.b2k(4) == Rational(-1, 30));
}

TEST_CASE("digamma against reference values and identities") {
  // mpmath, 25 digits
  CHECK(cd(digamma(Complex(0.3, 0.7)),
           Complex(-0.4472079202995610986836164, 1.8918108552185266282086208)) <
        1e-13);
  CHECK(std::abs(digamma(Complex(1.0, 0.0)).real() + euler_gamma) < 1e-14);
  for (const Complex z : {Complex(0.2, 0.0), Complex(0.9, -2.0),
                          Complex(3.7, 0.4), Complex(0.1, 12.0)}) {
    CHECK(cd(digamma(z + 1.0), digamma(z) + 1.0 / z) < 1e-12);
    // duplication: psi(2z) = psi(z)/2 + psi(z+1/2)/2 + log 2
    CHECK(cd(digamma(2.0 * z),
             0.5 * digamma(z) + 0.5 * digamma(z + 0.5) + std::log(2.0)) <
          1e-12);
    CHECK(cd(digamma(std::conj(z)), std::conj(digamma(z))) < 1e-14);
  }
  CHECK_THROWS_AS(digamma(Complex(0.0, 0.0)), std::domain_error);
  CHECK_THROWS_AS(digamma(Complex(-3.0, 0.0)), std::domain_error);
}

TEST_CASE("log_gamma against reference values and the reflection formula") {
  CHECK(cd(log_gamma(Complex(2.5, -1.3)),
           Complex(-0.1063040956729685044831535, -0.9922582256437685517484468)) <
        1e-13);
  CHECK(std::abs(log_gamma(Complex(1.0, 0.0))) < 1e-14);
  CHECK(std::abs(log_gamma(Complex(2.0, 0.0))) < 1e-14);
  for (const Complex z : {Complex(0.3, 0.4), Complex(0.8, -0.2)}) {
    const Complex lhs = std::exp(log_gamma(z) + log_gamma(1.0 - z));
    CHECK(cd(lhs, kPi / std::sin(kPi * z)) < 1e-12);
  }
  for (const Complex z : {Complex(1.3, 0.9), Complex(4.2, -2.0)})
    CHECK(cd(std::exp(log_gamma(z + 1.0) - log_gamma(z)), z) < 1e-12);
}

TEST_CASE("asymptotic digamma agrees with the full evaluation far out") {
  // the expansion targets psi(z + 1)
  for (const Complex z : {Complex(25.0, 3.0), Complex(40.0, -11.0)})
    CHECK(cd(digamma_asymptotic(z, 6), digamma(z + 1.0)) < 1e-13);
}

TEST_CASE("gaussian moments") {
  // Gamma(7/2) * 0.7^{-7/2}
  CHECK(gaussian_moment(0.7, 3) ==
        doctest::Approx(11.58065352401889908864).epsilon(1e-13));
  CHECK(gaussian_moment(2.0, 0) ==
        doctest::Approx(std::sqrt(kPi / 2.0)).epsilon(1e-13));
}

TEST_CASE("heat kernel Laplace transforms, frozen quadrature references") {
  const Complex s(0.9, 0.3);
  const double r = 1.4;
  CHECK(cd(laplace_heat(s, r, LaplaceKind::half),
           Complex(0.1102235281763777542135123, -0.1009983395908579710052934)) <
        1e-13);
  CHECK(cd(laplace_heat(s, r, LaplaceKind::three_half),
           Complex(0.0147219092256121908588003, -0.0065744004890523078270033)) <
        1e-13);
  // r = 0 keeps the half kind finite: 1/(2s)
  CHECK(cd(laplace_heat(s, 0.0, LaplaceKind::half), 1.0 / (2.0 * s)) < 1e-13);
  CHECK_THROWS_AS(laplace_heat(Complex(-1.0, 0.0), 1.0, LaplaceKind::half),
                  std::domain_error);
}

TEST_CASE("cauchy digamma integral closed form") {
  CHECK(cauchy_digamma_integral(0.8) ==
        doctest::Approx(-0.1057443055417497847695).epsilon(1e-12));
  for (double s : {0.3, 1.1, 2.6})
    CHECK(cauchy_digamma_integral(s) ==
          doctest::Approx(digamma(Complex(s + 0.5, 0.0)).real() / (2.0 * s))
              .epsilon(1e-13));
}

TEST_CASE("adaptive quadrature on finite, infinite and polyline domains") {
  QuadratureOptions opts{1e-12, 16};
  CHECK(integrate([](double x) { return std::exp(-x); }, 0.0, 10.0, opts) ==
        doctest::Approx(1.0 - std::exp(-10.0)).epsilon(1e-12));
  CHECK(integrate([](double x) { return std::exp(-x * x); },
                  -std::numeric_limits<double>::infinity(),
                  std::numeric_limits<double>::infinity(),
                  opts) == doctest::Approx(std::sqrt(kPi)).epsilon(1e-10));
  const Complex line = integrate_complex(
      [](double x) { return std::exp(Complex(0.0, x)); }, 0.0, kPi / 2.0,
      opts);
  CHECK(cd(line, Complex(1.0, 1.0)) < 1e-12);
  // polyline 0 -> 1 -> 1+i of z^2 equals the closed path integral value
  const Complex poly = integrate_polyline(
      [](Complex z) { return z * z; },
      {Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(1.0, 1.0)}, opts);
  const Complex endpoint(1.0, 1.0);
  CHECK(cd(poly, endpoint * endpoint * endpoint / 3.0) < 1e-12);
}
