#include "zetacusp/even_polynomial.hpp"
#include "zetacusp/rational.hpp"

#include <cmath>

#include "doctest.h"

using namespace zetacusp;

TEST_CASE("factorials and half-integer gamma factors are exact") {
  CHECK(factorial(0) == 1);
  CHECK(factorial(6) == 720);
  // Gamma(k+1/2) = gamma_half_factor(k) * sqrt(pi)
  CHECK(to_string(gamma_half_factor(0)) == "1");
  CHECK(to_string(gamma_half_factor(1)) == "1/2");
  CHECK(to_string(gamma_half_factor(2)) == "3/4");
  CHECK(to_string(gamma_half_factor(3)) == "15/8");
  CHECK(rational_pow(Rational(2, 3), 3) == Rational(8, 27));
}

TEST_CASE("even polynomial evaluation matches reference arithmetic") {
  // p(lambda) = 1 - 2 lambda^2 + 3 lambda^4
  const EvenPolynomial p({Rational(1), Rational(-2), Rational(3)});
  CHECK(p.degree() == 4);
  CHECK(p.eval(0.7) == doctest::Approx(0.7403).epsilon(1e-13));
  CHECK(p.eval_imag(0.7) == doctest::Approx(2.7003).epsilon(1e-13));
  CHECK(p.integral_imag(0.7) ==
        doctest::Approx(1.029508666666666666).epsilon(1e-13));
  // Reference quadrature of p against e^{-lambda^2/2} over the line.
  CHECK(p.gaussian_integral(0.5) ==
        doctest::Approx(20.053026197048004019).epsilon(1e-13));
  const std::complex<double> z(0.3, 0.4);
  const std::complex<double> z2 = z * z;
  CHECK(std::abs(p.eval(z) - (1.0 - 2.0 * z2 + 3.0 * z2 * z2)) < 1e-15);
}

TEST_CASE("even polynomial arithmetic is exact and trims") {
  const EvenPolynomial a({Rational(1), Rational(2)});
  const EvenPolynomial b({Rational(-1), Rational(-2)});
  CHECK((a + b).is_zero());
  CHECK((a + b).degree() == 0);
  const auto sq = EvenPolynomial::shifted_square(Rational(1, 4));
  CHECK(sq.coeff(0) == Rational(1, 4));
  CHECK(sq.coeff(1) == Rational(1));
  CHECK(sq.coeff(7) == Rational(0));
  const auto prod = sq * sq;
  CHECK(prod.coeff(0) == Rational(1, 16));
  CHECK(prod.coeff(1) == Rational(1, 2));
  CHECK(prod.coeff(2) == Rational(1));
  CHECK(prod == sq * sq);
  CHECK((sq * Rational(3)).coeff(1) == Rational(3));
}
