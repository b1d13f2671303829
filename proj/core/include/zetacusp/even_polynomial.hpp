#pragma once

#include <complex>
#include <vector>

#include "zetacusp/rational.hpp"

namespace zetacusp {

// Polynomial in lambda with only even powers; coefficient k multiplies
// lambda^{2k}. All arithmetic is exact rational.
class EvenPolynomial {
 public:
  EvenPolynomial() = default;
  explicit EvenPolynomial(std::vector<Rational> coeffs);

  static EvenPolynomial constant(const Rational& c);
  // lambda^2 + a
  static EvenPolynomial shifted_square(const Rational& a);

  bool is_zero() const;
  // Degree in lambda (0 for constants, including the zero polynomial).
  int degree() const;
  const std::vector<Rational>& coeffs() const { return c_; }
  Rational coeff(std::size_t k) const;

  EvenPolynomial operator+(const EvenPolynomial& o) const;
  EvenPolynomial operator-(const EvenPolynomial& o) const;
  EvenPolynomial operator*(const EvenPolynomial& o) const;
  EvenPolynomial operator*(const Rational& s) const;
  bool operator==(const EvenPolynomial& o) const;

  double eval(double lambda) const;
  std::complex<double> eval(std::complex<double> z) const;
  // Value at z = i*s for real s: sum c_k (-1)^k s^{2k}.
  double eval_imag(double s) const;
  // Integral over [0, s] of eval_imag: sum c_k (-1)^k s^{2k+1}/(2k+1).
  double integral_imag(double s) const;
  // Integral over the real line against e^{-t lambda^2}:
  // sum c_k Gamma(k+1/2) t^{-k-1/2}, t > 0.
  double gaussian_integral(double t) const;

 private:
  void trim();
  std::vector<Rational> c_;
};

}  // namespace zetacusp
