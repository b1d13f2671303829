#include "zetacusp/even_polynomial.hpp"

#include <cmath>
#include <stdexcept>

#include "zetacusp/specfun.hpp"

namespace zetacusp {

EvenPolynomial::EvenPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
  trim();
}

EvenPolynomial EvenPolynomial::constant(const Rational& c) {
  return EvenPolynomial({c});
}

EvenPolynomial EvenPolynomial::shifted_square(const Rational& a) {
  return EvenPolynomial({a, 1});
}

void EvenPolynomial::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

bool EvenPolynomial::is_zero() const { return c_.empty(); }

int EvenPolynomial::degree() const {
  return c_.empty() ? 0 : 2 * static_cast<int>(c_.size() - 1);
}

Rational EvenPolynomial::coeff(std::size_t k) const {
  return k < c_.size() ? c_[k] : Rational(0);
}

EvenPolynomial EvenPolynomial::operator+(const EvenPolynomial& o) const {
  std::vector<Rational> out(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = coeff(k) + o.coeff(k);
  return EvenPolynomial(std::move(out));
}

EvenPolynomial EvenPolynomial::operator-(const EvenPolynomial& o) const {
  std::vector<Rational> out(std::max(c_.size(), o.c_.size()), Rational(0));
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = coeff(k) - o.coeff(k);
  return EvenPolynomial(std::move(out));
}

EvenPolynomial EvenPolynomial::operator*(const EvenPolynomial& o) const {
  if (c_.empty() || o.c_.empty()) return EvenPolynomial();
  std::vector<Rational> out(c_.size() + o.c_.size() - 1, Rational(0));
  for (std::size_t i = 0; i < c_.size(); ++i)
    for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
  return EvenPolynomial(std::move(out));
}

EvenPolynomial EvenPolynomial::operator*(const Rational& s) const {
  std::vector<Rational> out = c_;
  for (auto& v : out) v *= s;
  return EvenPolynomial(std::move(out));
}

bool EvenPolynomial::operator==(const EvenPolynomial& o) const {
  return c_ == o.c_;
}

double EvenPolynomial::eval(double lambda) const {
  const double x = lambda * lambda;
  double out = 0.0;
  for (std::size_t k = c_.size(); k-- > 0;) out = out * x + to_double(c_[k]);
  return out;
}

std::complex<double> EvenPolynomial::eval(std::complex<double> z) const {
  const std::complex<double> x = z * z;
  std::complex<double> out = 0.0;
  for (std::size_t k = c_.size(); k-- > 0;) out = out * x + to_double(c_[k]);
  return out;
}

double EvenPolynomial::eval_imag(double s) const {
  const double x = -s * s;
  double out = 0.0;
  for (std::size_t k = c_.size(); k-- > 0;) out = out * x + to_double(c_[k]);
  return out;
}

double EvenPolynomial::integral_imag(double s) const {
  const double x = -s * s;
  double out = 0.0;
  double pw = s;
  for (std::size_t k = 0; k < c_.size(); ++k) {
    out += to_double(c_[k]) * pw / static_cast<double>(2 * k + 1);
    pw *= x;
  }
  return out;
}

double EvenPolynomial::gaussian_integral(double t) const {
  if (t <= 0) throw std::domain_error("gaussian_integral requires t > 0");
  double out = 0.0;
  for (std::size_t k = 0; k < c_.size(); ++k)
    out += to_double(c_[k]) * gaussian_moment(t, static_cast<unsigned>(k));
  return out;
}

}  // namespace zetacusp
