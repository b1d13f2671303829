#include "zetacusp/specfun.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace zetacusp {

namespace {

bool at_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

[[noreturn]] void throw_pole(Complex z, const char* what) {
  throw std::domain_error(std::string(what) + " has a pole at z = " +
                          std::to_string(static_cast<long long>(z.real())));
}

}  // namespace

const BernoulliTable& BernoulliTable::standard() {
  static const BernoulliTable table{{
      Rational(1, 6),
      Rational(-1, 30),
      Rational(1, 42),
      Rational(-1, 30),
      Rational(5, 66),
      Rational(-691, 2730),
      Rational(7, 6),
      Rational(-3617, 510),
      Rational(43867, 798),
      Rational(-174611, 330),
      Rational(854513, 138),
      Rational(-236364091LL, 2730),
      Rational(8553103, 6),
      Rational(-23749461029LL, 870),
      Rational(8615841276005LL, 14322),
  }};
  return table;
}

const Rational& BernoulliTable::b2k(unsigned k) const {
  if (k == 0 || k > values.size())
    throw std::range_error("BernoulliTable index out of range");
  return values[k - 1];
}

Complex digamma(Complex z) {
  if (at_nonpositive_integer(z)) throw_pole(z, "digamma");
  Complex acc = 0.0;
  while (z.real() < 10.0) {
    acc -= 1.0 / z;
    z += 1.0;
  }
  // psi(z) = log z - 1/(2z) - sum B_{2k} / (2k z^{2k}), order 8.
  const auto& bern = BernoulliTable::standard();
  const Complex z2 = z * z;
  Complex w = 1.0 / z2;
  Complex tail = 0.0;
  for (unsigned k = 1; k <= 8; ++k) {
    tail += to_double(bern.b2k(k)) / (2.0 * k) * w;
    w /= z2;
  }
  return acc + std::log(z) - 0.5 / z - tail;
}

Complex log_gamma(Complex z) {
  if (at_nonpositive_integer(z)) throw_pole(z, "log_gamma");
  Complex acc = 0.0;
  while (z.real() < 20.0) {
    acc -= std::log(z);
    z += 1.0;
  }
  const auto& bern = BernoulliTable::standard();
  const Complex z2 = z * z;
  Complex w = 1.0 / z;
  Complex tail = 0.0;
  for (unsigned k = 1; k <= 8; ++k) {
    tail += to_double(bern.b2k(k)) / (2.0 * k * (2.0 * k - 1.0)) * w;
    w /= z2;
  }
  constexpr double half_log_two_pi = 0.91893853320467274178032973640562;
  return acc + (z - 0.5) * std::log(z) - z + half_log_two_pi + tail;
}

Complex digamma_asymptotic(Complex z, int order) {
  if (std::abs(z) < 2.0)
    throw std::range_error("digamma_asymptotic requires |z| >= 2");
  const auto& bern = BernoulliTable::standard();
  if (order < 0 || static_cast<unsigned>(order) > bern.size())
    throw std::range_error("digamma_asymptotic order exceeds table");
  const Complex z2 = z * z;
  Complex w = 1.0 / z2;
  Complex tail = 0.0;
  for (int k = 1; k <= order; ++k) {
    tail += to_double(bern.b2k(static_cast<unsigned>(k))) / (2.0 * k) * w;
    w /= z2;
  }
  return std::log(z) + 0.5 / z - tail;
}

double gaussian_moment(double t, unsigned k) {
  if (t <= 0) throw std::domain_error("gaussian_moment requires t > 0");
  constexpr double sqrt_pi = 1.7724538509055160272981674833411;
  return to_double(gamma_half_factor(k)) * sqrt_pi *
         std::pow(t, -(static_cast<double>(k) + 0.5));
}

Complex laplace_heat(Complex s, double r, LaplaceKind kind) {
  if (s.real() <= 0)
    throw std::domain_error("laplace_heat: integral diverges for Re(s) <= 0");
  if (r < 0) throw std::domain_error("laplace_heat requires r >= 0");
  if (kind == LaplaceKind::half) return std::exp(-r * s) / (2.0 * s);
  if (r == 0)
    throw std::domain_error("laplace_heat three_half requires r > 0");
  constexpr double four_pi = 12.566370614359172953850573533118;
  return std::exp(-s * r) / (four_pi * r);
}

double cauchy_digamma_integral(double s) {
  if (s <= 0) throw std::domain_error("cauchy_digamma_integral requires s > 0");
  return digamma(Complex(s + 0.5, 0.0)).real() / (2.0 * s);
}

}  // namespace zetacusp
