#include "zetacusp/rational.hpp"

namespace zetacusp {

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) { return r.str(); }

Rational rational_pow(const Rational& base, unsigned k) {
  Rational out = 1;
  for (unsigned i = 0; i < k; ++i) out *= base;
  return out;
}

Rational factorial(unsigned k) {
  Rational out = 1;
  for (unsigned i = 2; i <= k; ++i) out *= i;
  return out;
}

Rational gamma_half_factor(unsigned k) {
  // Gamma(k+1/2) = (2k-1)!! / 2^k * sqrt(pi)
  Rational out = 1;
  for (unsigned i = 1; i <= k; ++i) out *= Rational(2 * i - 1, 2);
  return out;
}

}  // namespace zetacusp
