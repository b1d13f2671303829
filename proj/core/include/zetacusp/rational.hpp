#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

namespace zetacusp {

using Rational = boost::multiprecision::cpp_rational;

double to_double(const Rational& r);

std::string to_string(const Rational& r);

Rational rational_pow(const Rational& base, unsigned k);

Rational factorial(unsigned k);

// Rational factor of Gamma(k + 1/2) = gamma_half_factor(k) * sqrt(pi).
Rational gamma_half_factor(unsigned k);

}  // namespace zetacusp
