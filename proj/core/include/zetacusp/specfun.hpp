#pragma once

#include <complex>
#include <vector>

#include "zetacusp/rational.hpp"

namespace zetacusp {

using Complex = std::complex<double>;

inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

struct BernoulliTable {
  // B_2, B_4, ..., B_{2K}; exact rationals, alternating signs.
  std::vector<Rational> values;
  static const BernoulliTable& standard();
  // B_{2k}, 1-based k.
  const Rational& b2k(unsigned k) const;
  unsigned size() const { return static_cast<unsigned>(values.size()); }
};

// Logarithmic derivative of Gamma. Throws std::domain_error at nonpositive
// integers. Relative error <= 1e-12 for |z| <= 1e3.
Complex digamma(Complex z);

// Principal-branch log Gamma, continuous along paths avoiding the negative
// real axis; exp(log_gamma(z)) == Gamma(z).
Complex log_gamma(Complex z);

// Asymptotic expansion of psi(z+1): log z + 1/(2z) - sum_{k<=order} B_{2k}/(2k z^{2k}).
// Requires |z| >= 2 and order <= table size; error bounded by the first
// omitted term.
Complex digamma_asymptotic(Complex z, int order);

// Integral over the real line of lambda^{2k} e^{-t lambda^2} = Gamma(k+1/2) t^{-k-1/2}.
double gaussian_moment(double t, unsigned k);

enum class LaplaceKind { half, three_half };

// kind three_half: integral over t in (0,inf) of e^{-s^2 t} e^{-r^2/4t} (4 pi t)^{-3/2} dt
//                  = e^{-s r} / (4 pi r), r > 0.
// kind half:       integral of (4 pi t)^{-1/2} e^{-(r^2/4t + t s^2)} dt
//                  = e^{-r s} / (2 s), r >= 0.
// Requires Re(s) > 0.
Complex laplace_heat(Complex s, double r, LaplaceKind kind);

// (1/2pi) * integral over lambda of psi(i lambda + 1/2) / (lambda^2 + s^2) dlambda
// = psi(s + 1/2) / (2 s), s > 0. Returns the closed form.
double cauchy_digamma_integral(double s);

}  // namespace zetacusp
