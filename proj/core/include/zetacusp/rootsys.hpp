#pragma once

#include <complex>
#include <vector>

#include "zetacusp/even_polynomial.hpp"
#include "zetacusp/rational.hpp"

namespace zetacusp {

// Root e_i + sign * e_j (i < j) in orthonormal coordinates e_1..e_{n+1}.
struct RootVector {
  int i;
  int j;
  int sign;
};

// Positive roots for Spin(2n+1,1): Sigma_M of type D_n on e_2..e_{n+1},
// Sigma_A = { e_1 +- e_j : j = 2..n+1 }.
struct RootDatum {
  int n;
  std::vector<RootVector> sigma_M;
  std::vector<RootVector> sigma_A;
};

RootDatum build_root_datum(int n);

// Weight entry: rational value, or the formal spectral coordinate
// ilambda_sign * i*lambda.
struct WeightEntry {
  Rational value;
  bool is_ilambda = false;
  int ilambda_sign = 1;
};

// Coordinates on e_1..e_{n+1}.
struct WeightVector {
  std::vector<WeightEntry> coords;
};

// i*lambda e_1 + sigma_{+-} + rho_{Sigma_M}; tail (n-1/2, ..., 3/2, +-1/2).
WeightVector lambda_sigma(int n, int sigma_sign);

WeightVector rho_sigma_m(int n);

WeightVector reflect(const WeightVector& w, const RootVector& alpha);

// Pairing w(H_alpha) = w_i + sign * w_j as (rational part, i*lambda coefficient).
struct Pairing {
  Rational constant;
  Rational ilambda_coeff;
  std::complex<double> eval(double lambda) const;
};

Pairing pair_root(const WeightVector& w, const RootVector& alpha);

// Product of w(H_alpha) over Sigma_M; even in lambda because factors combine
// over the +- pairs of D_n. Empty product (n = 1) is 1.
EvenPolynomial pi_product(const RootDatum& datum, const WeightVector& w);

// Exact Weyl dimension of sigma_{+-}; asserts agreement with 2^{n-1}.
long weyl_dimension(int n);

struct ReflectedProduct {
  int j;            // 2..n+1, position of the i*lambda entry after reflection
  Rational c_j;     // product of pairings not involving position j
  EvenPolynomial p_j;  // full product, degree 2(n-1)
};

// One entry per j = 2..n+1; empty for n = 1.
std::vector<ReflectedProduct> reflected_products(int n, int sigma_sign);

// weight * 2a / (lambda^2 + a^2)
struct PartialFractionTerm {
  Rational a;
  Rational weight;
};

struct PartialFractionSum {
  std::vector<PartialFractionTerm> terms;
  double eval(double lambda) const;
  std::complex<double> eval(std::complex<double> z) const;
};

PartialFractionSum r_sum(int n, int j);

// Exact product P * R; throws if a denominator of R does not divide P.
EvenPolynomial multiply_partial_fraction(const EvenPolynomial& p,
                                         const PartialFractionSum& r);

// Omega(sigma_{+-}, i lambda) =
//   quad_coeff * (psi(il - n + 1/2) + psi(-il - n + 1/2) + psi(il + 1/2) + psi(-il + 1/2))
//   + poly(lambda) + psi1_coeff * psi(1)
struct Omega {
  int n;
  Rational quad_coeff;   // -d(sigma+)/2
  EvenPolynomial poly;   // rational part of P^n, degree <= 2n-4
  Rational psi1_coeff;   // 2 d(sigma+)
  double eval(double lambda) const;
};

Omega omega(int n, int sigma_sign);

// Direct evaluation of the defining formula
// 2 d psi(1) - (1/2) sum_{alpha in Sigma_A} (Pi(s_alpha lambda_sigma)/Pi(rho))
//              (psi(1 + lambda_sigma(H_alpha)) + psi(1 - lambda_sigma(H_alpha))),
// used as the oracle for the assembled form.
std::complex<double> omega_direct(int n, int sigma_sign, double lambda);

// Checks sum over Sigma_A of Pi(s_alpha lambda_sigma) == 2 Pi(lambda_sigma)
// as an exact polynomial identity; throws on failure.
bool reflection_sum_identity(int n, int sigma_sign);

// (2n-1)!/(n-1)! * Gamma(i lambda + 1/2) / Gamma(i lambda + n + 1/2)
std::complex<double> harish_chandra_c(int n, std::complex<double> lambda);

// d/d(i lambda) log C = psi(i lambda + 1/2) - psi(i lambda + n + 1/2)
std::complex<double> harish_chandra_c_log_deriv(int n,
                                                std::complex<double> lambda);

// Monic even polynomial prod_{k=0}^{n-1} (lambda^2 + (k+1/2)^2), the
// Plancherel density up to a configured positive normalization.
EvenPolynomial plancherel_from_c(int n);

// P_U + Q with P_U = (kappa/2) P^n + c_T1 and
// Q = digamma_coefficient * (psi(i lambda + 1/2) + psi(-i lambda + 1/2)).
// The transcendental constant of P_U is kept split: polynomial_part holds the
// rational coefficients, psi1_coeff the multiple of psi(1), c_T1 the
// configured additive constant.
struct UnipotentDensity {
  int n;
  int kappa;
  EvenPolynomial polynomial_part;  // degree <= 2n-4
  Rational psi1_coeff;             // kappa * d(sigma+)
  double c_T1;
  Rational digamma_coefficient;    // -kappa * d(sigma+) / 2
  double polynomial_eval(double lambda) const;        // P_U(lambda)
  double polynomial_eval_imag(double s) const;        // P_U at lambda = i s
  double polynomial_integral_imag(double s) const;    // int_0^s P_U(i u) du
  double q_eval(double lambda) const;                 // Q(lambda)
  double eval(double lambda) const;                   // P_U + Q
};

UnipotentDensity unipotent_density(int n, int kappa, double c_T1);

// Unreduced Cor.-style assembly: c_T1 + (kappa/2) (Omega_direct(lambda)
// - d * sym log C' ) with the C-function log-derivative symmetrized in
// +-i lambda; equals P_U + Q identically.
double unipotent_density_unreduced(int n, int kappa, double c_T1,
                                   double lambda);

}  // namespace zetacusp
