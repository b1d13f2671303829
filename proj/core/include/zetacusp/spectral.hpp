#pragma once

#include <vector>

#include "zetacusp/heat_terms.hpp"
#include "zetacusp/scattering.hpp"
#include "zetacusp/specfun.hpp"

namespace zetacusp {

struct Eigenvalue {
  double lambda = 1.0;   // > 0
  int multiplicity = 1;  // >= 1
  int sign = 1;          // +1 or -1: which half of the point spectrum
};

// Spectral side of the trace formula: point spectrum, kernel dimension and
// the scattering model whose determinant drives the continuous part.
struct SpectralDatum {
  std::vector<Eigenvalue> eigenvalues;
  int kernel_dimension = 0;
  ScatteringModel scattering;
};

// Throws std::invalid_argument on nonpositive lambda, multiplicity < 1,
// sign outside {-1, +1}, negative kernel dimension, or scattering poles
// within 1e-6 of the imaginary axis (the trace integrals run along it).
void validate_datum(const SpectralDatum& datum);

// Trace integrand factors along the imaginary axis. Even combines both
// determinant blocks symmetrically and tends to d*(log p+ + log p-) at
// infinity; odd is the block difference and decays. Both are real.
double scattering_phase_even(const SpectralDatum& datum, double lambda);
double scattering_phase_odd(const SpectralDatum& datum, double lambda);

// Relative heat trace:
//   even: sum m e^{-t lambda^2} + h - (1/4pi) int e^{-t lambda^2} G(lambda)
//   odd:  sum sign m lambda e^{-t lambda^2}
//         - (1/4pi) int lambda e^{-t lambda^2} F(lambda)
// with G/F the even/odd scattering phases.
double relative_trace_spectral(double t, const SpectralDatum& datum,
                               Parity parity);

// |spectral side - (identity + geodesic + cusp)| at time t. Diagnostic:
// nonzero for generic synthetic data.
double selberg_consistency_residual(double t, const ManifoldConfig& cfg,
                                    const LengthSpectrum& spectrum,
                                    const SpectralDatum& datum, Parity parity);

// Resolvent-type transforms of the relative trace (closed forms, entire in
// the data, meromorphic in s):
//   even: 2s int_0^inf e^{-s^2 t} (even trace) dt
//       = 2h/s + sum 2 s m/(s^2+lambda^2) - (d/2)(log p+ + log p-)
//         + sum over block poles p: (d b/2) [1/(s-p) + 1/(s-conj p)]
//   odd: -2i int_0^inf e^{-s^2 t} (odd trace) dt
//       = -2i sum sign m lambda/(s^2+lambda^2)
//         -+ sum per block: (d b/2) [1/(s-p) - 1/(s-conj p)]
//         (minus sign on the plus block, plus on the minus block)
// The odd form is the logarithmic derivative at n+s of the geodesic product
// of odd type whenever the datum is trace-formula consistent.
Complex resolvent_trace_even(Complex s, const SpectralDatum& datum);
Complex resolvent_trace_odd(Complex s, const SpectralDatum& datum);

// Poles of the resolvent transforms with residues, for path planning and
// pole errors. Eigenvalue poles at +-i lambda, kernel pole at 0 (even),
// scattering poles at block pole locations and their conjugates.
PoleLedger resolvent_pole_ledger(const SpectralDatum& datum, Parity parity);

// Smoothed one-parameter family of test functions: profile g rises from 0
// to 1 across [gap, gap+width] with a C-infinity step.
struct TestFunction {
  double gap = 0.3;
  double width = 0.2;

  double g(double u) const;
  double g_prime(double u) const;
  // int_0^inf g'(u) e^{-a u} du; entire in a, equals 1 at a = 0.
  Complex laplace_g_prime(Complex a) const;
  // Fourier-Laplace transform of the profile against e^{-s|u|}:
  //   even: L[g'](s-i lam)/(s-i lam) + L[g'](s+i lam)/(s+i lam)
  //   odd:  difference of the same two terms
  Complex transform(Parity parity, double lambda, Complex s) const;
};

// Spectral side evaluated on the transform family, continued in s:
// eigenvalue and kernel terms through the integration-by-parts closed form,
// the scattering integral through its residue expansion; even parity
// subtracts the closed digamma term 2 kappa d psi(s+1/2). Throws
// PoleEvaluation on the family's pole set (odd: residue +sign*m at +-i
// lambda; even: +m at both; scattering: -+(d b) L[g'](s-q) pattern).
Complex spectral_log_deriv(Complex s, const SpectralDatum& datum, Parity parity,
                           const TestFunction& testfn);

// Same value by direct quadrature of the transform against the trace
// integrand; valid for Re s > 0 away from poles. Oracle for the continued
// assembly.
Complex spectral_log_deriv_direct(Complex s, const SpectralDatum& datum,
                                  Parity parity, const TestFunction& testfn);

// Small-time table from the geometric side merged with trace-level
// large-time coefficients from the scattering model:
// gamma[k] = -(1/4pi) * (odd model coefficient), gamma_prime likewise.
HeatTraceExpansion heat_trace_expansion(const ManifoldConfig& cfg,
                                        const LengthSpectrum& spectrum,
                                        const SpectralDatum& datum, int K = 2);

}  // namespace zetacusp
