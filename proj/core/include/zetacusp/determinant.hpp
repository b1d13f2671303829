#pragma once

#include "zetacusp/zeta_functions.hpp"

namespace zetacusp {

enum class DetRoute { mellin, product };

// log Det(D^2 + s^2) of the relative spectral problem.
//   mellin: -zeta'(0) of the relative trace with the e^{-t s^2} factor,
//     assembled from the exact zeta(0) value, a truncated power series and
//     two log-substituted quadratures. Needs s > 0 and both determinant block
//     constants equal to 1 (the even phase must decay at infinity).
//   product: even-type product times the Gamma and identity/cusp corrections,
//     with the constant fixed against the mellin route at s_ref = 1. The
//     product's log increment is the geodesic series when spectrum is
//     nonempty, else the spectral continuation anchored at s_ref.
double regularized_determinant(double s, const SpectralDatum& datum,
                               const ManifoldConfig& cfg,
                               const LengthSpectrum& spectrum, DetRoute route);

// Complex-capable mellin evaluation; requires Re(s^2) > 0.
Complex log_det_mellin(Complex s, const SpectralDatum& datum);

// Implied product-route constant log C at shift s. Constant in s exactly when
// the datum satisfies the even trace identity; the grid spread is a test.
double det_product_constant(double s, const SpectralDatum& datum,
                            const ManifoldConfig& cfg);

// |(1/2s) d/ds log Z_U - U(1,s)| with the right side an honest quadrature of
// the cusp term (power-law monomials above t^{-1/2} subtracted and restored
// through their reflected Mellin values).
double z_u_identity_residual(double s, const ManifoldConfig& cfg);

// Same check for the identity factor Z_I against the Plancherel polynomial.
double z_i_identity_residual(double s, const ManifoldConfig& cfg);

// |quadrature of e^{-t s^2} against the even geodesic term - (1/2s) d/ds
// log Z^e(n+s)|; exact identity via the heat-kernel Laplace transform.
double h_factor_identity_residual(double s, const LengthSpectrum& spectrum,
                                  int n);

struct FeReport {
  Complex lhs{0.0, 0.0};
  Complex rhs{0.0, 0.0};
  double residual = 0.0;
};

// Odd functional equation: product of the odd zeta values at n +- s against
// exp(2 pi i eta) times the determinant ratio. The left side is anchored at
// log Z^o(n) = i pi eta (zeta route) and continued along a pole-dodging path;
// the right side uses the heat-route eta, so s = 0 reduces to the two-route
// eta comparison. Throws PoleEvaluation near the odd ledger or its mirror.
FeReport verify_fe_odd(Complex s, const SpectralDatum& datum);

// Even functional equation as a two-point ratio between s and s0 = 0.7:
// Delta = 2 Delta log Det + d Delta log det C+ C- - int [W(u) - W(-u)] du
// + 2 kappa d Delta [lgGamma(s+1/2) + lgGamma(1/2-s)], which vanishes
// identically; residual = |exp(Delta) - 1|. Branch jumps of the principal
// logs are multiples of 2 pi i and cancel under exp.
FeReport verify_fe_even(Complex s, const SpectralDatum& datum,
                        const ManifoldConfig& cfg);

}  // namespace zetacusp
