#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

#include "zetacusp/geodesic.hpp"
#include "zetacusp/heat_terms.hpp"
#include "zetacusp/scattering.hpp"
#include "zetacusp/spectral.hpp"

namespace zetacusp {

struct ZetaEvaluation {
  Complex value{1.0, 0.0};
  Complex exponent{0.0, 0.0};  // log of value as summed, before exp
  std::size_t terms_used = 0;
  double tail_bound = 0.0;  // bound on the absolute error of value
};

class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double abscissa);
  double abscissa() const { return abscissa_; }

 private:
  double abscissa_;
};

// Growth estimate for the geodesic series: max over classes of
// log((k+1) max(1, w_k)) / l_k with w_k = j^{-1} |det factor|^{-1}
// (|chi+| + |chi-|). Zero for empty spectra.
double series_abscissa(const LengthSpectrum& spectrum);

// Geodesic products: exponent -sum j^{-1} |det factor|^{-1}
// (conj chi+ -+ conj chi-) e^{-s l}; value = exp(exponent). Below the
// abscissa estimate -> ConvergenceError. Empty spectra give 1 everywhere.
ZetaEvaluation zeta_odd(Complex s, const LengthSpectrum& spectrum, int n);
ZetaEvaluation zeta_even(Complex s, const LengthSpectrum& spectrum, int n);

// d/ds of the corresponding exponentiated product at s:
// +sum l j^{-1} |det factor|^{-1} (conj chi+ -+ conj chi-) e^{-s l}.
ZetaEvaluation zeta_log_deriv(Complex s, const LengthSpectrum& spectrum, int n,
                              Parity parity);

enum class EtaRoute { heat, zeta };

// Heat route: (1/sqrt pi) int_0^inf t^{-1/2} (odd trace) dt, split at t=1
// with log substitutions; the integrand is spectral when datum is given,
// geodesic otherwise. Zeta route: (1/pi i) log of the odd product at n via
// the series when a spectrum is given, else -(1/pi i) int_0^inf of the odd
// resolvent trace (exact rational tail beyond the quadrature window).
Complex eta_invariant(const SpectralDatum* datum,
                      const LengthSpectrum* spectrum, int n, EtaRoute route);

struct MellinPiece {
  Complex value{0.0, 0.0};
  bool converges = false;
};

// Mellin transforms of the relative traces split at t = 1, divided by the
// Gamma factors. Windows: eta small Re z > -1, eta large Re z < 2 (they
// overlap), zeta small Re z > n + 1/2, zeta large Re z < 1/2.
struct EtaZetaValue {
  MellinPiece eta_small, eta_large;
  MellinPiece zeta_small, zeta_large;
};

EtaZetaValue eta_zeta_values(Complex z, const SpectralDatum& datum);

struct EtaZetaLedgers {
  PoleLedger eta;
  PoleLedger zeta;
};

// Pole tables of the continued transforms, assembled from the small-time
// expansion (beta side) and the trace-level large-time coefficients (gamma
// side). gamma_weighted=true describes Gamma((z+1)/2) eta(z) and
// Gamma(z) zeta(z): eta poles at z = 2k+2 with residue -2 gamma_k; zeta
// poles at z = k+1/2 (residue beta_{-k} - gamma'_k), the kernel pole -h at
// z = 0, a double pole at 1/2 recorded as two entries (order 2 leading
// coefficient -beta'_0, order 1 residue beta_0 - gamma'_0), and z = 1/2-k
// with residue beta_k. gamma_weighted=false divides by the Gamma factors:
// the kernel entry cancels against the zero of 1/Gamma and no entry can
// appear at z = 0.
EtaZetaLedgers eta_zeta_ledgers(const HeatTraceExpansion& expansion,
                                int kernel_dimension,
                                bool gamma_weighted = false);

}  // namespace zetacusp
