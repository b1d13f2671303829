#pragma once

#include <cstddef>
#include <vector>

#include "zetacusp/geodesic.hpp"
#include "zetacusp/rootsys.hpp"

namespace zetacusp {

struct ManifoldConfig {
  int n = 1;
  int kappa = 1;
  double volume = 1.0;
  double plancherel_scale = 1.0;
  double c_T1 = 0.0;
};

enum class Parity { even, odd };

// Coefficients a_k of the identity term sum_{k=0}^n a_k t^{-k-1/2}:
// a_k = 2 vol scale c_k Gamma(k+1/2) with c_k the Plancherel coefficients.
std::vector<double> identity_coefficients(const ManifoldConfig& cfg);

// Identity contribution to the relative heat trace. Odd parity is exactly 0;
// even parity is the closed-form Gaussian integral of the Plancherel density.
double identity_term(double t, const ManifoldConfig& cfg, Parity parity);

struct HyperbolicTerm {
  Complex value{0.0, 0.0};
  double tail_bound = 0.0;
  std::size_t terms_used = 0;
};

// Geodesic sum of the relative heat trace:
//   even: (4 pi t)^{-1/2} sum l j^{-1} D^{-1} (conj chi+ + conj chi-) e^{-l^2/4t}
//   odd:  2 pi i (4 pi t)^{-3/2} sum l^2 j^{-1} D^{-1} (conj chi+ - conj chi-) e^{-l^2/4t}
// The bound covers a hypothetical continuation of the spectrum beyond its
// last length at gap spacing; infinite when that majorant does not contract.
HyperbolicTerm hyperbolic_term(double t, const LengthSpectrum& spectrum, int n,
                               Parity parity);

// Cusp contribution (1/pi) int e^{-t lambda^2} (P_U + Q) d lambda for even
// parity; exactly 0 for odd. Polynomial part in closed form, digamma part by
// adaptive quadrature.
double unipotent_term(double t, const ManifoldConfig& cfg, Parity parity);

struct HeatTraceExpansion {
  int n = 1;
  // beta[i] multiplies t^{(i-n)-1/2}, i = 0..n+K.
  std::vector<double> beta;
  double beta_log = 0.0;  // coefficient of t^{-1/2} log t
  // Trace-level large-time coefficients: the odd trace decays like
  // sum gamma[k] t^{-(k+3/2)}, the even trace minus h like
  // sum gamma_prime[k] t^{-(k+1/2)}.
  std::vector<double> gamma;
  std::vector<double> gamma_prime;
  double gap = 0.0;  // smallest geodesic length; +inf for empty spectra

  double beta_at(int k) const;  // k in [-n, K]
  int max_index() const { return static_cast<int>(beta.size()) - n - 1; }
};

// Small-time structure of I + H + U: identity and unipotent power laws plus
// the t^{-1/2} log t coefficient; the geodesic sum adds only e^{-gap^2/4t}
// terms and no power law. Coefficients for k = -n..K.
HeatTraceExpansion small_time_expansion(const ManifoldConfig& cfg,
                                        const LengthSpectrum& spectrum,
                                        int K = 2);

}  // namespace zetacusp
