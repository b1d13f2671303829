#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "zetacusp/specfun.hpp"

namespace zetacusp {

struct ScatteringPole {
  Complex q;  // Re(q) < 0
  int order = 1;
};

// One Blaschke-type determinant factor:
//   det C_b(z) = base * p_const^z * prod_k ((z + conj(q_k)) / (z - q_k))^{order_k}
struct ScatteringBlock {
  std::vector<ScatteringPole> poles;
  double p_const = 1.0;
  Complex base{1.0, 0.0};
};

struct ScatteringModel {
  int kappa = 1;
  int n = 1;
  ScatteringBlock plus;
  ScatteringBlock minus;
  bool minus_specified = true;

  // d = 2^{n-1}, the half-spin dimension carried by every trace combination.
  long d() const { return 1L << (n - 1); }
};

enum class Block { plus, minus, phi, psi };

struct PoleLedgerEntry {
  Complex location;
  int order = 1;
  Complex residue;
  std::string source;
};

struct PoleLedger {
  std::vector<PoleLedgerEntry> entries;
};

class PoleEvaluation : public std::runtime_error {
 public:
  PoleEvaluation(const PoleLedgerEntry& entry, const std::string& what);
  const PoleLedgerEntry& entry() const { return entry_; }

 private:
  PoleLedgerEntry entry_;
};

// Raw model text: keys kappa, n, block plus|minus, p_const, base re im,
// pole re im order. Values round-trip at 17 significant digits.
ScatteringModel parse_scattering_model(std::istream& in);
ScatteringModel load_scattering_model(const std::string& path);
std::string serialize_scattering_model(const ScatteringModel& model);

// Validates ranges, merges duplicate poles, closes each pole set under
// conjugation, derives the minus block from det C-(z) = 1/det C+(-z) when
// absent, and checks |det C+(s) det C-(-s) - 1| <= 1e-12 on a strip grid.
ScatteringModel build_model(const ScatteringModel& raw);

Complex det_value(const ScatteringBlock& block, Complex z);

// d/dz log det C_b(z) = log p_b - sum_k order_k 2Re(q_k)/((z-q_k)(z+conj(q_k))).
// phi = plus - minus, psi = plus + minus. No dimension factor: callers that
// model tr or tr_s multiply by d(). Throws PoleEvaluation at poles and zeros.
Complex log_deriv_det(const ScatteringModel& model, Block block, Complex z);

struct TaylorCoeffs {
  // F(lambda) = d * (phi log-derivative at i lambda) = sum f[k] lambda^{2k+1};
  // G(lambda) = d * (psi log-derivative at i lambda) = sum g[k] lambda^{2k}.
  std::vector<double> f;  // size K
  std::vector<double> g;  // size K + 1
  double parity_residual = 0.0;
};

// Central differences with Richardson extrapolation on parity-projected
// samples; stencil radius stays below half the distance to the nearest pole.
// K <= 4. Throws range_error when a pole sits within 1e-3 of the origin and
// invalid_argument when the sampled functions break the F-odd / G-even
// parity beyond 1e-9 of their scale.
TaylorCoeffs taylor_coeffs(const ScatteringModel& model, int K);

struct LargeTimeCoeffs {
  std::vector<double> gamma;        // size K: coefficients of t^{-(k+3/2)}
  std::vector<double> gamma_prime;  // size K + 1: coefficients of t^{-(k+1/2)}
};

// gamma_k = f_{2k+1} Gamma(k+3/2), gamma'_k = g_{2k} Gamma(k+1/2); both lists
// validated inside the call against quadrature of the defining integrals over
// [-1,1] at t = 100 (1e-6 relative) and t = 10 (first-omitted-term allowance).
LargeTimeCoeffs large_time_coeffs(const ScatteringModel& model, int K);

struct ModelEisenstein {
  int n = 1;
  double lambda = 0.0;
  int section_sign = 1;
  Complex incoming_coeff{1.0, 0.0};  // coefficient of e^{(n - i lambda) r}
  Complex outgoing_coeff{1.0, 0.0};  // coefficient of e^{(n + i lambda) r}
  Complex scattering_value{1.0, 0.0};
};

ModelEisenstein model_eisenstein(const ScatteringModel& model, double lambda,
                                 int section_sign);

struct MaassSelbergResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};

// Cylinder check for kappa = 1 scalar models with p = 1, base = 1 and at
// most one (real) plus-block pole: lhs integrates the model section mass over
// [0, R], rhs = 2R + g_plus(i lambda); the gap decays like e^{-2|Re q| R}.
// lambda = 0 is rejected.
MaassSelbergResult maass_selberg_check(const ScatteringModel& model,
                                       double lambda, double R);

enum class LedgerVariant { odd, even };

// Residues of the continued scattering terms: odd variant +d b (plus block),
// -d b (minus block); even variant +d b for both. Entries sorted by location.
PoleLedger pole_ledger(const ScatteringModel& model,
                       LedgerVariant variant = LedgerVariant::odd);

}  // namespace zetacusp
