#include "zetacusp/heat_terms.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "zetacusp/even_polynomial.hpp"
#include "zetacusp/quadrature.hpp"
#include "zetacusp/rational.hpp"
#include "zetacusp/specfun.hpp"

namespace zetacusp {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_config(const ManifoldConfig& cfg) {
  if (cfg.n < 1) throw std::domain_error("ManifoldConfig: n must be >= 1");
  if (cfg.kappa < 1)
    throw std::domain_error("ManifoldConfig: kappa must be >= 1");
  if (!(cfg.volume > 0.0) || !std::isfinite(cfg.volume))
    throw std::domain_error("ManifoldConfig: volume must be positive");
  if (!(cfg.plancherel_scale > 0.0) || !std::isfinite(cfg.plancherel_scale))
    throw std::domain_error("ManifoldConfig: plancherel_scale must be positive");
  if (!std::isfinite(cfg.c_T1))
    throw std::domain_error("ManifoldConfig: c_T1 must be finite");
}

void check_time(double t) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw std::domain_error("heat terms require t > 0");
}

// tau_j = (kd/sqrt(pi)) (1 - 2^{2j-1}) B_{2j} (j-1)! / ((2j) (2j-1)!),
// the t^{j-1/2} coefficients of the digamma part of the cusp term.
double tau_coefficient(int j, double kd) {
  const auto& bern = BernoulliTable::standard();
  const Rational two_pow = rational_pow(Rational(2), 2 * static_cast<unsigned>(j) - 1);
  const Rational core = (Rational(1) - two_pow) * bern.b2k(static_cast<unsigned>(j)) *
                        factorial(static_cast<unsigned>(j - 1)) /
                        (Rational(2 * j) * factorial(2 * static_cast<unsigned>(j) - 1));
  return kd * to_double(core) / std::sqrt(kPi);
}

}  // namespace

std::vector<double> identity_coefficients(const ManifoldConfig& cfg) {
  check_config(cfg);
  const EvenPolynomial p = plancherel_from_c(cfg.n);
  std::vector<double> a(static_cast<std::size_t>(cfg.n) + 1, 0.0);
  const double sqrt_pi = std::sqrt(kPi);
  for (std::size_t k = 0; k < a.size(); ++k)
    a[k] = 2.0 * cfg.volume * cfg.plancherel_scale *
           to_double(p.coeff(k) * gamma_half_factor(static_cast<unsigned>(k))) *
           sqrt_pi;
  return a;
}

double identity_term(double t, const ManifoldConfig& cfg, Parity parity) {
  check_config(cfg);
  check_time(t);
  if (parity == Parity::odd) return 0.0;
  const EvenPolynomial p = plancherel_from_c(cfg.n);
  return 2.0 * cfg.volume * cfg.plancherel_scale * p.gaussian_integral(t);
}

HyperbolicTerm hyperbolic_term(double t, const LengthSpectrum& spectrum, int n,
                               Parity parity) {
  check_time(t);
  if (n < 1) throw std::domain_error("hyperbolic_term: n must be >= 1");
  HyperbolicTerm out;
  if (spectrum.empty()) return out;

  const bool even = parity == Parity::even;
  const int p = even ? 1 : 2;
  const Complex prefactor =
      even ? Complex(1.0 / std::sqrt(4.0 * kPi * t), 0.0)
           : Complex(0.0, 2.0 * kPi * std::pow(4.0 * kPi * t, -1.5));

  Complex sum(0.0, 0.0);
  double weight_max = 0.0;
  for (const auto& cls : spectrum.classes) {
    const double d = weight_D(cls, n);
    const double wj = 1.0 / (cls.primitive_index * d);
    const Complex chi = even ? std::conj(cls.chi_plus) + std::conj(cls.chi_minus)
                             : std::conj(cls.chi_plus) - std::conj(cls.chi_minus);
    sum += std::pow(cls.length, p) * wj * chi *
           std::exp(-cls.length * cls.length / (4.0 * t));
    weight_max = std::max(
        weight_max, wj * (std::abs(cls.chi_plus) + std::abs(cls.chi_minus)));
  }
  out.value = prefactor * sum;
  out.terms_used = spectrum.classes.size();

  // Majorize lengths L + k*c (k >= 1): each step multiplies the Gaussian by
  // at most e^{-L c / 2t} and the power of the length by at most 2^p.
  const double len_max = spectrum.max_length();
  const double len_min = spectrum.min_length();
  const double ratio = std::pow(2.0, p) * std::exp(-len_max * len_min / (2.0 * t));
  if (ratio >= 1.0) {
    out.tail_bound = std::numeric_limits<double>::infinity();
  } else {
    out.tail_bound = std::abs(prefactor) * weight_max *
                     std::pow(len_max, p) *
                     std::exp(-len_max * len_max / (4.0 * t)) * ratio /
                     (1.0 - ratio);
  }
  return out;
}

double unipotent_term(double t, const ManifoldConfig& cfg, Parity parity) {
  check_config(cfg);
  check_time(t);
  if (parity == Parity::odd) return 0.0;

  const UnipotentDensity ud = unipotent_density(cfg.n, cfg.kappa, cfg.c_T1);
  const double const_part =
      to_double(ud.psi1_coeff) * (-euler_gamma) + cfg.c_T1;
  double value = (ud.polynomial_part.gaussian_integral(t) +
                  const_part * std::sqrt(kPi / t)) /
                 kPi;

  // e^{-t lambda^2} < 1e-108 beyond the cutoff; the digamma factor grows
  // only logarithmically.
  const double cutoff = std::sqrt(250.0 / t);
  QuadratureOptions opts;
  opts.abs_tol = 1e-12;
  value += 2.0 / kPi *
           integrate([&](double lam) { return std::exp(-t * lam * lam) * ud.q_eval(lam); },
                     0.0, cutoff, opts);
  return value;
}

double HeatTraceExpansion::beta_at(int k) const {
  const int idx = k + n;
  if (idx < 0 || idx >= static_cast<int>(beta.size()))
    throw std::out_of_range("HeatTraceExpansion::beta_at: index outside table");
  return beta[static_cast<std::size_t>(idx)];
}

HeatTraceExpansion small_time_expansion(const ManifoldConfig& cfg,
                                        const LengthSpectrum& spectrum,
                                        int K) {
  check_config(cfg);
  if (K < 0 || K > 14)
    throw std::domain_error("small_time_expansion: K must be in [0, 14]");

  HeatTraceExpansion out;
  out.n = cfg.n;
  out.beta.assign(static_cast<std::size_t>(cfg.n + K + 1), 0.0);

  const std::vector<double> a = identity_coefficients(cfg);
  for (int k = 0; k <= cfg.n; ++k) out.beta[static_cast<std::size_t>(cfg.n - k)] += a[static_cast<std::size_t>(k)];

  const UnipotentDensity ud = unipotent_density(cfg.n, cfg.kappa, cfg.c_T1);
  const double sqrt_pi = std::sqrt(kPi);
  const auto& pc = ud.polynomial_part.coeffs();
  for (std::size_t j = 0; j < pc.size(); ++j) {
    const int idx = cfg.n - static_cast<int>(j);
    if (idx < 0)
      throw std::logic_error("small_time_expansion: cusp polynomial too long");
    out.beta[static_cast<std::size_t>(idx)] +=
        to_double(pc[j] * gamma_half_factor(static_cast<unsigned>(j))) * sqrt_pi / kPi;
  }

  const double kd = static_cast<double>(cfg.kappa) * static_cast<double>(1L << (cfg.n - 1));
  const double const_part = to_double(ud.psi1_coeff) * (-euler_gamma) + cfg.c_T1;
  out.beta[static_cast<std::size_t>(cfg.n)] +=
      const_part / sqrt_pi + kd * (euler_gamma + 2.0 * std::log(2.0)) / (2.0 * sqrt_pi);
  out.beta_log = kd / (2.0 * sqrt_pi);

  for (int j = 1; j <= K; ++j)
    out.beta[static_cast<std::size_t>(cfg.n + j)] += tau_coefficient(j, kd);

  out.gap = spectrum.empty() ? std::numeric_limits<double>::infinity()
                             : spectrum.min_length();
  return out;
}

}  // namespace zetacusp
