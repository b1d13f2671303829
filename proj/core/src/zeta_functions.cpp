#include "zetacusp/zeta_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "zetacusp/quadrature.hpp"

namespace zetacusp {
namespace {

constexpr double kPi = 3.14159265358979323846;

double class_weight(const GeodesicClass& c) {
  return (std::abs(c.chi_plus) + std::abs(c.chi_minus)) /
         (c.primitive_index * c.ad_det_factor);
}

Complex class_character(const GeodesicClass& c, Parity parity) {
  const Complex a = std::conj(c.chi_plus);
  const Complex b = std::conj(c.chi_minus);
  return parity == Parity::odd ? a - b : a + b;
}

void check_rank(int n) {
  if (n < 1) throw std::invalid_argument("rank must be at least 1");
}

// 1/Gamma(z), entire; reflection keeps it finite at the poles of Gamma.
Complex inv_gamma(Complex z) {
  if (z.real() >= 0.5) return std::exp(-log_gamma(z));
  return std::sin(kPi * z) * std::exp(log_gamma(1.0 - z)) / kPi;
}

ZetaEvaluation series_core(Complex s, const LengthSpectrum& spectrum, int n,
                           Parity parity, bool derivative) {
  check_rank(n);
  ZetaEvaluation out;
  if (spectrum.empty()) {
    out.value = derivative ? Complex(0.0, 0.0) : Complex(1.0, 0.0);
    return out;
  }
  const double abscissa = series_abscissa(spectrum);
  if (s.real() <= abscissa) {
    throw ConvergenceError(
        "geodesic series diverges at Re s <= " + std::to_string(abscissa),
        abscissa);
  }
  Complex sum{0.0, 0.0};
  double w_max = 0.0;
  for (const auto& c : spectrum.classes) {
    const double inv = 1.0 / (c.primitive_index * c.ad_det_factor);
    w_max = std::max(w_max, class_weight(c));
    Complex term = inv * class_character(c, parity) * std::exp(-s * c.length);
    if (derivative) term *= c.length;
    sum += term;
  }
  const double delta = s.real() - abscissa;
  const double last = spectrum.max_length();
  out.terms_used = spectrum.classes.size();
  if (derivative) {
    out.value = sum;
    out.exponent = sum;
    out.tail_bound =
        w_max * (last / delta + 1.0 / (delta * delta)) * std::exp(-delta * last);
  } else {
    out.exponent = -sum;
    out.value = std::exp(out.exponent);
    const double exp_tail = w_max * std::exp(-delta * last) / delta;
    out.tail_bound = std::abs(out.value) * std::expm1(exp_tail);
  }
  return out;
}

// Exact integral of the odd resolvent trace over (U, inf) on the real axis.
Complex odd_resolvent_tail(double U, const SpectralDatum& datum) {
  Complex tail{0.0, 0.0};
  for (const auto& ev : datum.eigenvalues) {
    tail += Complex(0.0, -2.0 * ev.sign * ev.multiplicity) *
            (kPi / 2.0 - std::atan(U / ev.lambda));
  }
  const double d = static_cast<double>(datum.scattering.d());
  const ScatteringBlock* blocks[2] = {&datum.scattering.plus,
                                      &datum.scattering.minus};
  for (int bi = 0; bi < 2; ++bi) {
    const double block_sign = bi == 0 ? 1.0 : -1.0;
    for (const auto& p : blocks[bi]->poles) {
      const Complex ratio = (U - p.q) / (U - std::conj(p.q));
      tail += block_sign * 0.5 * d * p.order * std::log(ratio);
    }
  }
  return tail;
}

Complex eta_heat_route(const SpectralDatum* datum,
                       const LengthSpectrum* spectrum, int n) {
  QuadratureOptions opts{1e-11, 18};
  if (datum != nullptr) {
    auto small = [&](double u) {
      return std::exp(-0.5 * u) *
             relative_trace_spectral(std::exp(-u), *datum, Parity::odd);
    };
    auto large = [&](double u) {
      return std::exp(0.5 * u) *
             relative_trace_spectral(std::exp(u), *datum, Parity::odd);
    };
    const double v = integrate(small, 0.0, 80.0, opts) +
                     integrate(large, 0.0, 45.0, opts);
    return Complex(v / std::sqrt(kPi), 0.0);
  }
  auto small = [&](double u) {
    return std::exp(-0.5 * u) *
           hyperbolic_term(std::exp(-u), *spectrum, n, Parity::odd).value;
  };
  auto large = [&](double u) {
    return std::exp(0.5 * u) *
           hyperbolic_term(std::exp(u), *spectrum, n, Parity::odd).value;
  };
  return (integrate_complex(small, 0.0, 80.0, opts) +
          integrate_complex(large, 0.0, 45.0, opts)) /
         std::sqrt(kPi);
}

Complex eta_zeta_route(const SpectralDatum* datum,
                       const LengthSpectrum* spectrum, int n) {
  Complex log_odd;
  if (spectrum != nullptr) {
    log_odd = zeta_odd(Complex(static_cast<double>(n), 0.0), *spectrum, n)
                  .exponent;
  } else {
    double scale = 1.0;
    for (const auto& ev : datum->eigenvalues)
      scale = std::max(scale, ev.lambda);
    const ScatteringBlock* blocks[2] = {&datum->scattering.plus,
                                        &datum->scattering.minus};
    for (const auto* b : blocks)
      for (const auto& p : b->poles) scale = std::max(scale, std::abs(p.q));
    const double U = 50.0 * scale;
    const Complex quad = integrate_complex(
        [&](double u) { return resolvent_trace_odd(Complex(u, 0.0), *datum); },
        0.0, U, {1e-11, 18});
    log_odd = -(quad + odd_resolvent_tail(U, *datum));
  }
  return log_odd / Complex(0.0, kPi);
}

}  // namespace

ConvergenceError::ConvergenceError(const std::string& what, double abscissa)
    : std::runtime_error(what), abscissa_(abscissa) {}

double series_abscissa(const LengthSpectrum& spectrum) {
  if (spectrum.empty()) return 0.0;
  std::vector<std::pair<double, double>> items;  // (length, weight)
  items.reserve(spectrum.classes.size());
  for (const auto& c : spectrum.classes)
    items.emplace_back(c.length, class_weight(c));
  std::sort(items.begin(), items.end());
  double abscissa = 0.0;
  for (std::size_t k = 0; k < items.size(); ++k) {
    const double growth =
        std::log((k + 1.0) * std::max(1.0, items[k].second)) / items[k].first;
    abscissa = std::max(abscissa, growth);
  }
  return abscissa;
}

ZetaEvaluation zeta_odd(Complex s, const LengthSpectrum& spectrum, int n) {
  return series_core(s, spectrum, n, Parity::odd, false);
}

ZetaEvaluation zeta_even(Complex s, const LengthSpectrum& spectrum, int n) {
  return series_core(s, spectrum, n, Parity::even, false);
}

ZetaEvaluation zeta_log_deriv(Complex s, const LengthSpectrum& spectrum, int n,
                              Parity parity) {
  return series_core(s, spectrum, n, parity, true);
}

Complex eta_invariant(const SpectralDatum* datum,
                      const LengthSpectrum* spectrum, int n, EtaRoute route) {
  check_rank(n);
  if (datum == nullptr && spectrum == nullptr)
    throw std::invalid_argument("eta_invariant needs a datum or a spectrum");
  if (datum != nullptr) {
    validate_datum(*datum);
    if (datum->scattering.n != n)
      throw std::invalid_argument("datum rank does not match n");
  }
  return route == EtaRoute::heat ? eta_heat_route(datum, spectrum, n)
                                 : eta_zeta_route(datum, spectrum, n);
}

EtaZetaValue eta_zeta_values(Complex z, const SpectralDatum& datum) {
  validate_datum(datum);
  const int n = datum.scattering.n;
  const double h = static_cast<double>(datum.kernel_dimension);
  const double margin = 1e-9;
  EtaZetaValue out;
  QuadratureOptions opts{1e-10, 18};

  auto cutoff = [](double gap) {
    return std::min(400.0, 40.0 + 160.0 / gap);
  };

  if (z.real() > -1.0 + margin) {
    const double U = cutoff(z.real() + 1.0);
    Complex raw = integrate_complex(
        [&](double u) {
          return std::exp(-0.5 * (z + 1.0) * u) *
                 relative_trace_spectral(std::exp(-u), datum, Parity::odd);
        },
        0.0, U, opts);
    out.eta_small = {raw * inv_gamma(0.5 * (z + 1.0)), true};
  }
  if (z.real() < 2.0 - margin) {
    const double V = cutoff(2.0 - z.real());
    Complex raw = integrate_complex(
        [&](double u) {
          return std::exp(0.5 * (z + 1.0) * u) *
                 relative_trace_spectral(std::exp(u), datum, Parity::odd);
        },
        0.0, V, opts);
    out.eta_large = {raw * inv_gamma(0.5 * (z + 1.0)), true};
  }
  if (z.real() > n + 0.5 + margin) {
    const double U = cutoff(z.real() - n - 0.5);
    Complex raw = integrate_complex(
        [&](double u) {
          return std::exp(-z * u) *
                 (relative_trace_spectral(std::exp(-u), datum, Parity::even) -
                  h);
        },
        0.0, U, opts);
    out.zeta_small = {raw * inv_gamma(z), true};
  }
  if (z.real() < 0.5 - margin) {
    const double V = cutoff(0.5 - z.real());
    Complex raw = integrate_complex(
        [&](double u) {
          return std::exp(z * u) *
                 (relative_trace_spectral(std::exp(u), datum, Parity::even) -
                  h);
        },
        0.0, V, opts);
    out.zeta_large = {raw * inv_gamma(z), true};
  }
  return out;
}

EtaZetaLedgers eta_zeta_ledgers(const HeatTraceExpansion& expansion,
                                int kernel_dimension, bool gamma_weighted) {
  if (kernel_dimension < 0)
    throw std::invalid_argument("kernel dimension must be nonnegative");
  const double sqrt_pi = std::sqrt(kPi);
  const double psi_half = -euler_gamma - 2.0 * std::log(2.0);
  EtaZetaLedgers out;

  auto push = [](PoleLedger& ledger, double location, int order, double value,
                 const char* source) {
    if (value == 0.0) return;
    ledger.entries.push_back(
        {Complex(location, 0.0), order, Complex(value, 0.0), source});
  };

  for (std::size_t k = 0; k < expansion.gamma.size(); ++k) {
    double res = -2.0 * expansion.gamma[k];
    if (!gamma_weighted) res /= std::tgamma(k + 1.5);
    push(out.eta, 2.0 * k + 2.0, 1, res, "odd large-time");
  }

  const int balance_top = std::max(
      expansion.n, static_cast<int>(expansion.gamma_prime.size()) - 1);
  for (int m = 1; m <= balance_top; ++m) {
    double res = m <= expansion.n ? expansion.beta_at(-m) : 0.0;
    if (m < static_cast<int>(expansion.gamma_prime.size()))
      res -= expansion.gamma_prime[m];
    if (!gamma_weighted) res /= std::tgamma(m + 0.5);
    push(out.zeta, m + 0.5, 1, res, "even balance");
  }

  const double c2 = -expansion.beta_log;
  const double c1 =
      expansion.beta_at(0) -
      (expansion.gamma_prime.empty() ? 0.0 : expansion.gamma_prime[0]);
  if (gamma_weighted) {
    push(out.zeta, 0.5, 2, c2, "even log");
    push(out.zeta, 0.5, 1, c1, "even split");
    push(out.zeta, 0.0, 1, -static_cast<double>(kernel_dimension), "kernel");
  } else {
    push(out.zeta, 0.5, 2, c2 / sqrt_pi, "even log");
    push(out.zeta, 0.5, 1, (c1 - c2 * psi_half) / sqrt_pi, "even split");
  }

  for (int k = 1; k <= expansion.max_index(); ++k) {
    double res = expansion.beta_at(k);
    if (!gamma_weighted) {
      double gamma_neg = sqrt_pi;  // Gamma(1/2 - k) by downward recursion
      for (int i = 1; i <= k; ++i) gamma_neg /= 0.5 - i;
      res /= gamma_neg;
    }
    push(out.zeta, 0.5 - k, 1, res, "even small-time");
  }

  auto by_location = [](const PoleLedgerEntry& a, const PoleLedgerEntry& b) {
    if (a.location.real() != b.location.real())
      return a.location.real() < b.location.real();
    if (a.location.imag() != b.location.imag())
      return a.location.imag() < b.location.imag();
    return a.order > b.order;
  };
  std::sort(out.eta.entries.begin(), out.eta.entries.end(), by_location);
  std::sort(out.zeta.entries.begin(), out.zeta.entries.end(), by_location);

  if (!gamma_weighted) {
    for (const auto* ledger : {&out.eta, &out.zeta}) {
      for (const auto& e : ledger->entries) {
        if (std::abs(e.location) < 1e-9)
          throw std::logic_error("eta/zeta ledger entry at z = 0");
      }
    }
  }
  return out;
}

}  // namespace zetacusp
