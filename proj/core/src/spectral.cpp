#include "zetacusp/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "zetacusp/quadrature.hpp"

namespace zetacusp {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct PoleRef {
  Complex q;
  double order;
  double block_sign;  // +1 plus block, -1 minus block
};

std::vector<PoleRef> collect_poles(const ScatteringModel& m) {
  std::vector<PoleRef> out;
  for (const auto& p : m.plus.poles) out.push_back({p.q, double(p.order), +1.0});
  for (const auto& p : m.minus.poles) out.push_back({p.q, double(p.order), -1.0});
  return out;
}

double pole_scale(const std::vector<PoleRef>& poles) {
  double s = 1.0;
  for (const auto& p : poles) s = std::max(s, std::abs(p.q));
  return s;
}

// int_0^{sqrt(250/t)} e^{-t l^2} f(l) dl in dyadic blocks; the integrand has
// structure only on the pole scale, so the far blocks need no deep splits.
template <typename F>
double gaussian_weighted(double t, double scale, F&& f) {
  const double lim = std::sqrt(250.0 / t);
  QuadratureOptions opts;
  opts.abs_tol = 1e-13;
  double hi = std::min(lim, std::max(50.0, 8.0 * scale));
  double total = integrate([&](double l) { return std::exp(-t * l * l) * f(l); },
                           0.0, hi, opts);
  while (hi < lim) {
    const double next = std::min(lim, 2.0 * hi);
    total += integrate([&](double l) { return std::exp(-t * l * l) * f(l); },
                       hi, next, opts);
    hi = next;
  }
  return total;
}

double phase_series(const std::vector<PoleRef>& poles, double block_sign_mask,
                    double lambda) {
  // sum of -2 Re(q) b / ((i lam - q)(i lam + conj q)); denominator is real.
  double out = 0.0;
  for (const auto& p : poles) {
    const double weight = block_sign_mask == 0.0 ? 1.0 : p.block_sign;
    const double den =
        -(lambda * lambda + std::norm(p.q)) + 2.0 * lambda * p.q.imag();
    out += weight * (-2.0 * p.q.real()) * p.order / den;
  }
  return out;
}

void require_valid(const SpectralDatum& datum) { validate_datum(datum); }

}  // namespace

void validate_datum(const SpectralDatum& datum) {
  for (const auto& e : datum.eigenvalues) {
    if (!(e.lambda > 0.0) || !std::isfinite(e.lambda))
      throw std::invalid_argument("SpectralDatum: eigenvalue lambda must be positive");
    if (e.multiplicity < 1)
      throw std::invalid_argument("SpectralDatum: multiplicity must be >= 1");
    if (e.sign != 1 && e.sign != -1)
      throw std::invalid_argument("SpectralDatum: sign must be +-1");
  }
  if (datum.kernel_dimension < 0)
    throw std::invalid_argument("SpectralDatum: kernel dimension must be >= 0");
  const ScatteringModel& m = datum.scattering;
  if (m.kappa < 1 || m.n < 1)
    throw std::invalid_argument("SpectralDatum: scattering model has invalid rank");
  for (const auto* block : {&m.plus, &m.minus})
    for (const auto& p : block->poles)
      if (p.q.real() > -1e-6)
        throw std::invalid_argument(
            "SpectralDatum: scattering pole too close to the imaginary axis");
}

double scattering_phase_even(const SpectralDatum& datum, double lambda) {
  const double d = static_cast<double>(datum.scattering.d());
  const auto poles = collect_poles(datum.scattering);
  const double lp = std::log(datum.scattering.plus.p_const) +
                    std::log(datum.scattering.minus.p_const);
  // G = d (ld+ + ld-)(i lam); phase_series already carries the series sign.
  return d * (lp + phase_series(poles, 0.0, lambda));
}

double scattering_phase_odd(const SpectralDatum& datum, double lambda) {
  const double d = static_cast<double>(datum.scattering.d());
  const auto poles = collect_poles(datum.scattering);
  const double lp = std::log(datum.scattering.plus.p_const) -
                    std::log(datum.scattering.minus.p_const);
  return d * (lp + phase_series(poles, 1.0, lambda));
}

double relative_trace_spectral(double t, const SpectralDatum& datum,
                               Parity parity) {
  if (!(t > 0.0) || !std::isfinite(t))
    throw std::domain_error("relative_trace_spectral: t must be positive");
  require_valid(datum);

  const double d = static_cast<double>(datum.scattering.d());
  const auto poles = collect_poles(datum.scattering);
  const double scale = pole_scale(poles);

  if (parity == Parity::even) {
    double out = datum.kernel_dimension;
    for (const auto& e : datum.eigenvalues)
      out += e.multiplicity * std::exp(-t * e.lambda * e.lambda);
    const double g_inf = d * (std::log(datum.scattering.plus.p_const) +
                              std::log(datum.scattering.minus.p_const));
    double integral = g_inf * std::sqrt(kPi / t);
    if (!poles.empty())
      integral += 2.0 * gaussian_weighted(t, scale, [&](double l) {
        return d * phase_series(poles, 0.0, l);
      });
    return out - integral / (4.0 * kPi);
  }

  double out = 0.0;
  for (const auto& e : datum.eigenvalues)
    out += e.sign * e.multiplicity * e.lambda * std::exp(-t * e.lambda * e.lambda);
  // The constant part of the odd phase integrates to zero against the odd
  // weight; only the decaying series remains.
  if (!poles.empty())
    out -= 2.0 * gaussian_weighted(t, scale, [&](double l) {
             return l * d * phase_series(poles, 1.0, l);
           }) /
           (4.0 * kPi);
  return out;
}

double selberg_consistency_residual(double t, const ManifoldConfig& cfg,
                                    const LengthSpectrum& spectrum,
                                    const SpectralDatum& datum, Parity parity) {
  const double spectral = relative_trace_spectral(t, datum, parity);
  const double ident = identity_term(t, cfg, parity);
  const double cusp = unipotent_term(t, cfg, parity);
  const HyperbolicTerm hyp = hyperbolic_term(t, spectrum, cfg.n, parity);
  return std::abs(Complex(spectral, 0.0) - (ident + cusp + hyp.value));
}

namespace {

void check_pole_distance(Complex s, const PoleLedger& ledger) {
  for (const auto& e : ledger.entries)
    if (std::abs(s - e.location) <= 1e-9 * (1.0 + std::abs(e.location)))
      throw PoleEvaluation(e, "evaluation at a resolvent pole");
}

void push_merged(std::vector<PoleLedgerEntry>& entries, Complex loc,
                 Complex residue, int order, const std::string& source) {
  for (auto& e : entries)
    if (std::abs(e.location - loc) <= 1e-12 * (1.0 + std::abs(loc)) &&
        e.source == source && e.order == order) {
      e.residue += residue;
      return;
    }
  entries.push_back({loc, order, residue, source});
}

}  // namespace

PoleLedger resolvent_pole_ledger(const SpectralDatum& datum, Parity parity) {
  require_valid(datum);
  PoleLedger ledger;
  const double d = static_cast<double>(datum.scattering.d());

  if (parity == Parity::even && datum.kernel_dimension > 0)
    ledger.entries.push_back(
        {Complex(0, 0), 1, Complex(2.0 * datum.kernel_dimension, 0), "kernel"});

  for (const auto& e : datum.eigenvalues) {
    const Complex il(0.0, e.lambda);
    if (parity == Parity::even) {
      push_merged(ledger.entries, il, Complex(e.multiplicity, 0), 1,
                  "point spectrum");
      push_merged(ledger.entries, -il, Complex(e.multiplicity, 0), 1,
                  "point spectrum");
    } else {
      push_merged(ledger.entries, il, Complex(-e.sign * e.multiplicity, 0), 1,
                  "point spectrum");
      push_merged(ledger.entries, -il, Complex(e.sign * e.multiplicity, 0), 1,
                  "point spectrum");
    }
  }

  for (const auto& p : collect_poles(datum.scattering)) {
    const double half = 0.5 * d * p.order;
    if (parity == Parity::even) {
      push_merged(ledger.entries, p.q, Complex(half, 0), 1, "scattering");
      push_merged(ledger.entries, std::conj(p.q), Complex(half, 0), 1,
                  "scattering");
    } else {
      push_merged(ledger.entries, p.q, Complex(-p.block_sign * half, 0), 1,
                  "scattering");
      push_merged(ledger.entries, std::conj(p.q), Complex(p.block_sign * half, 0),
                  1, "scattering");
    }
  }

  auto& v = ledger.entries;
  v.erase(std::remove_if(v.begin(), v.end(),
                         [](const PoleLedgerEntry& e) {
                           return std::abs(e.residue) < 1e-14;
                         }),
          v.end());
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
    if (a.location.real() != b.location.real())
      return a.location.real() < b.location.real();
    return a.location.imag() < b.location.imag();
  });
  return ledger;
}

Complex resolvent_trace_even(Complex s, const SpectralDatum& datum) {
  require_valid(datum);
  check_pole_distance(s, resolvent_pole_ledger(datum, Parity::even));
  const double d = static_cast<double>(datum.scattering.d());

  Complex out(0, 0);
  if (datum.kernel_dimension > 0) out += 2.0 * datum.kernel_dimension / s;
  for (const auto& e : datum.eigenvalues)
    out += 2.0 * s * double(e.multiplicity) / (s * s + e.lambda * e.lambda);
  out -= 0.5 * d *
         (std::log(datum.scattering.plus.p_const) +
          std::log(datum.scattering.minus.p_const));
  for (const auto& p : collect_poles(datum.scattering))
    out += 0.5 * d * p.order *
           (1.0 / (s - p.q) + 1.0 / (s - std::conj(p.q)));
  return out;
}

Complex resolvent_trace_odd(Complex s, const SpectralDatum& datum) {
  require_valid(datum);
  check_pole_distance(s, resolvent_pole_ledger(datum, Parity::odd));
  const double d = static_cast<double>(datum.scattering.d());

  Complex out(0, 0);
  for (const auto& e : datum.eigenvalues)
    out += Complex(0, -2.0) * double(e.sign * e.multiplicity) * e.lambda /
           (s * s + e.lambda * e.lambda);
  for (const auto& p : collect_poles(datum.scattering))
    out -= p.block_sign * 0.5 * d * p.order *
           (1.0 / (s - p.q) - 1.0 / (s - std::conj(p.q)));
  return out;
}

double TestFunction::g(double u) const {
  if (!(gap > 0.0) || !(width > 0.0))
    throw std::invalid_argument("TestFunction: gap and width must be positive");
  const double x = (u - gap) / width;
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

double TestFunction::g_prime(double u) const {
  if (!(gap > 0.0) || !(width > 0.0))
    throw std::invalid_argument("TestFunction: gap and width must be positive");
  const double x = (u - gap) / width;
  if (x <= 0.0 || x >= 1.0) return 0.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  const double ap = a / (x * x);
  const double bp = b / ((1.0 - x) * (1.0 - x));
  return (ap * b + a * bp) / ((a + b) * (a + b)) / width;
}

Complex TestFunction::laplace_g_prime(Complex a) const {
  // g' vanishes to all orders at both support endpoints, so its zero
  // extension is C-infinity and the trapezoid sum converges spectrally;
  // N = 128 reaches machine precision for |Im a| * width up to ~50.
  const double osc = std::abs(a.imag()) * width;
  const int N =
      std::max(128, 32 * static_cast<int>(std::ceil(3.0 * osc / 32.0)));
  const double h = width / N;
  const Complex step = std::exp(-a * h);
  Complex acc(0.0, 0.0);
  Complex phase(1.0, 0.0);
  for (int i = 1; i < N; ++i) {
    if (i % 32 == 0)
      phase = std::exp(-a * (i * h));
    else
      phase *= step;
    acc += g_prime(gap + i * h) * phase;
  }
  return acc * h * std::exp(-a * gap);
}

Complex TestFunction::transform(Parity parity, double lambda, Complex s) const {
  const Complex am = s - Complex(0.0, lambda);
  const Complex ap = s + Complex(0.0, lambda);
  const Complex t1 = laplace_g_prime(am) / am;
  const Complex t2 = laplace_g_prime(ap) / ap;
  return parity == Parity::even ? t1 + t2 : t1 - t2;
}

namespace {

PoleLedger family_pole_ledger(const SpectralDatum& datum, Parity parity) {
  // Residues of the transform-family continuation (g' has unit mass).
  PoleLedger ledger;
  const double d = static_cast<double>(datum.scattering.d());

  if (parity == Parity::even && datum.kernel_dimension > 0)
    ledger.entries.push_back(
        {Complex(0, 0), 1, Complex(2.0 * datum.kernel_dimension, 0), "kernel"});
  for (const auto& e : datum.eigenvalues) {
    const Complex il(0.0, e.lambda);
    const double m = e.multiplicity;
    if (parity == Parity::even) {
      push_merged(ledger.entries, il, Complex(m, 0), 1, "point spectrum");
      push_merged(ledger.entries, -il, Complex(m, 0), 1, "point spectrum");
    } else {
      push_merged(ledger.entries, il, Complex(e.sign * m, 0), 1,
                  "point spectrum");
      push_merged(ledger.entries, -il, Complex(-e.sign * m, 0), 1,
                  "point spectrum");
    }
  }
  for (const auto& p : collect_poles(datum.scattering)) {
    const double half = 0.5 * d * p.order;
    if (parity == Parity::even) {
      push_merged(ledger.entries, p.q, Complex(half, 0), 1, "scattering");
      push_merged(ledger.entries, std::conj(p.q), Complex(half, 0), 1,
                  "scattering");
    } else {
      push_merged(ledger.entries, p.q, Complex(p.block_sign * half, 0), 1,
                  "scattering");
      push_merged(ledger.entries, std::conj(p.q),
                  Complex(-p.block_sign * half, 0), 1, "scattering");
    }
  }
  auto& v = ledger.entries;
  v.erase(std::remove_if(v.begin(), v.end(),
                         [](const PoleLedgerEntry& e) {
                           return std::abs(e.residue) < 1e-14;
                         }),
          v.end());
  return ledger;
}

}  // namespace

Complex spectral_log_deriv(Complex s, const SpectralDatum& datum, Parity parity,
                           const TestFunction& testfn) {
  require_valid(datum);
  check_pole_distance(s, family_pole_ledger(datum, parity));
  const double d = static_cast<double>(datum.scattering.d());
  const double kd = d * datum.scattering.kappa;

  Complex out(0, 0);
  for (const auto& e : datum.eigenvalues) {
    const double w = parity == Parity::even ? double(e.multiplicity)
                                            : double(e.sign * e.multiplicity);
    out += w * testfn.transform(parity, e.lambda, s);
  }
  if (parity == Parity::even && datum.kernel_dimension > 0)
    out += double(datum.kernel_dimension) * testfn.transform(parity, 0.0, s);

  for (const auto& p : collect_poles(datum.scattering)) {
    const Complex qa = s - p.q;
    const Complex qb = s - std::conj(p.q);
    const Complex ta = testfn.laplace_g_prime(qa) / qa;
    const Complex tb = testfn.laplace_g_prime(qb) / qb;
    const double w = 0.5 * d * p.order *
                     (parity == Parity::even ? 1.0 : p.block_sign);
    out += w * (parity == Parity::even ? ta + tb : ta - tb);
  }

  if (parity == Parity::even) out -= 2.0 * kd * digamma(s + 0.5);
  return out;
}

Complex spectral_log_deriv_direct(Complex s, const SpectralDatum& datum,
                                  Parity parity, const TestFunction& testfn) {
  require_valid(datum);
  if (!(s.real() > 0.0))
    throw std::domain_error("spectral_log_deriv_direct requires Re s > 0");
  check_pole_distance(s, family_pole_ledger(datum, parity));
  const double d = static_cast<double>(datum.scattering.d());
  const double kd = d * datum.scattering.kappa;

  Complex out(0, 0);
  for (const auto& e : datum.eigenvalues) {
    const double w = parity == Parity::even ? double(e.multiplicity)
                                            : double(e.sign * e.multiplicity);
    out += w * testfn.transform(parity, e.lambda, s);
  }
  if (parity == Parity::even && datum.kernel_dimension > 0)
    out += double(datum.kernel_dimension) * testfn.transform(parity, 0.0, s);

  // The transform decays superpolynomially in lambda (smooth profile), so a
  // fixed window suffices at oracle accuracy.
  const double cutoff =
      std::max(80.0, 40.0 / testfn.width) * (1.0 + std::abs(s.imag()));
  QuadratureOptions opts;
  opts.abs_tol = 1e-11;
  if (parity == Parity::even) {
    out -= integrate_complex(
               [&](double l) {
                 return testfn.transform(Parity::even, l, s) *
                        scattering_phase_even(datum, l);
               },
               0.0, cutoff, opts) /
           (2.0 * kPi);
    out -= 2.0 * kd * digamma(s + 0.5);
  } else {
    out -= integrate_complex(
               [&](double l) {
                 return testfn.transform(Parity::odd, l, s) *
                        scattering_phase_odd(datum, l);
               },
               0.0, cutoff, opts) /
           (2.0 * kPi);
  }
  return out;
}

HeatTraceExpansion heat_trace_expansion(const ManifoldConfig& cfg,
                                        const LengthSpectrum& spectrum,
                                        const SpectralDatum& datum, int K) {
  require_valid(datum);
  if (cfg.n != datum.scattering.n)
    throw std::invalid_argument("heat_trace_expansion: rank mismatch");
  HeatTraceExpansion out = small_time_expansion(cfg, spectrum, K);
  const LargeTimeCoeffs ltc =
      large_time_coeffs(datum.scattering, std::min(K, 4));
  out.gamma.resize(ltc.gamma.size());
  for (std::size_t k = 0; k < ltc.gamma.size(); ++k)
    out.gamma[k] = -ltc.gamma[k] / (4.0 * kPi);
  out.gamma_prime.resize(ltc.gamma_prime.size());
  for (std::size_t k = 0; k < ltc.gamma_prime.size(); ++k)
    out.gamma_prime[k] = -ltc.gamma_prime[k] / (4.0 * kPi);
  return out;
}

}  // namespace zetacusp
