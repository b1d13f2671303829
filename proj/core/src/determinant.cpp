#include "zetacusp/determinant.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "zetacusp/quadrature.hpp"
#include "zetacusp/rootsys.hpp"

namespace zetacusp {
namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kSRef = 1.0;    // product-route anchor point
constexpr double kFeBase = 0.7;  // even functional-equation base point
constexpr Complex kI{0.0, 1.0};

void require_decaying_phase(const SpectralDatum& datum) {
  if (std::abs(datum.scattering.plus.p_const - 1.0) > 1e-12 ||
      std::abs(datum.scattering.minus.p_const - 1.0) > 1e-12)
    throw std::invalid_argument(
        "determinant: block constants must be 1, the even phase has to decay");
}

void require_rank(const SpectralDatum& datum, int n) {
  if (datum.scattering.n != n)
    throw std::invalid_argument("determinant: datum rank does not match config");
}

// zeta(0, s): kernel + point masses + half the spin dimension per pole order.
double zeta_zero_value(const SpectralDatum& datum) {
  double e0 = datum.kernel_dimension;
  for (const auto& ev : datum.eigenvalues) e0 += ev.multiplicity;
  double orders = 0.0;
  for (const auto* b : {&datum.scattering.plus, &datum.scattering.minus})
    for (const auto& p : b->poles) orders += p.order;
  return e0 + 0.5 * static_cast<double>(datum.scattering.d()) * orders;
}

// Dyadic-block Gaussian quadrature out to the e^{-250} cutoff; keeps the
// panel count bounded for arbitrarily small t.
template <typename F>
double gaussian_blocks(double t, double first, F&& f) {
  const double lim = std::sqrt(250.0 / t);
  QuadratureOptions opts;
  opts.abs_tol = 1e-13;
  double hi = std::min(lim, first);
  double total = integrate(
      [&](double l) { return std::exp(-t * l * l) * f(l); }, 0.0, hi, opts);
  while (hi < lim) {
    const double next = std::min(lim, 2.0 * hi);
    total += integrate([&](double l) { return std::exp(-t * l * l) * f(l); },
                       hi, next, opts);
    hi = next;
  }
  return total;
}

// int_0^inf expm1(-t l^2) G(l) dl for the decaying even phase G: dyadic
// blocks while the weight still varies, then the exact arctangent tail of -G.
double scattering_expm1_integral(double t, const SpectralDatum& datum) {
  const ScatteringModel& m = datum.scattering;
  if (m.plus.poles.empty() && m.minus.poles.empty()) return 0.0;
  const double d = static_cast<double>(m.d());
  double scale = 1.0;
  for (const auto* b : {&m.plus, &m.minus})
    for (const auto& p : b->poles) scale = std::max(scale, std::abs(p.q));
  const double stop = std::max(64.0 * scale, 8.0 / std::sqrt(t));
  QuadratureOptions opts;
  opts.abs_tol = 1e-13;
  auto f = [&](double l) {
    return std::expm1(-t * l * l) * scattering_phase_even(datum, l);
  };
  double hi = std::min(stop, std::max(50.0, 8.0 * scale));
  double total = integrate(f, 0.0, hi, opts);
  while (hi < stop) {
    const double next = std::min(stop, 2.0 * hi);
    total += integrate(f, hi, next, opts);
    hi = next;
  }
  double tail = 0.0;  // int_hi^inf of -G, where expm1 is -1 to 1e-28
  for (const auto* b : {&m.plus, &m.minus})
    for (const auto& p : b->poles)
      tail += 2.0 * p.order *
              (kPi / 2.0 - std::atan((hi - p.q.imag()) / (-p.q.real())));
  return total + d * tail;
}

// Even relative trace minus its t -> 0+ limit, assembled without the
// cancellation a direct difference would suffer.
double trace_minus_limit(double t, const SpectralDatum& datum) {
  double out = 0.0;
  for (const auto& ev : datum.eigenvalues)
    out += ev.multiplicity * std::expm1(-t * ev.lambda * ev.lambda);
  out -= scattering_expm1_integral(t, datum) / (2.0 * kPi);
  return out;
}

// Closed-form even-side building blocks shared by the product route and the
// functional-equation verifier.
struct EvenSideTerms {
  UnipotentDensity ud;
  EvenPolynomial plancherel;
  double vol_scale;  // 2 pi * volume * plancherel normalization
  double kd2;        // 2 kappa d

  explicit EvenSideTerms(const ManifoldConfig& cfg)
      : ud(unipotent_density(cfg.n, cfg.kappa, cfg.c_T1)),
        plancherel(plancherel_from_c(cfg.n)),
        vol_scale(2.0 * kPi * cfg.volume * cfg.plancherel_scale),
        kd2(2.0 * cfg.kappa * static_cast<double>(1L << (cfg.n - 1))) {}

  double u_const() const {
    return to_double(ud.psi1_coeff) * (-euler_gamma) + ud.c_T1;
  }
  Complex p_identity(Complex u) const {
    return vol_scale * plancherel.eval(kI * u);
  }
  Complex p_cusp(Complex u) const {
    return ud.polynomial_part.eval(kI * u) + u_const();
  }
  // d/du log Z^e(n+u) realized from the spectral side
  Complex log_deriv_even(Complex u, const SpectralDatum& datum) const {
    return resolvent_trace_even(u, datum) - 2.0 * p_identity(u) -
           2.0 * p_cusp(u) + kd2 * digamma(u + 0.5);
  }
  // int_0^s (P_I + P_U)(iu) du, exact
  double p_integral(double s) const {
    return vol_scale * plancherel.integral_imag(s) +
           ud.polynomial_integral_imag(s);
  }
};

void extend_path(Complex a, Complex b, const std::vector<Complex>& poles,
                 int depth, std::vector<Complex>& out) {
  const Complex seg = b - a;
  const double len2 = std::norm(seg);
  double best = 1e308;
  Complex foot_best = a, pole_best = a;
  if (len2 > 0.0) {
    for (const auto& z : poles) {
      const double par =
          std::clamp(((z - a) * std::conj(seg)).real() / len2, 0.0, 1.0);
      const Complex foot = a + par * seg;
      const double dist = std::abs(z - foot);
      if (dist < best) {
        best = dist;
        foot_best = foot;
        pole_best = z;
      }
    }
  }
  if (depth == 0 || best >= 0.15) {
    out.push_back(b);
    return;
  }
  Complex away = foot_best - pole_best;
  if (std::abs(away) < 1e-9)
    away = kI * seg / std::sqrt(len2);
  else
    away /= std::abs(away);
  const Complex w = foot_best + 0.35 * away;
  extend_path(a, w, poles, depth - 1, out);
  extend_path(w, b, poles, depth - 1, out);
}

std::vector<Complex> plan_path(Complex a, Complex b,
                               const std::vector<Complex>& poles) {
  std::vector<Complex> v{a};
  extend_path(a, b, poles, 3, v);
  return v;
}

std::vector<Complex> even_dodge_set(const SpectralDatum& datum,
                                    bool with_mirror) {
  std::vector<Complex> out;
  for (const auto& e : resolvent_pole_ledger(datum, Parity::even).entries) {
    out.push_back(e.location);
    if (with_mirror) out.push_back(-e.location);
  }
  for (int k = 0; k <= 8; ++k) {  // digamma factor poles on both sides
    out.push_back(Complex(-(k + 0.5), 0.0));
    out.push_back(Complex(k + 0.5, 0.0));
  }
  return out;
}

Complex even_log_increment(double s, const SpectralDatum& datum,
                           const EvenSideTerms& terms) {
  if (s == kSRef) return Complex(0.0, 0.0);
  const auto path =
      plan_path(Complex(kSRef, 0.0), Complex(s, 0.0), even_dodge_set(datum, false));
  return integrate_polyline(
      [&](Complex u) { return terms.log_deriv_even(u, datum); }, path,
      {1e-11, 18});
}

}  // namespace

Complex log_det_mellin(Complex s, const SpectralDatum& datum) {
  validate_datum(datum);
  require_decaying_phase(datum);
  const Complex s2 = s * s;
  if (!(s2.real() > 0.0))
    throw std::domain_error("log_det_mellin: Re(s^2) must be positive");
  const double e0 = zeta_zero_value(datum);
  Complex series{0.0, 0.0};
  Complex term{1.0, 0.0};
  for (int m = 1; m <= 60; ++m) {
    term *= -s2 / static_cast<double>(m);
    series += term / static_cast<double>(m);
  }
  QuadratureOptions opts;
  opts.abs_tol = 1e-11;
  opts.max_depth = 18;
  const Complex small = integrate_complex(
      [&](double u) {
        const double t = std::exp(-u);
        return std::exp(-s2 * t) * trace_minus_limit(t, datum);
      },
      0.0, 60.0, opts);
  const Complex large = integrate_complex(
      [&](double u) {
        const double t = std::exp(u);
        return std::exp(-s2 * t) *
               relative_trace_spectral(t, datum, Parity::even);
      },
      0.0, 34.0, opts);
  return -(euler_gamma * e0 + e0 * series + small + large);
}

double det_product_constant(double s, const SpectralDatum& datum,
                            const ManifoldConfig& cfg) {
  require_rank(datum, cfg.n);
  const EvenSideTerms terms(cfg);
  const Complex lds = log_det_mellin(Complex(s, 0.0), datum);
  const Complex wint = even_log_increment(s, datum, terms);
  const Complex lg = log_gamma(Complex(s + 0.5, 0.0)) -
                     log_gamma(Complex(kSRef + 0.5, 0.0));
  const double pint = terms.p_integral(s) - terms.p_integral(kSRef);
  return (lds - wint + terms.kd2 * lg).real() - 2.0 * pint;
}

double regularized_determinant(double s, const SpectralDatum& datum,
                               const ManifoldConfig& cfg,
                               const LengthSpectrum& spectrum, DetRoute route) {
  if (route == DetRoute::mellin) {
    if (!(s > 0.0))
      throw std::domain_error("regularized_determinant: mellin route needs s > 0");
    return log_det_mellin(Complex(s, 0.0), datum).real();
  }
  validate_datum(datum);
  require_rank(datum, cfg.n);
  const EvenSideTerms terms(cfg);
  const double log_c = det_product_constant(kSRef, datum, cfg);
  Complex zinc;
  if (!spectrum.empty()) {
    zinc = zeta_even(Complex(cfg.n + s, 0.0), spectrum, cfg.n).exponent -
           zeta_even(Complex(cfg.n + kSRef, 0.0), spectrum, cfg.n).exponent;
  } else {
    zinc = even_log_increment(s, datum, terms);
  }
  const Complex lg = log_gamma(Complex(s + 0.5, 0.0)) -
                     log_gamma(Complex(kSRef + 0.5, 0.0));
  const double pint = terms.p_integral(s) - terms.p_integral(kSRef);
  return log_c + (zinc - terms.kd2 * lg).real() + 2.0 * pint;
}

double z_i_identity_residual(double s, const ManifoldConfig& cfg) {
  if (!(s > 0.0))
    throw std::domain_error("z_i_identity_residual: s must be positive");
  const auto a = identity_coefficients(cfg);
  const EvenPolynomial p = plancherel_from_c(cfg.n);
  const double vol_scale = 2.0 * kPi * cfg.volume * cfg.plancherel_scale;
  const double lhs = vol_scale * p.eval_imag(s) / s;
  const double s2 = s * s;
  QuadratureOptions opts;
  opts.abs_tol = 1e-12;
  const double quad =
      integrate([&](double u) { return a[0] * std::exp(-0.5 * u - s2 * std::exp(-u)); },
                0.0, 60.0, opts) +
      integrate([&](double u) { return a[0] * std::exp(0.5 * u - s2 * std::exp(u)); },
                0.0, 30.0, opts);
  double refl = 0.0;
  double gamma_neg = std::sqrt(kPi);
  for (std::size_t k = 1; k < a.size(); ++k) {
    gamma_neg /= 0.5 - static_cast<double>(k);  // Gamma(1/2 - k)
    refl += a[k] * gamma_neg * std::pow(s, 2.0 * k - 1.0);
  }
  return std::abs(lhs - (quad + refl));
}

double z_u_identity_residual(double s, const ManifoldConfig& cfg) {
  if (!(s > 0.0))
    throw std::domain_error("z_u_identity_residual: s must be positive");
  const UnipotentDensity ud = unipotent_density(cfg.n, cfg.kappa, cfg.c_T1);
  const double kd = cfg.kappa * static_cast<double>(1L << (cfg.n - 1));
  const double lhs =
      (ud.polynomial_eval_imag(s) - kd * digamma(Complex(s + 0.5, 0.0)).real()) /
      s;
  const auto& pc = ud.polynomial_part.coeffs();
  const double c0 = pc.empty() ? 0.0 : to_double(pc[0]);
  const double u_const =
      to_double(ud.psi1_coeff) * (-euler_gamma) + ud.c_T1;
  const double s2 = s * s;
  // U_Gamma with the t^{-j-1/2}, j >= 1, monomials removed
  auto u_gamma_low = [&](double t) {
    double v = (c0 + u_const) / std::sqrt(kPi * t);
    v += 2.0 / kPi *
         gaussian_blocks(t, 50.0, [&](double l) { return ud.q_eval(l); });
    return v;
  };
  QuadratureOptions opts;
  opts.abs_tol = 1e-11;
  opts.max_depth = 18;
  const double quad =
      integrate(
          [&](double u) {
            const double t = std::exp(-u);
            return std::exp(-s2 * t) * u_gamma_low(t) * t;
          },
          0.0, 60.0, opts) +
      integrate(
          [&](double u) {
            const double t = std::exp(u);
            return std::exp(-s2 * t) * u_gamma_low(t) * t;
          },
          0.0, 30.0, opts);
  double refl = 0.0;  // pc_j Gamma(j+1/2) Gamma(1/2-j) / pi = pc_j (-1)^j
  double sign = 1.0;
  for (std::size_t j = 1; j < pc.size(); ++j) {
    sign = -sign;
    refl += to_double(pc[j]) * sign * std::pow(s, 2.0 * j - 1.0);
  }
  return std::abs(lhs - (quad + refl));
}

double h_factor_identity_residual(double s, const LengthSpectrum& spectrum,
                                  int n) {
  if (!(s > 0.0))
    throw std::domain_error("h_factor_identity_residual: s must be positive");
  const double s2 = s * s;
  QuadratureOptions opts;
  opts.abs_tol = 1e-12;
  opts.max_depth = 18;
  const Complex quad =
      integrate_complex(
          [&](double u) {
            const double t = std::exp(-u);
            return std::exp(-s2 * t) *
                   hyperbolic_term(t, spectrum, n, Parity::even).value * t;
          },
          0.0, 60.0, opts) +
      integrate_complex(
          [&](double u) {
            const double t = std::exp(u);
            return std::exp(-s2 * t) *
                   hyperbolic_term(t, spectrum, n, Parity::even).value * t;
          },
          0.0, 30.0, opts);
  const Complex closed =
      zeta_log_deriv(Complex(n + s, 0.0), spectrum, n, Parity::even).value /
      (2.0 * s);
  return std::abs(quad - closed);
}

FeReport verify_fe_odd(Complex s, const SpectralDatum& datum) {
  validate_datum(datum);
  const auto ledger = resolvent_pole_ledger(datum, Parity::odd);
  double scale = 1.0;
  for (const auto& e : ledger.entries)
    scale = std::max(scale, std::abs(e.location));
  for (const auto& e : ledger.entries) {
    if (std::abs(s - e.location) < 1e-6 * scale ||
        std::abs(s + e.location) < 1e-6 * scale)
      throw PoleEvaluation(e, "functional equation evaluated at a pole");
  }
  const int n = datum.scattering.n;
  const Complex eta_z = eta_invariant(&datum, nullptr, n, EtaRoute::zeta);
  const Complex eta_h = eta_invariant(&datum, nullptr, n, EtaRoute::heat);

  Complex path{0.0, 0.0};
  if (std::abs(s) > 0.0) {
    std::vector<Complex> dodge;
    for (const auto& e : ledger.entries) {
      dodge.push_back(e.location);
      dodge.push_back(-e.location);
    }
    const auto verts = plan_path(Complex(0.0, 0.0), s, dodge);
    path = integrate_polyline(
        [&](Complex u) {
          return resolvent_trace_odd(u, datum) -
                 resolvent_trace_odd(-u, datum);
        },
        verts, {1e-11, 18});
  }
  const Complex lhs = std::exp(Complex(0.0, 2.0 * kPi) * eta_z + path);

  const ScatteringModel& m = datum.scattering;
  const Complex zero{0.0, 0.0};
  const Complex ratio = det_value(m.plus, s) * det_value(m.minus, zero) /
                        (det_value(m.minus, s) * det_value(m.plus, zero));
  Complex rpow{1.0, 0.0};
  for (long i = 0; i < m.d(); ++i) rpow *= ratio;
  const Complex rhs = std::exp(Complex(0.0, 2.0 * kPi) * eta_h) * rpow;
  return {lhs, rhs, std::abs(lhs - rhs)};
}

FeReport verify_fe_even(Complex s, const SpectralDatum& datum,
                        const ManifoldConfig& cfg) {
  validate_datum(datum);
  require_rank(datum, cfg.n);
  require_decaying_phase(datum);
  const auto ledger = resolvent_pole_ledger(datum, Parity::even);
  double scale = 1.0;
  for (const auto& e : ledger.entries)
    scale = std::max(scale, std::abs(e.location));
  for (const auto& e : ledger.entries) {
    if (std::abs(s - e.location) < 1e-6 * scale ||
        std::abs(s + e.location) < 1e-6 * scale)
      throw PoleEvaluation(e, "functional equation evaluated at a pole");
  }
  for (int k = 0; k <= 8; ++k) {
    const Complex g{k + 0.5, 0.0};
    if (std::abs(s - g) < 1e-6 || std::abs(s + g) < 1e-6)
      throw PoleEvaluation({g, 1, Complex(0.0, 0.0), "gamma factor"},
                           "functional equation at a gamma-factor pole");
  }

  const EvenSideTerms terms(cfg);
  const Complex s0{kFeBase, 0.0};
  const Complex dd =
      2.0 * (log_det_mellin(s, datum) - log_det_mellin(s0, datum));
  const double d = static_cast<double>(datum.scattering.d());
  auto block_logs = [&](Complex z) {
    return std::log(det_value(datum.scattering.plus, z)) +
           std::log(det_value(datum.scattering.minus, z));
  };
  const Complex cc = d * (block_logs(s) - block_logs(s0));
  const auto verts = plan_path(s0, s, even_dodge_set(datum, true));
  const Complex wpath = integrate_polyline(
      [&](Complex u) {
        return terms.log_deriv_even(u, datum) -
               terms.log_deriv_even(-u, datum);
      },
      verts, {1e-11, 18});
  const Complex gg =
      terms.kd2 * (log_gamma(s + 0.5) + log_gamma(0.5 - s) -
                   log_gamma(s0 + 0.5) - log_gamma(0.5 - s0));
  const Complex delta = dd + cc - wpath + gg;
  const Complex lhs = std::exp(delta);
  return {lhs, Complex(1.0, 0.0), std::abs(lhs - Complex(1.0, 0.0))};
}

}  // namespace zetacusp
