#include "zetacusp/heat_terms.hpp"
#include "zetacusp/spectral.hpp"

#include <cmath>
#include <map>
#include <stdexcept>

#include "doctest.h"

using namespace zetacusp;

namespace {

constexpr double kPi = 3.14159265358979323846;

LengthSpectrum two_class_spectrum() {
  LengthSpectrum sp;
  GeodesicClass a;
  a.length = 1.2;
  a.primitive_index = 1;
  a.chi_plus = {0.9, 0.1};
  a.chi_minus = {0.4, -0.2};
  a.ad_det_factor = 3.5;
  GeodesicClass b;
  b.length = 2.0;
  b.primitive_index = 2;
  b.chi_plus = {1.1, 0.0};
  b.chi_minus = {0.3, 0.0};
  b.ad_det_factor = 9.0;
  sp.classes = {a, b};
  return sp;
}

SpectralDatum standard_datum() {
  SpectralDatum datum;
  ScatteringModel raw;
  raw.kappa = 1;
  raw.n = 2;
  raw.plus.poles.push_back({Complex(-0.8, 0.6), 1});
  raw.minus_specified = false;
  datum.scattering = build_model(raw);
  datum.eigenvalues = {{1.7, 2, +1}, {2.3, 1, -1}};
  datum.kernel_dimension = 1;
  validate_datum(datum);
  return datum;
}

ManifoldConfig test_config() {
  ManifoldConfig cfg;
  cfg.n = 2;
  cfg.kappa = 1;
  cfg.volume = 0.7;
  cfg.plancherel_scale = 1.3;
  cfg.c_T1 = 0.2;
  return cfg;
}

}  // namespace

TEST_CASE("identity term: frozen coefficients and odd vanishing") {
  const auto cfg = test_config();
  const auto a = identity_coefficients(cfg);
  REQUIRE(a.size() == 3);
  CHECK(a[0] == doctest::Approx(1.8145496298645220329).epsilon(1e-12));
  CHECK(a[1] == doctest::Approx(4.0323325108100489621).epsilon(1e-12));
  CHECK(a[2] == doctest::Approx(2.4193995064860293773).epsilon(1e-12));
  CHECK(identity_term(0.8, cfg, Parity::even) ==
        doctest::Approx(11.890601162708283979).epsilon(1e-12));
  CHECK(identity_term(0.8, cfg, Parity::odd) == 0.0);
}

TEST_CASE("hyperbolic term: frozen two-class values") {
  const auto sp = two_class_spectrum();
  const auto he = hyperbolic_term(0.6, sp, 2, Parity::even);
  CHECK(he.value.real() ==
        doctest::Approx(0.0082774866850217100043).epsilon(1e-12));
  CHECK(he.value.imag() ==
        doctest::Approx(0.0006216546675324605088).epsilon(1e-12));
  const auto ho = hyperbolic_term(0.6, sp, 2, Parity::odd);
  CHECK(ho.value.real() ==
        doctest::Approx(0.0018649640025973815264).epsilon(1e-12));
  CHECK(ho.value.imag() ==
        doctest::Approx(0.0032949171539477533915).epsilon(1e-12));
  CHECK(he.terms_used == 2);
  CHECK(he.tail_bound >= 0.0);

  LengthSpectrum equal;
  GeodesicClass g;
  g.length = 1.0;
  g.chi_plus = g.chi_minus = {0.8, 0.3};
  g.ad_det_factor = 2.0;
  equal.classes = {g};
  CHECK(std::abs(hyperbolic_term(0.5, equal, 2, Parity::odd).value) == 0.0);
}

TEST_CASE("cusp term: odd vanishes, even matches a trapezoid quadrature") {
  const auto cfg = test_config();
  CHECK(unipotent_term(0.5, cfg, Parity::odd) == 0.0);
  const auto ud = unipotent_density(cfg.n, cfg.kappa, cfg.c_T1);
  const double t = 0.5;
  double acc = 0.0;
  const double step = 0.005;
  for (int i = 0; i <= 8000; ++i) {
    const double lambda = step * i;
    const double w = (i == 0 || i == 8000) ? 0.5 : 1.0;
    acc += w * std::exp(-t * lambda * lambda) * ud.eval(lambda);
  }
  const double reference = 2.0 * acc * step / kPi;
  CHECK(unipotent_term(t, cfg, Parity::even) ==
        doctest::Approx(reference).epsilon(1e-6));
}

TEST_CASE("small-time expansion reproduces the assembled geometric side") {
  const auto cfg = test_config();
  const auto sp = two_class_spectrum();
  const auto exp_table = small_time_expansion(cfg, sp, 2);
  CHECK(exp_table.n == 2);
  CHECK(exp_table.gap == doctest::Approx(1.2));
  for (double t : {7e-4, 3e-3}) {
    double predicted = exp_table.beta_log * std::log(t) / std::sqrt(t);
    for (int k = -cfg.n; k <= exp_table.max_index(); ++k)
      predicted += exp_table.beta_at(k) * std::pow(t, k - 0.5);
    const double honest = identity_term(t, cfg, Parity::even) +
                          hyperbolic_term(t, sp, cfg.n, Parity::even)
                              .value.real() +
                          unipotent_term(t, cfg, Parity::even);
    CHECK(predicted == doctest::Approx(honest).epsilon(2e-6));
  }
}

TEST_CASE("spectral trace: frozen values for the standard datum") {
  const auto datum = standard_datum();
  CHECK(relative_trace_spectral(0.7, datum, Parity::even) ==
        doctest::Approx(3.1941705391730692901).epsilon(1e-8));
  CHECK(relative_trace_spectral(0.7, datum, Parity::odd) ==
        doctest::Approx(0.3929837489471675014).epsilon(1e-10));
}

TEST_CASE("datum validation rejects malformed input") {
  auto datum = standard_datum();
  datum.eigenvalues.push_back({-1.0, 1, 1});
  CHECK_THROWS_AS(validate_datum(datum), std::invalid_argument);
  datum = standard_datum();
  datum.eigenvalues.push_back({1.0, 1, 2});
  CHECK_THROWS_AS(validate_datum(datum), std::invalid_argument);
  datum = standard_datum();
  datum.kernel_dimension = -1;
  CHECK_THROWS_AS(validate_datum(datum), std::invalid_argument);
  datum = standard_datum();
  datum.scattering.plus.poles[0].q = Complex(-1e-9, 0.5);
  CHECK_THROWS_AS(validate_datum(datum), std::invalid_argument);
}

TEST_CASE("resolvent transforms: frozen Laplace-quadrature references") {
  const auto datum = standard_datum();
  const Complex even = resolvent_trace_even(Complex(0.9, 0.0), datum);
  CHECK(even.real() == doctest::Approx(7.6748925470236945647).epsilon(1e-11));
  CHECK(std::abs(even.imag()) < 1e-12);
  const Complex odd = resolvent_trace_odd(Complex(0.9, 0.0), datum);
  CHECK(odd.imag() == doctest::Approx(-1.0837394771821001329).epsilon(1e-11));
  CHECK(std::abs(odd.real()) < 1e-12);
}

TEST_CASE("resolvent pole ledgers match numeric residues") {
  const auto datum = standard_datum();
  for (Parity parity : {Parity::even, Parity::odd}) {
    const auto ledger = resolvent_pole_ledger(datum, parity);
    REQUIRE(!ledger.entries.empty());
    std::map<std::pair<long, long>, Complex> totals;
    for (const auto& e : ledger.entries) {
      REQUIRE(e.order == 1);
      const auto key =
          std::make_pair(std::lround(e.location.real() * 1e6),
                         std::lround(e.location.imag() * 1e6));
      totals[key] += e.residue;
    }
    for (const auto& [key, residue] : totals) {
      const Complex p(key.first * 1e-6, key.second * 1e-6);
      const Complex eps(7.3e-6, 3.1e-6);
      const Complex probe = parity == Parity::even
                                ? resolvent_trace_even(p + eps, datum)
                                : resolvent_trace_odd(p + eps, datum);
      CHECK(std::abs(probe * eps - residue) < 1e-3 * std::abs(residue));
    }
  }
}

TEST_CASE("transform family: continued assembly equals direct quadrature") {
  const auto datum = standard_datum();
  const TestFunction testfn;
  CHECK(testfn.g(0.0) == 0.0);
  CHECK(testfn.g(testfn.gap) == 0.0);
  CHECK(testfn.g(testfn.gap + testfn.width) == 1.0);
  CHECK(std::abs(testfn.laplace_g_prime(Complex(0.0, 0.0)) - 1.0) < 1e-12);
  for (Parity parity : {Parity::even, Parity::odd})
    for (const Complex s : {Complex(1.3, 0.0), Complex(0.8, 0.3)}) {
      const Complex a = spectral_log_deriv(s, datum, parity, testfn);
      const Complex b = spectral_log_deriv_direct(s, datum, parity, testfn);
      CHECK(std::abs(a - b) < 1e-7 * std::max(1.0, std::abs(a)));
    }
  CHECK_THROWS_AS(
      spectral_log_deriv(Complex(0.0, 1.7), datum, Parity::even, testfn),
      PoleEvaluation);
}

TEST_CASE("merged expansion carries trace-level large-time coefficients") {
  const auto cfg = test_config();
  const auto datum = standard_datum();
  const auto sp = two_class_spectrum();
  const auto exp_table = heat_trace_expansion(cfg, sp, datum, 2);
  REQUIRE(exp_table.gamma_prime.size() >= 2);
  // frozen: -g_k Gamma(k+1/2) / (4 pi) for the standard model
  CHECK(exp_table.gamma_prime[0] ==
        doctest::Approx(1.8054066673528201182).epsilon(1e-8));
  CHECK(exp_table.gamma_prime[1] ==
        doctest::Approx(0.3971894668176204260).epsilon(1e-7));
  for (double g : exp_table.gamma) CHECK(std::abs(g) < 1e-6);

  // single-point large-time check at t = 50; remainder ~ |gamma'_2| t^{-5/2}
  const double t = 50.0;
  const double measured =
      relative_trace_spectral(t, datum, Parity::even) - 1.0;
  const double fitted = exp_table.gamma_prime[0] / std::sqrt(t) +
                        exp_table.gamma_prime[1] * std::pow(t, -1.5);
  CHECK(std::abs(measured - fitted) < 3e-4);
}

TEST_CASE("consistency residual is a finite diagnostic") {
  const auto cfg = test_config();
  const auto datum = standard_datum();
  const auto sp = two_class_spectrum();
  for (Parity parity : {Parity::even, Parity::odd}) {
    const double r = selberg_consistency_residual(0.9, cfg, sp, datum, parity);
    CHECK(std::isfinite(r));
    CHECK(r >= 0.0);
  }
}
