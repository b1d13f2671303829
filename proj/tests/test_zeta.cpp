#include "zetacusp/zeta_functions.hpp"

#include <cmath>
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

SpectralDatum point_datum() {
  SpectralDatum datum;
  ScatteringModel raw;
  raw.kappa = 1;
  raw.n = 2;
  raw.minus_specified = false;
  datum.scattering = build_model(raw);
  datum.eigenvalues = {{1.7, 2, +1}};
  datum.kernel_dimension = 0;
  validate_datum(datum);
  return datum;
}

const PoleLedgerEntry* find_entry(const PoleLedger& ledger, double re,
                                  int order) {
  for (const auto& e : ledger.entries)
    if (std::abs(e.location - Complex(re, 0.0)) < 1e-12 && e.order == order)
      return &e;
  return nullptr;
}

}  // namespace

TEST_CASE("series abscissa") {
  CHECK(series_abscissa(LengthSpectrum{}) == 0.0);
  CHECK(series_abscissa(two_class_spectrum()) ==
        doctest::Approx(0.3465735902799726547).epsilon(1e-12));
}

TEST_CASE("geodesic products: frozen two-class values at s = 2.5") {
  const auto sp = two_class_spectrum();
  const auto odd = zeta_odd(Complex(2.5, 0.0), sp, 2);
  CHECK(odd.exponent.real() ==
        doctest::Approx(-0.0074119026493367436).epsilon(1e-12));
  CHECK(odd.exponent.imag() ==
        doctest::Approx(0.0042674630029597670).epsilon(1e-12));
  CHECK(odd.value.real() ==
        doctest::Approx(0.9926064593968651281).epsilon(1e-12));
  CHECK(odd.value.imag() ==
        doctest::Approx(0.0042359370558956903).epsilon(1e-12));
  CHECK(odd.terms_used == 2);
  CHECK(odd.tail_bound > 0.0);

  const auto even = zeta_even(Complex(2.5, 0.0), sp, 2);
  CHECK(even.exponent.real() ==
        doctest::Approx(-0.0190164022238656378).epsilon(1e-12));
  CHECK(even.exponent.imag() ==
        doctest::Approx(-0.0014224876676532557).epsilon(1e-12));
}

TEST_CASE("divergence below the abscissa raises with the estimate attached") {
  const auto sp = two_class_spectrum();
  try {
    zeta_odd(Complex(0.3, 0.0), sp, 2);
    FAIL("expected ConvergenceError");
  } catch (const ConvergenceError& e) {
    CHECK(e.abscissa() ==
          doctest::Approx(0.3465735902799726547).epsilon(1e-12));
  }
}

TEST_CASE("empty spectra give trivial products everywhere") {
  const LengthSpectrum empty;
  const auto z = zeta_odd(Complex(-5.0, 2.0), empty, 3);
  CHECK(z.value == Complex(1.0, 0.0));
  CHECK(z.exponent == Complex(0.0, 0.0));
  CHECK(zeta_log_deriv(Complex(-5.0, 2.0), empty, 3, Parity::even).value ==
        Complex(0.0, 0.0));
}

TEST_CASE("log derivative matches a central difference of the exponent") {
  const auto sp = two_class_spectrum();
  const double h = 1e-6;
  for (Parity parity : {Parity::odd, Parity::even}) {
    auto exponent = [&](double s) {
      return parity == Parity::odd ? zeta_odd(Complex(s, 0.0), sp, 2).exponent
                                   : zeta_even(Complex(s, 0.0), sp, 2).exponent;
    };
    const Complex num = (exponent(2.5 + h) - exponent(2.5 - h)) / (2.0 * h);
    const Complex closed =
        zeta_log_deriv(Complex(2.5, 0.0), sp, 2, parity).value;
    CHECK(std::abs(num - closed) < 1e-9);
  }
}

TEST_CASE("eta invariant: signed multiplicity count on point spectra") {
  SpectralDatum datum = point_datum();
  datum.eigenvalues = {{1.7, 2, +1}, {2.3, 1, -1}};
  validate_datum(datum);
  const Complex heat = eta_invariant(&datum, nullptr, 2, EtaRoute::heat);
  CHECK(std::abs(heat - Complex(1.0, 0.0)) < 1e-8);
  const Complex zeta = eta_invariant(&datum, nullptr, 2, EtaRoute::zeta);
  CHECK(std::abs(zeta - Complex(1.0, 0.0)) < 1e-6);
}

TEST_CASE("eta invariant: heat and zeta routes agree on raw spectra") {
  const auto sp = two_class_spectrum();
  const Complex heat = eta_invariant(nullptr, &sp, 2, EtaRoute::heat);
  const Complex zeta = eta_invariant(nullptr, &sp, 2, EtaRoute::zeta);
  CHECK(std::abs(heat - zeta) < 1e-8);
  // zeta route is the closed formula log Z^o(n) / (i pi)
  const Complex direct =
      zeta_odd(Complex(2.0, 0.0), sp, 2).exponent / Complex(0.0, kPi);
  CHECK(std::abs(zeta - direct) < 1e-14);
  CHECK_THROWS_AS(eta_invariant(nullptr, nullptr, 2, EtaRoute::heat),
                  std::invalid_argument);
}

TEST_CASE("mellin pieces: frozen single-eigenvalue references") {
  const auto datum = point_datum();
  const auto at04 = eta_zeta_values(Complex(0.4, 0.0), datum);
  REQUIRE(at04.eta_small.converges);
  REQUIRE(at04.eta_large.converges);
  CHECK(at04.eta_small.value.real() ==
        doctest::Approx(1.5709729688655176762).epsilon(1e-9));
  CHECK(at04.eta_large.value.real() ==
        doctest::Approx(0.0465498910064597736).epsilon(1e-8));
  // pieces assemble the full signed series: 2 * 1.7^{-0.4}
  CHECK((at04.eta_small.value + at04.eta_large.value).real() ==
        doctest::Approx(1.6175228598719774498).epsilon(1e-9));

  const auto at30 = eta_zeta_values(Complex(3.0, 0.0), datum);
  REQUIRE(at30.zeta_small.converges);
  CHECK(!at30.zeta_large.converges);
  CHECK(at30.zeta_small.value.real() ==
        doctest::Approx(0.0457145862754569024).epsilon(1e-9));

  const auto at02 = eta_zeta_values(Complex(0.2, 0.0), datum);
  REQUIRE(at02.zeta_large.converges);
  CHECK(!at02.zeta_small.converges);
  CHECK(at02.zeta_large.value.real() ==
        doctest::Approx(0.0068498876867889195).epsilon(1e-8));

  const auto far = eta_zeta_values(Complex(-2.0, 0.0), datum);
  CHECK(!far.eta_small.converges);
  CHECK(far.eta_large.converges);
}

TEST_CASE("continued-transform ledgers, weighted and divided") {
  HeatTraceExpansion expansion;
  expansion.n = 1;
  expansion.beta = {0.4, 0.7, 0.11};  // beta_{-1}, beta_0, beta_1
  expansion.beta_log = 0.3;
  expansion.gamma = {0.05};
  expansion.gamma_prime = {0.2, 0.03};
  expansion.gap = 1.0;

  const auto weighted = eta_zeta_ledgers(expansion, 2, true);
  const auto* eta2 = find_entry(weighted.eta, 2.0, 1);
  REQUIRE(eta2 != nullptr);
  CHECK(eta2->residue.real() == doctest::Approx(-0.1).epsilon(1e-14));
  const auto* balance = find_entry(weighted.zeta, 1.5, 1);
  REQUIRE(balance != nullptr);
  CHECK(balance->residue.real() == doctest::Approx(0.37).epsilon(1e-14));
  const auto* log2 = find_entry(weighted.zeta, 0.5, 2);
  REQUIRE(log2 != nullptr);
  CHECK(log2->residue.real() == doctest::Approx(-0.3).epsilon(1e-14));
  const auto* split = find_entry(weighted.zeta, 0.5, 1);
  REQUIRE(split != nullptr);
  CHECK(split->residue.real() == doctest::Approx(0.5).epsilon(1e-14));
  const auto* kernel = find_entry(weighted.zeta, 0.0, 1);
  REQUIRE(kernel != nullptr);
  CHECK(kernel->residue.real() == doctest::Approx(-2.0).epsilon(1e-14));
  const auto* small1 = find_entry(weighted.zeta, -0.5, 1);
  REQUIRE(small1 != nullptr);
  CHECK(small1->residue.real() == doctest::Approx(0.11).epsilon(1e-14));

  const auto divided = eta_zeta_ledgers(expansion, 2, false);
  CHECK(find_entry(divided.zeta, 0.0, 1) == nullptr);
  CHECK(find_entry(divided.eta, 2.0, 1)->residue.real() ==
        doctest::Approx(-0.1128379167095512574).epsilon(1e-12));
  CHECK(find_entry(divided.zeta, 1.5, 1)->residue.real() ==
        doctest::Approx(0.4175002918253396523).epsilon(1e-12));
  CHECK(find_entry(divided.zeta, 0.5, 2)->residue.real() ==
        doctest::Approx(-0.1692568750643268861).epsilon(1e-12));
  CHECK(find_entry(divided.zeta, 0.5, 1)->residue.real() ==
        doctest::Approx(-0.0502427793879831635).epsilon(1e-12));
  CHECK(find_entry(divided.zeta, -0.5, 1)->residue.real() ==
        doctest::Approx(-0.0310304270951265958).epsilon(1e-12));

  for (const auto* ledger : {&divided.eta, &divided.zeta})
    for (std::size_t i = 1; i < ledger->entries.size(); ++i)
      CHECK(ledger->entries[i - 1].location.real() <=
            ledger->entries[i].location.real());
}
