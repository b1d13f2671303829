#include "zetacusp/determinant.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"

using namespace zetacusp;

namespace {

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

SpectralDatum point_datum() {
  SpectralDatum datum;
  ScatteringModel raw;
  raw.kappa = 1;
  raw.n = 2;
  raw.minus_specified = false;
  datum.scattering = build_model(raw);
  datum.eigenvalues = {{1.7, 2, +1}, {2.3, 1, -1}};
  datum.kernel_dimension = 0;
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

TEST_CASE("mellin route: pure point spectra in closed form") {
  const auto datum = point_datum();
  // 2 log(1.7^2 + 1.1^2) + log(2.3^2 + 1.1^2)
  const Complex v = log_det_mellin(Complex(1.1, 0.0), datum);
  CHECK(v.real() == doctest::Approx(4.6937761243221156663).epsilon(1e-9));
  CHECK(std::abs(v.imag()) < 1e-9);
  CHECK(regularized_determinant(1.1, datum, test_config(), LengthSpectrum{},
                                DetRoute::mellin) ==
        doctest::Approx(4.6937761243221156663).epsilon(1e-9));
}

TEST_CASE("mellin derivative is the even resolvent trace") {
  const auto datum = standard_datum();
  const double h = 1e-4;
  const Complex up = log_det_mellin(Complex(0.9 + h, 0.0), datum);
  const Complex dn = log_det_mellin(Complex(0.9 - h, 0.0), datum);
  const Complex diff = (up - dn) / (2.0 * h);
  const Complex direct = resolvent_trace_even(Complex(0.9, 0.0), datum);
  CHECK(std::abs(diff - direct) < 1e-6);
  CHECK(direct.real() ==
        doctest::Approx(7.6748925470236945647).epsilon(1e-10));
}

TEST_CASE("product route tracks mellin through the continuation") {
  const auto datum = standard_datum();
  const auto cfg = test_config();
  const LengthSpectrum none;
  for (double s : {0.8, 1.3}) {
    const double mellin =
        regularized_determinant(s, datum, cfg, none, DetRoute::mellin);
    const double product =
        regularized_determinant(s, datum, cfg, none, DetRoute::product);
    CHECK(std::abs(mellin - product) < 1e-6);
  }
  // at the anchor the increment vanishes and the routes coincide
  const double at_ref =
      regularized_determinant(1.0, datum, cfg, none, DetRoute::product);
  CHECK(at_ref == doctest::Approx(log_det_mellin(Complex(1.0, 0.0),
                                                 datum).real())
                      .epsilon(1e-10));
}

TEST_CASE("implied product constant is flat in the shift") {
  const auto datum = standard_datum();
  const auto cfg = test_config();
  double lo = 1e308, hi = -1e308;
  for (double s : {0.6, 0.9, 1.4}) {
    const double c = det_product_constant(s, datum, cfg);
    lo = std::min(lo, c);
    hi = std::max(hi, c);
  }
  CHECK(hi - lo < 1e-6);
}

TEST_CASE("half-shift factor identities against honest quadrature") {
  const auto cfg = test_config();
  const auto sp = two_class_spectrum();
  for (double s : {0.5, 1.0, 2.0}) {
    CHECK(z_i_identity_residual(s, cfg) < 1e-7);
    CHECK(z_u_identity_residual(s, cfg) < 1e-7);
    CHECK(h_factor_identity_residual(s, sp, 2) < 1e-7);
  }
}

TEST_CASE("functional equations hold off the pole set") {
  const auto datum = standard_datum();
  const auto cfg = test_config();
  const Complex pts[] = {Complex(0.3, 0.0), Complex(0.5, 0.2),
                         Complex(1.1, 0.0)};
  for (const Complex& s : pts) {
    const FeReport odd = verify_fe_odd(s, datum);
    CHECK(odd.residual < 1e-6);
    const FeReport even = verify_fe_even(s, datum, cfg);
    CHECK(even.residual < 1e-6);
  }
  // at s = 0 the odd equation degenerates to the two-route eta comparison
  CHECK(verify_fe_odd(Complex(0.0, 0.0), datum).residual < 1e-6);
}

TEST_CASE("guard rails") {
  const auto datum = standard_datum();
  const auto cfg = test_config();
  CHECK_THROWS_AS(regularized_determinant(-0.5, datum, cfg, LengthSpectrum{},
                                          DetRoute::mellin),
                  std::domain_error);
  CHECK_THROWS_AS(log_det_mellin(Complex(0.0, 1.0), datum), std::domain_error);

  SpectralDatum growing = datum;
  ScatteringModel raw;
  raw.kappa = 1;
  raw.n = 2;
  raw.plus.poles.push_back({Complex(-0.8, 0.6), 1});
  raw.plus.p_const = 2.0;
  raw.minus_specified = false;
  growing.scattering = build_model(raw);
  CHECK_THROWS_AS(log_det_mellin(Complex(1.0, 0.0), growing),
                  std::invalid_argument);

  CHECK_THROWS_AS(verify_fe_odd(Complex(0.0, 1.7), datum), PoleEvaluation);
  try {
    verify_fe_even(Complex(0.5, 0.0), datum, cfg);
    FAIL("expected PoleEvaluation at the gamma-factor pole");
  } catch (const PoleEvaluation& e) {
    CHECK(e.entry().source == "gamma factor");
  }
}
