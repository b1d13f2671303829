#include "zetacusp/scattering.hpp"

#include "zetacusp/parse_error.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"

using namespace zetacusp;

namespace {

// One plus-block pole; build_model closes the set under conjugation and
// derives the minus block from det C-(z) = 1/det C+(-z).
ScatteringModel standard_model() {
  ScatteringModel raw;
  raw.kappa = 1;
  raw.n = 2;
  raw.plus.poles.push_back({Complex(-0.8, 0.6), 1});
  raw.minus_specified = false;
  return build_model(raw);
}

}  // namespace

TEST_CASE("build closes pole sets and derives the minus block") {
  const auto model = standard_model();
  CHECK(model.d() == 2);
  REQUIRE(model.plus.poles.size() == 2);
  REQUIRE(model.minus.poles.size() == 2);
  CHECK(model.plus.poles[0].q == std::conj(model.plus.poles[1].q));
  for (const Complex s : {Complex(0.7, 0.4), Complex(-1.2, 0.9)}) {
    const Complex prod = det_value(model.plus, s) * det_value(model.minus, -s);
    CHECK(std::abs(prod - 1.0) < 1e-12);
  }
  CHECK(std::abs(det_value(model.plus, Complex(0.0, 0.0)) - 1.0) < 1e-12);
  // Blaschke factors have modulus one on the imaginary axis
  CHECK(std::abs(std::abs(det_value(model.plus, Complex(0.0, 1.3))) - 1.0) <
        1e-12);
}

TEST_CASE("serialization round-trips") {
  const auto model = standard_model();
  const auto text = serialize_scattering_model(model);
  std::istringstream in(text);
  const auto back = parse_scattering_model(in);
  CHECK(serialize_scattering_model(build_model(back)) == text);

  std::istringstream bad("kappa 1\npole 1 2 1\n");
  CHECK_THROWS_AS(parse_scattering_model(bad), ParseError);
  std::istringstream missing("n 2\n");
  CHECK_THROWS_AS(parse_scattering_model(missing), ParseError);
}

TEST_CASE("log derivative matches a central difference") {
  const auto model = standard_model();
  const Complex z(0.9, 0.2);
  const double h = 1e-6;
  for (Block block : {Block::plus, Block::psi, Block::phi}) {
    auto value = [&](Complex at) {
      switch (block) {
        case Block::plus:
          return std::log(det_value(model.plus, at));
        case Block::psi:
          return std::log(det_value(model.plus, at)) +
                 std::log(det_value(model.minus, at));
        default:
          return std::log(det_value(model.plus, at)) -
                 std::log(det_value(model.minus, at));
      }
    };
    const Complex num = (value(z + h) - value(z - h)) / (2.0 * h);
    CHECK(std::abs(num - log_deriv_det(model, block, z)) < 1e-7);
  }
  // phi vanishes identically: the derived minus block equals the plus block
  CHECK(std::abs(log_deriv_det(model, Block::phi, z)) < 1e-12);
}

TEST_CASE("evaluation at poles and zeros raises a ledger error") {
  const auto model = standard_model();
  CHECK_THROWS_AS(log_deriv_det(model, Block::plus, Complex(-0.8, 0.6)),
                  PoleEvaluation);
  CHECK_THROWS_AS(log_deriv_det(model, Block::plus, Complex(0.8, 0.6)),
                  PoleEvaluation);
  try {
    log_deriv_det(model, Block::plus, Complex(-0.8, 0.6));
  } catch (const PoleEvaluation& e) {
    CHECK(e.entry().location == Complex(-0.8, 0.6));
    CHECK(e.entry().order == 1);
  }
}

TEST_CASE("taylor coefficients of the phase series, frozen references") {
  // Unit-circle pole pair makes the psi-series coefficients dyadic exact:
  // g_k = 16 Re(q^{-2k-1}) with q = -0.8 + 0.6i.
  const auto model = standard_model();
  const auto tc = taylor_coeffs(model, 4);
  REQUIRE(tc.g.size() == 5);
  REQUIRE(tc.f.size() == 4);
  CHECK(tc.g[0] == doctest::Approx(-12.8).epsilon(1e-9));
  CHECK(tc.g[1] == doctest::Approx(-5.632).epsilon(1e-8));
  CHECK(tc.g[2] == doctest::Approx(15.95392).epsilon(1e-7));
  CHECK(tc.g[3] == doctest::Approx(-3.3021952).epsilon(1e-5));
  for (double f : tc.f) CHECK(std::abs(f) < 1e-7);
  CHECK(tc.parity_residual < 1e-9);
  CHECK_THROWS_AS(taylor_coeffs(model, 9), std::domain_error);
}

TEST_CASE("large time coefficients carry the gamma factors") {
  const auto model = standard_model();
  const auto ltc = large_time_coeffs(model, 2);
  REQUIRE(ltc.gamma_prime.size() == 3);
  CHECK(ltc.gamma_prime[0] ==
        doctest::Approx(-22.68740929159060514942).epsilon(1e-8));
  CHECK(ltc.gamma_prime[1] ==
        doctest::Approx(-4.99123004414993313287).epsilon(1e-7));
  CHECK(ltc.gamma_prime[2] ==
        doctest::Approx(21.20819020577889769367).epsilon(1e-6));
  for (double g : ltc.gamma) CHECK(std::abs(g) < 1e-6);
}

TEST_CASE("maass-selberg: exact cylinder mass and exponential closing") {
  ScatteringModel trivial;
  trivial.kappa = 1;
  trivial.n = 1;
  trivial.minus_specified = false;
  const auto tm = build_model(trivial);
  const auto pure = maass_selberg_check(tm, 0.9, 4.0);
  CHECK(pure.lhs == doctest::Approx(8.0).epsilon(1e-10));
  CHECK(pure.residual < 1e-10);

  ScatteringModel raw;
  raw.kappa = 1;
  raw.n = 1;
  raw.plus.poles.push_back({Complex(-0.5, 0.0), 1});
  raw.minus_specified = false;
  const auto model = build_model(raw);
  const auto r5 = maass_selberg_check(model, 0.8, 5.0);
  const auto r10 = maass_selberg_check(model, 0.8, 10.0);
  CHECK(r10.residual < r5.residual);
  // decay rate 2|Re q| = 1; allow a generous constant
  CHECK(r10.residual < 50.0 * std::exp(-10.0));
  CHECK_THROWS_AS(maass_selberg_check(model, 0.0, 5.0), std::domain_error);
}

TEST_CASE("pole ledgers carry block-signed residues") {
  const auto model = standard_model();
  const auto odd = pole_ledger(model, LedgerVariant::odd);
  const auto even = pole_ledger(model, LedgerVariant::even);
  REQUIRE(odd.entries.size() == 4);
  REQUIRE(even.entries.size() == 4);
  Complex odd_sum, even_sum;
  for (const auto& e : odd.entries) odd_sum += e.residue;
  for (const auto& e : even.entries) even_sum += e.residue;
  CHECK(std::abs(odd_sum) < 1e-14);
  CHECK(std::abs(even_sum - 8.0) < 1e-14);
  for (std::size_t i = 1; i < odd.entries.size(); ++i) {
    const auto &a = odd.entries[i - 1], &b = odd.entries[i];
    CHECK((a.location.real() < b.location.real() ||
           (a.location.real() == b.location.real() &&
            a.location.imag() <= b.location.imag())));
  }
}

TEST_CASE("model eisenstein sections are unitary on the axis") {
  const auto model = standard_model();
  for (double lambda : {0.5, 1.7}) {
    const auto section = model_eisenstein(model, lambda, +1);
    CHECK(std::abs(std::abs(section.scattering_value) - 1.0) < 1e-12);
    CHECK(section.lambda == lambda);
  }
}
