#include "zetacusp/geodesic.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"

using namespace zetacusp;

TEST_CASE("default column format parses, sorts and validates") {
  std::istringstream in(
      "# comment\n"
      "2.0, 2, 1.1, 0, 0.3, 0, 9.0\n"
      "1.2, 1, 0.9, 0.1, 0.4, -0.2, 3.5\n");
  const auto sp = parse_length_spectrum(in);
  REQUIRE(sp.classes.size() == 2);
  CHECK(sp.min_length() == 1.2);
  CHECK(sp.max_length() == 2.0);
  CHECK(sp.classes[0].chi_minus == Complex(0.4, -0.2));
  CHECK(sp.classes[1].primitive_index == 2);

  std::istringstream bad("1.0, 1, 1, 0, 1, 0, -2.0\n");
  CHECK_THROWS_AS(parse_length_spectrum(bad), ParseError);
  std::istringstream dup("1.0, 1, 1, 0, 1, 0, 2\n1.0, 1, 1, 0, 1, 0, 2\n");
  CHECK_THROWS_AS(parse_length_spectrum(dup), ParseError);
}

TEST_CASE("angles format computes characters and the det factor") {
  std::istringstream in(
      "#format angles\n"
      "1.2, 1, 0.7, 1.9\n");
  const auto sp = parse_length_spectrum(in);
  REQUIRE(sp.classes.size() == 1);
  const auto& g = sp.classes[0];
  // frozen: prod_j |1 - e^{-l + i theta_j}|^2 at l = 1.2, theta = (0.7, 1.9)
  CHECK(g.ad_det_factor ==
        doctest::Approx(0.8098240639690454360657).epsilon(1e-12));
  // character sum and squared difference are convention free
  CHECK(std::abs(g.chi_plus + g.chi_minus -
                 Complex(2.1856688870685314084779, 0.0)) < 1e-12);
  const Complex diff2 = (g.chi_plus - g.chi_minus) * (g.chi_plus - g.chi_minus);
  CHECK(std::abs(diff2 - Complex(1.2447275205315126717732, 0.0)) < 1e-12);
}

TEST_CASE("product and matrix character paths agree") {
  for (int n = 1; n <= 4; ++n) {
    HolonomyAngles hol;
    for (int j = 0; j < n; ++j) hol.angles.push_back(0.4 + 0.63 * j);
    const auto [ap, am] = half_spin_characters(hol, n);
    const auto [bp, bm] = half_spin_characters_matrix(hol, n);
    CHECK(std::abs(ap - bp) < 1e-10);
    CHECK(std::abs(am - bm) < 1e-10);
  }
}

TEST_CASE("weight respects the exponential and the det factor") {
  GeodesicClass g;
  g.length = 1.3;
  g.ad_det_factor = 2.5;
  CHECK(weight_D(g, 2) ==
        doctest::Approx(std::exp(2 * 1.3) * 2.5).epsilon(1e-14));
  g.length = 900.0;
  CHECK_THROWS_AS(weight_D(g, 2), std::range_error);
}

TEST_CASE("serialization round-trips byte for byte") {
  const auto sp = synthesize_spectrum(14, 0.8, 1.2, 11, 2);
  const auto text = serialize_length_spectrum(sp);
  std::istringstream in(text);
  const auto back = parse_length_spectrum(in);
  CHECK(serialize_length_spectrum(back) == text);
}

TEST_CASE("synthesized spectra are deterministic and ordered") {
  const auto a = synthesize_spectrum(20, 0.9, 1.1, 5, 3);
  const auto b = synthesize_spectrum(20, 0.9, 1.1, 5, 3);
  REQUIRE(a.classes.size() == 20);
  CHECK(serialize_length_spectrum(a) == serialize_length_spectrum(b));
  CHECK(a.min_length() >= 0.9);
  for (std::size_t i = 1; i < a.classes.size(); ++i)
    CHECK(a.classes[i - 1].length <= a.classes[i].length);
  const auto c = synthesize_spectrum(20, 0.9, 1.1, 6, 3);
  CHECK(serialize_length_spectrum(a) != serialize_length_spectrum(c));
  for (const auto& g : a.classes) {
    CHECK(g.ad_det_factor > 0.0);
    CHECK(g.primitive_index >= 1);
  }
}

TEST_CASE("empty spectrum behavior") {
  LengthSpectrum sp;
  CHECK(sp.empty());
  CHECK_THROWS_AS(sp.min_length(), std::logic_error);
}
