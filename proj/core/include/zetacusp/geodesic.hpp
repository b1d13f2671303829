#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "zetacusp/parse_error.hpp"
#include "zetacusp/specfun.hpp"

namespace zetacusp {

// One hyperbolic conjugacy class: geodesic length, power index of the
// underlying primitive class, half-spin character values of the holonomy,
// and |det(Ad(a m)^{-1} - I)| restricted to the nilpotent algebra.
struct GeodesicClass {
  double length = 0.0;
  int primitive_index = 1;
  Complex chi_plus{1.0, 0.0};
  Complex chi_minus{1.0, 0.0};
  double ad_det_factor = 1.0;
};

struct LengthSpectrum {
  std::vector<GeodesicClass> classes;

  bool empty() const { return classes.empty(); }
  // Smallest length present. Undefined (throws) on an empty spectrum.
  double min_length() const;
  double max_length() const;
};

// Rotation angles of the holonomy torus element in Spin(2n).
struct HolonomyAngles {
  std::vector<double> angles;
};

// Line-oriented records; '#' starts a comment. Default columns:
//   length, primitive_index, chi_plus_re, chi_plus_im,
//   chi_minus_re, chi_minus_im, ad_det_factor
// A '#format angles' directive switches to records
//   length, primitive_index, theta_1, ..., theta_m
// from which the characters and the det factor are computed.
LengthSpectrum parse_length_spectrum(std::istream& in);
LengthSpectrum load_length_spectrum(const std::string& path);
std::string serialize_length_spectrum(const LengthSpectrum& spectrum);

// e^{n l} * ad_det_factor; range error when n*l overflows the exponential.
double weight_D(const GeodesicClass& entry, int n);

// Characters of the two half-spin representations of Spin(2n) at the
// element with the given rotation angles (product formula path).
std::pair<Complex, Complex> half_spin_characters(const HolonomyAngles& angles,
                                                 int n);
// Same values by tracing the diagonal torus action on the explicit
// 2^{n-1}-dimensional weight basis. Exact oracle path, n <= 4.
std::pair<Complex, Complex> half_spin_characters_matrix(
    const HolonomyAngles& angles, int n);

// prod_j |1 - e^{-l + i theta_j}|^2, the synthetic det-factor convention.
double ad_det_from_angles(double length, const HolonomyAngles& angles);

// Deterministic synthetic spectrum: primitive lengths drawn from an
// exponential-type density with the given growth rate on
// [min_length, min_length + span], holonomy angles uniform, occasional
// power classes (j = 2, 3) with length and angles scaled accordingly.
LengthSpectrum synthesize_spectrum(int count, double min_length, double growth,
                                   std::uint64_t seed, int n = 2);

}  // namespace zetacusp
