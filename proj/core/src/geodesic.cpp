#include "zetacusp/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace zetacusp {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  out.push_back(trim(cur));
  return out;
}

double parse_number(const std::string& field, int line) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(field, &pos);
  } catch (const std::exception&) {
    throw ParseError(line, "not a number: '" + field + "'");
  }
  if (pos != field.size())
    throw ParseError(line, "trailing characters in number: '" + field + "'");
  if (!std::isfinite(v)) throw ParseError(line, "non-finite value");
  return v;
}

long parse_index(const std::string& field, int line) {
  double v = parse_number(field, line);
  long j = static_cast<long>(v);
  if (static_cast<double>(j) != v)
    throw ParseError(line, "primitive_index must be an integer");
  return j;
}

}  // namespace

double LengthSpectrum::min_length() const {
  if (classes.empty())
    throw std::logic_error("min_length undefined on empty spectrum");
  return classes.front().length;
}

double LengthSpectrum::max_length() const {
  if (classes.empty())
    throw std::logic_error("max_length undefined on empty spectrum");
  return classes.back().length;
}

LengthSpectrum parse_length_spectrum(std::istream& in) {
  LengthSpectrum spectrum;
  std::string line;
  int lineno = 0;
  bool angles_format = false;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = trim(line);
    if (body.empty()) continue;
    if (body[0] == '#') {
      if (trim(body.substr(1)) == "format angles") angles_format = true;
      continue;
    }
    auto fields = split_fields(body);
    GeodesicClass entry;
    if (angles_format) {
      if (fields.size() < 3)
        throw ParseError(lineno, "expected length, primitive_index, angles...");
      entry.length = parse_number(fields[0], lineno);
      entry.primitive_index = static_cast<int>(parse_index(fields[1], lineno));
      HolonomyAngles hol;
      for (std::size_t k = 2; k < fields.size(); ++k)
        hol.angles.push_back(parse_number(fields[k], lineno));
      int n = static_cast<int>(hol.angles.size());
      auto [cp, cm] = half_spin_characters(hol, n);
      entry.chi_plus = cp;
      entry.chi_minus = cm;
      entry.ad_det_factor = ad_det_from_angles(entry.length, hol);
    } else {
      if (fields.size() < 7)
        throw ParseError(lineno, "expected at least 7 columns, got " +
                                     std::to_string(fields.size()));
      entry.length = parse_number(fields[0], lineno);
      entry.primitive_index = static_cast<int>(parse_index(fields[1], lineno));
      entry.chi_plus = {parse_number(fields[2], lineno),
                        parse_number(fields[3], lineno)};
      entry.chi_minus = {parse_number(fields[4], lineno),
                         parse_number(fields[5], lineno)};
      entry.ad_det_factor = parse_number(fields[6], lineno);
      if (fields.size() > 7) {
        // Trailing columns carry holonomy angles. File characters win; the
        // angle-derived values only cross-check the record.
        HolonomyAngles hol;
        for (std::size_t k = 7; k < fields.size(); ++k)
          hol.angles.push_back(parse_number(fields[k], lineno));
        int n = static_cast<int>(hol.angles.size());
        auto [cp, cm] = half_spin_characters(hol, n);
        double dev = std::abs(cp - entry.chi_plus) +
                     std::abs(cm - entry.chi_minus) +
                     std::abs(ad_det_from_angles(entry.length, hol) -
                              entry.ad_det_factor);
        if (dev > 1e-8)
          std::cerr << "warning: line " << lineno
                    << ": characters disagree with trailing angles (dev "
                    << dev << "); file values kept\n";
      }
    }
    if (!(entry.length > 0.0))
      throw ParseError(lineno, "length must be positive");
    if (entry.primitive_index < 1)
      throw ParseError(lineno, "primitive_index must be >= 1");
    if (!(entry.ad_det_factor > 0.0))
      throw ParseError(lineno, "ad_det_factor must be positive");
    for (const auto& prev : spectrum.classes)
      if (prev.length == entry.length &&
          prev.primitive_index == entry.primitive_index)
        throw ParseError(lineno, "duplicate (length, primitive_index) record");
    spectrum.classes.push_back(entry);
  }
  std::stable_sort(spectrum.classes.begin(), spectrum.classes.end(),
                   [](const GeodesicClass& a, const GeodesicClass& b) {
                     return a.length < b.length;
                   });
  return spectrum;
}

LengthSpectrum load_length_spectrum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_length_spectrum(in);
}

std::string serialize_length_spectrum(const LengthSpectrum& spectrum) {
  std::string out =
      "# length, primitive_index, chi_plus_re, chi_plus_im, "
      "chi_minus_re, chi_minus_im, ad_det_factor\n";
  char buf[256];
  for (const auto& e : spectrum.classes) {
    std::snprintf(buf, sizeof(buf),
                  "%.17g, %d, %.17g, %.17g, %.17g, %.17g, %.17g\n", e.length,
                  e.primitive_index, e.chi_plus.real(), e.chi_plus.imag(),
                  e.chi_minus.real(), e.chi_minus.imag(), e.ad_det_factor);
    out += buf;
  }
  return out;
}

double weight_D(const GeodesicClass& entry, int n) {
  double exponent = n * entry.length;
  if (exponent > 700.0)
    throw std::range_error("weight_D overflows: n*length = " +
                           std::to_string(exponent));
  return std::exp(exponent) * entry.ad_det_factor;
}

std::pair<Complex, Complex> half_spin_characters(const HolonomyAngles& angles,
                                                 int n) {
  if (static_cast<int>(angles.angles.size()) != n)
    throw std::invalid_argument("angle count must equal n");
  // chi_{+-} = (1/2)[prod 2 cos(theta_j/2) +- prod 2 i sin(theta_j/2)]:
  // the two Weyl-character products over the half-spin weight orbits.
  Complex even{1.0, 0.0};
  Complex odd{1.0, 0.0};
  for (double th : angles.angles) {
    even *= Complex{2.0 * std::cos(th / 2.0), 0.0};
    odd *= Complex{0.0, 2.0 * std::sin(th / 2.0)};
  }
  return {0.5 * (even + odd), 0.5 * (even - odd)};
}

std::pair<Complex, Complex> half_spin_characters_matrix(
    const HolonomyAngles& angles, int n) {
  if (static_cast<int>(angles.angles.size()) != n)
    throw std::invalid_argument("angle count must equal n");
  if (n > 4) throw std::domain_error("matrix oracle limited to n <= 4");
  // Weight basis of the spin module: sign vectors eps in {+-1}^n, weight
  // (eps_1/2, ..., eps_n/2). The torus element acts diagonally by
  // exp(i sum eps_j theta_j / 2); parity of the minus signs splits the two
  // half-spin summands.
  Complex plus{0.0, 0.0};
  Complex minus{0.0, 0.0};
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    double phase = 0.0;
    int parity = 1;
    for (int j = 0; j < n; ++j) {
      int eps = (mask >> j) & 1u ? -1 : 1;
      parity *= eps;
      phase += eps * angles.angles[static_cast<std::size_t>(j)] / 2.0;
    }
    Complex term{std::cos(phase), std::sin(phase)};
    if (parity > 0)
      plus += term;
    else
      minus += term;
  }
  return {plus, minus};
}

double ad_det_from_angles(double length, const HolonomyAngles& angles) {
  double prod = 1.0;
  double q = std::exp(-length);
  for (double th : angles.angles)
    prod *= 1.0 - 2.0 * q * std::cos(th) + q * q;
  return prod;
}

LengthSpectrum synthesize_spectrum(int count, double min_length, double growth,
                                   std::uint64_t seed, int n) {
  if (count < 0) throw std::invalid_argument("count must be >= 0");
  if (!(min_length > 0.0))
    throw std::invalid_argument("min_length must be positive");
  if (!(growth > 0.0)) throw std::invalid_argument("growth must be positive");
  LengthSpectrum spectrum;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const double span = 4.0;
  const double mass = 1.0 - std::exp(-growth * span);
  struct Primitive {
    double length;
    HolonomyAngles hol;
  };
  std::vector<Primitive> primitives;
  auto length_taken = [&](double l) {
    for (const auto& e : spectrum.classes)
      if (std::abs(e.length - l) < 1e-9) return true;
    return false;
  };
  for (int i = 0; i < count; ++i) {
    if (i % 5 == 4 && !primitives.empty()) {
      // Power class: j-th iterate of a sampled primitive. Holonomy angles
      // scale with the power; the det factor is recomputed, not scaled.
      const auto& base = primitives[static_cast<std::size_t>(
          unif(rng) * static_cast<double>(primitives.size()))];
      int j = unif(rng) < 0.5 ? 2 : 3;
      GeodesicClass entry;
      entry.length = j * base.length;
      entry.primitive_index = j;
      HolonomyAngles hol;
      for (double th : base.hol.angles)
        hol.angles.push_back(std::fmod(j * th, 2.0 * std::acos(-1.0)));
      auto [cp, cm] = half_spin_characters(hol, n);
      entry.chi_plus = cp;
      entry.chi_minus = cm;
      entry.ad_det_factor = ad_det_from_angles(entry.length, hol);
      if (length_taken(entry.length)) {
        --i;  // collision with an existing class; resample
        continue;
      }
      spectrum.classes.push_back(entry);
      continue;
    }
    double l;
    do {
      l = min_length - std::log(1.0 - unif(rng) * mass) / growth;
    } while (length_taken(l));
    HolonomyAngles hol;
    for (int k = 0; k < n; ++k)
      hol.angles.push_back(unif(rng) * 2.0 * std::acos(-1.0));
    GeodesicClass entry;
    entry.length = l;
    entry.primitive_index = 1;
    auto [cp, cm] = half_spin_characters(hol, n);
    entry.chi_plus = cp;
    entry.chi_minus = cm;
    entry.ad_det_factor = ad_det_from_angles(l, hol);
    spectrum.classes.push_back(entry);
    primitives.push_back({l, hol});
  }
  std::stable_sort(spectrum.classes.begin(), spectrum.classes.end(),
                   [](const GeodesicClass& a, const GeodesicClass& b) {
                     return a.length < b.length;
                   });
  return spectrum;
}

}  // namespace zetacusp
