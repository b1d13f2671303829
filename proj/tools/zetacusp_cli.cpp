// Command-line front end: loads a run configuration, builds the spectral and
// geodesic data, dispatches one subcommand and emits structured-text records
// or CSV tables. Output bytes depend only on the inputs.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "zetacusp/determinant.hpp"
#include "zetacusp/geodesic.hpp"
#include "zetacusp/heat_terms.hpp"
#include "zetacusp/parse_error.hpp"
#include "zetacusp/quadrature.hpp"
#include "zetacusp/records.hpp"
#include "zetacusp/rootsys.hpp"
#include "zetacusp/scattering.hpp"
#include "zetacusp/specfun.hpp"
#include "zetacusp/spectral.hpp"
#include "zetacusp/zeta_functions.hpp"

namespace {

using zetacusp::Complex;

struct RunConfig {
  zetacusp::ManifoldConfig manifold;
  std::string spectrum_path;
  std::string scattering_path;
  double tolerance = 1e-10;
  int truncation_k = 2;
  double abscissa_override = std::numeric_limits<double>::quiet_NaN();
  std::string format = "text";  // text | csv, for scalar records
  int kernel_dimension = 0;
  std::vector<zetacusp::Eigenvalue> eigenvalues;
};

// Same dialect as the scattering file: one directive per line, '#' comments.
RunConfig parse_run_config(std::istream& in) {
  RunConfig cfg;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto want = [&](auto& slot) {
      if (!(ls >> slot))
        throw zetacusp::ParseError(lineno, "missing value for " + key);
    };
    if (key == "n") {
      want(cfg.manifold.n);
    } else if (key == "kappa") {
      want(cfg.manifold.kappa);
    } else if (key == "volume") {
      want(cfg.manifold.volume);
    } else if (key == "plancherel_scale") {
      want(cfg.manifold.plancherel_scale);
    } else if (key == "c_t1") {
      want(cfg.manifold.c_T1);
    } else if (key == "spectrum") {
      want(cfg.spectrum_path);
    } else if (key == "scattering") {
      want(cfg.scattering_path);
    } else if (key == "tolerance") {
      want(cfg.tolerance);
    } else if (key == "truncation_k") {
      want(cfg.truncation_k);
    } else if (key == "abscissa_override") {
      want(cfg.abscissa_override);
    } else if (key == "format") {
      want(cfg.format);
    } else if (key == "kernel_dimension") {
      want(cfg.kernel_dimension);
    } else if (key == "eigenvalue") {
      zetacusp::Eigenvalue ev;
      want(ev.lambda);
      want(ev.multiplicity);
      want(ev.sign);
      cfg.eigenvalues.push_back(ev);
    } else {
      throw zetacusp::ParseError(lineno, "unknown key " + key);
    }
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  return parse_run_config(in);
}

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check_config(const RunConfig& cfg) {
  if (!(cfg.tolerance >= 1e-14 && cfg.tolerance <= 1e-4))
    throw UsageError("tolerance must lie in [1e-14, 1e-4]");
  if (cfg.manifold.n < 1 || cfg.manifold.n > 6)
    throw UsageError("n must lie in [1, 6]");
  if (cfg.manifold.kappa < 0) throw UsageError("kappa must be >= 0");
  if (cfg.truncation_k < 0 || cfg.truncation_k > 14)
    throw UsageError("truncation_k must lie in [0, 14]");
  if (cfg.format != "text" && cfg.format != "csv")
    throw UsageError("format must be text or csv");
}

zetacusp::LengthSpectrum spectrum_from(const RunConfig& cfg) {
  if (cfg.spectrum_path.empty()) return {};
  return zetacusp::load_length_spectrum(cfg.spectrum_path);
}

zetacusp::SpectralDatum datum_from(const RunConfig& cfg) {
  zetacusp::SpectralDatum datum;
  if (cfg.scattering_path.empty()) {
    // Trivial model: det C+ = det C- = 1, so the continuous part vanishes.
    zetacusp::ScatteringModel raw;
    raw.kappa = cfg.manifold.kappa > 0 ? cfg.manifold.kappa : 1;
    raw.n = cfg.manifold.n;
    raw.minus_specified = false;
    datum.scattering = zetacusp::build_model(raw);
  } else {
    datum.scattering = zetacusp::build_model(
        zetacusp::load_scattering_model(cfg.scattering_path));
  }
  datum.eigenvalues = cfg.eigenvalues;
  datum.kernel_dimension = cfg.kernel_dimension;
  zetacusp::validate_datum(datum);
  return datum;
}

// ---------------------------------------------------------------------------
// Emission. Artifacts go to stdout, or to files under $ZETACUSP_OUT when set
// (the only environment knob). Bytes are identical either way.

void emit_artifact(const std::string& name, const std::string& bytes) {
  const char* out_dir = std::getenv("ZETACUSP_OUT");
  if (out_dir == nullptr || *out_dir == '\0') {
    std::cout << bytes;
    return;
  }
  std::filesystem::create_directories(out_dir);
  const auto path = std::filesystem::path(out_dir) / name;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << bytes;
  std::cout << path.string() << "\n";
}

std::string render_record(const zetacusp::ResultRecord& rec,
                          const RunConfig& cfg) {
  if (cfg.format != "csv") return rec.to_text();
  std::vector<std::string> header, row;
  for (const auto& [k, v] : rec.fields) {
    header.push_back(k);
    row.push_back(v);
  }
  zetacusp::CsvTable table(header);
  table.add_row(row);
  return table.to_text();
}

void echo_inputs(zetacusp::ResultRecord& rec, const RunConfig& cfg) {
  rec.add("n", static_cast<long>(cfg.manifold.n));
  rec.add("kappa", static_cast<long>(cfg.manifold.kappa));
  rec.add("volume", cfg.manifold.volume);
  rec.add("plancherel_scale", cfg.manifold.plancherel_scale);
  rec.add("c_t1", cfg.manifold.c_T1);
  if (!cfg.spectrum_path.empty()) rec.add("spectrum", cfg.spectrum_path);
  if (!cfg.scattering_path.empty()) rec.add("scattering", cfg.scattering_path);
  rec.add("tolerance", cfg.tolerance);
}

// ---------------------------------------------------------------------------
// Small argument parsers.

Complex parse_complex(const std::string& text) {
  std::string t = text;
  for (auto& c : t)
    if (c == ',') c = ' ';
  std::istringstream in(t);
  double re = 0.0, im = 0.0;
  if (!(in >> re)) throw UsageError("cannot parse complex value " + text);
  in >> im;
  return {re, im};
}

std::vector<double> parse_grid(const std::string& text) {
  std::string t = text;
  for (auto& c : t)
    if (c == ':') c = ' ';
  std::istringstream in(t);
  double a = 0.0, b = 0.0, step = 0.0;
  if (!(in >> a >> b >> step) || step <= 0.0 || b < a)
    throw UsageError("grid must be A:B:STEP with STEP > 0 and B >= A");
  std::vector<double> grid;
  const int count = static_cast<int>(std::floor((b - a) / step + 1e-9)) + 1;
  for (int i = 0; i < count; ++i) grid.push_back(a + step * i);
  return grid;
}

// ---------------------------------------------------------------------------
// validate: exact structural identities plus a few closed-form quadrature
// cross-checks. Failure of any row is a computation error (exit 1).

struct ValidateRow {
  std::string name;
  double residual;
  double tolerance;
};

int run_validate(const RunConfig& cfg) {
  std::vector<ValidateRow> rows;
  auto push = [&](const std::string& name, double residual, double tol) {
    rows.push_back({name, residual, tol});
  };

  for (int n = 1; n <= 4; ++n)
    for (int sign : {+1, -1}) {
      const bool ok = zetacusp::reflection_sum_identity(n, sign);
      push("reflection_sum_n" + std::to_string(n) +
               (sign > 0 ? "_plus" : "_minus"),
           ok ? 0.0 : 1.0, 0.5);
    }

  for (int n = 1; n <= 3; ++n)
    for (int sign : {+1, -1}) {
      const auto om = zetacusp::omega(n, sign);
      double worst = 0.0;
      for (double lambda : {0.3, 0.7, 1.1, 1.9}) {
        const auto direct = zetacusp::omega_direct(n, sign, lambda);
        worst = std::max(worst, std::abs(om.eval(lambda) - direct.real()));
        worst = std::max(worst, std::abs(direct.imag()));
      }
      push("omega_reduction_n" + std::to_string(n) +
               (sign > 0 ? "_plus" : "_minus"),
           worst, 1e-9);
    }

  for (int n = 2; n <= 3; ++n) {
    const auto ud = zetacusp::unipotent_density(n, cfg.manifold.kappa,
                                                cfg.manifold.c_T1);
    double worst = 0.0;
    for (double lambda : {0.25, 0.8, 1.5, 2.5})
      worst = std::max(
          worst, std::abs(zetacusp::unipotent_density_unreduced(
                              n, cfg.manifold.kappa, cfg.manifold.c_T1,
                              lambda) -
                          ud.eval(lambda)));
    push("unipotent_reduction_n" + std::to_string(n), worst, 1e-9);
  }

  for (int n = 1; n <= 4; ++n) {
    const auto pl = zetacusp::plancherel_from_c(n);
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (double lambda : {0.4, 0.9, 1.6, 2.2}) {
      const auto c = zetacusp::harish_chandra_c(n, Complex(lambda, 0.0));
      const double r = pl.eval(lambda) * std::norm(c);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
    push("plancherel_c_ratio_n" + std::to_string(n), (hi - lo) / hi, 1e-9);
  }

  {
    double worst = 0.0;
    for (const Complex z : {Complex(0.37, 0.21), Complex(2.5, 0.0),
                            Complex(1.0, -1.3)})
      worst = std::max(worst, std::abs(zetacusp::digamma(z + 1.0) -
                                       zetacusp::digamma(z) - 1.0 / z));
    push("digamma_recurrence", worst, 1e-12);
  }

  {
    double worst = 0.0;
    for (const Complex z : {Complex(0.3, 0.4), Complex(0.8, -0.2)}) {
      const Complex lhs =
          std::exp(zetacusp::log_gamma(z) + zetacusp::log_gamma(1.0 - z));
      const Complex rhs = M_PI / std::sin(M_PI * z);
      worst = std::max(worst, std::abs(lhs - rhs) / std::abs(rhs));
    }
    push("gamma_reflection", worst, 1e-12);
  }

  {
    // Laplace transform identities behind the determinant assembly.
    const Complex s(0.9, 0.3);
    const double r = 1.4;
    const auto half = zetacusp::integrate_complex(
        [&](double t) {
          return std::exp(-(r * r) / (4.0 * t) - t * s * s) /
                 std::sqrt(4.0 * M_PI * t);
        },
        1e-9, 60.0, {1e-13, 18});
    push("laplace_half_quadrature",
         std::abs(half - zetacusp::laplace_heat(s, r, zetacusp::LaplaceKind::half)),
         1e-8);
    const double sd = 0.8;
    push("cauchy_digamma_closed_form",
         std::abs(zetacusp::cauchy_digamma_integral(sd) -
                  zetacusp::digamma(Complex(sd + 0.5, 0.0)).real() /
                      (2.0 * sd)),
         1e-12);
  }

  {
    // chi+ == chi- kills the odd product exactly.
    zetacusp::LengthSpectrum sp;
    for (double l : {1.0, 1.6, 2.1}) {
      zetacusp::GeodesicClass g;
      g.length = l;
      g.primitive_index = 1;
      g.chi_plus = g.chi_minus = Complex(1.3, 0.2);
      g.ad_det_factor = 2.0;
      sp.classes.push_back(g);
    }
    const auto z = zetacusp::zeta_odd(Complex(4.0, 0.0), sp, 2);
    push("zeta_odd_equal_characters", std::abs(z.value - 1.0), 0.0);
  }

  {
    const auto sp = zetacusp::synthesize_spectrum(12, 0.8, 1.15, 7, 2);
    const auto text = zetacusp::serialize_length_spectrum(sp);
    std::istringstream in(text);
    const auto again =
        zetacusp::serialize_length_spectrum(zetacusp::parse_length_spectrum(in));
    push("spectrum_round_trip", text == again ? 0.0 : 1.0, 0.5);
  }

  {
    const auto datum = datum_from(cfg);
    const auto text = zetacusp::serialize_scattering_model(datum.scattering);
    std::istringstream in(text);
    const auto again = zetacusp::serialize_scattering_model(
        zetacusp::parse_scattering_model(in));
    push("scattering_round_trip", text == again ? 0.0 : 1.0, 0.5);
  }

  zetacusp::ResultRecord rec;
  rec.add("command", "validate");
  echo_inputs(rec, cfg);
  rec.add("constants", "exact rational root data; reference quadrature");
  bool all_ok = true;
  zetacusp::CsvTable table({"check", "residual", "tolerance", "pass"});
  for (const auto& row : rows) {
    const bool ok = row.residual <= row.tolerance;
    all_ok = all_ok && ok;
    table.add_row({row.name, zetacusp::format_value(row.residual),
                   zetacusp::format_value(row.tolerance), ok ? "1" : "0"});
  }
  rec.add("checks", static_cast<long>(rows.size()));
  rec.add("status", all_ok ? "ok" : "failed");
  emit_artifact("validate.txt", render_record(rec, cfg) + table.to_text());
  return all_ok ? 0 : 1;
}

// ---------------------------------------------------------------------------

int run_unipotent(const RunConfig& cfg, int n) {
  const auto ud =
      zetacusp::unipotent_density(n, cfg.manifold.kappa, cfg.manifold.c_T1);
  zetacusp::ResultRecord rec;
  rec.add("command", "unipotent");
  echo_inputs(rec, cfg);
  rec.add("density_rank", static_cast<long>(n));
  const auto& coeffs = ud.polynomial_part.coeffs();
  rec.add("polynomial_terms", static_cast<long>(coeffs.size()));
  for (std::size_t k = 0; k < coeffs.size(); ++k)
    rec.add("p_coeff_" + std::to_string(2 * k),
            zetacusp::to_string(coeffs[k]) + " = " +
                zetacusp::format_value(zetacusp::to_double(coeffs[k])));
  rec.add("psi1_coeff", zetacusp::to_string(ud.psi1_coeff));
  rec.add("q_coeff", zetacusp::to_string(ud.digamma_coefficient));
  rec.add("c_t1_term", ud.c_T1);
  for (double lambda : {0.0, 1.0, 2.0}) {
    const std::string tag = zetacusp::format_value(lambda);
    rec.add("p_u(" + tag + ")", ud.polynomial_eval(lambda));
    rec.add("q(" + tag + ")", ud.q_eval(lambda));
  }
  rec.add("constants", "exact rational root data; psi(1) = -euler_gamma");
  emit_artifact("unipotent.txt", render_record(rec, cfg));
  return 0;
}

int run_zeta(const RunConfig& cfg, const std::string& parity_name,
             const std::string& s_text) {
  const Complex s = parse_complex(s_text);
  const auto spectrum = spectrum_from(cfg);
  zetacusp::ResultRecord rec;
  rec.add("command", "zeta " + parity_name);
  echo_inputs(rec, cfg);
  rec.add("s", s);
  rec.add("series_abscissa", zetacusp::series_abscissa(spectrum));
  const auto z = parity_name == "odd"
                     ? zetacusp::zeta_odd(s, spectrum, cfg.manifold.n)
                     : zetacusp::zeta_even(s, spectrum, cfg.manifold.n);
  rec.add("value", z.value);
  rec.add("exponent", z.exponent);
  rec.add("terms_used", static_cast<long>(z.terms_used));
  rec.add("tail_bound", z.tail_bound);
  const auto d = zetacusp::zeta_log_deriv(
      s, spectrum, cfg.manifold.n,
      parity_name == "odd" ? zetacusp::Parity::odd : zetacusp::Parity::even);
  rec.add("log_derivative", d.value);
  rec.add("constants", "geodesic series, exact weights");
  emit_artifact("zeta.txt", render_record(rec, cfg));
  return 0;
}

int run_eta(const RunConfig& cfg, const std::string& route_name) {
  const auto route = route_name == "zeta" ? zetacusp::EtaRoute::zeta
                                          : zetacusp::EtaRoute::heat;
  const auto spectrum = spectrum_from(cfg);
  std::optional<zetacusp::SpectralDatum> datum;
  if (!cfg.scattering_path.empty() || !cfg.eigenvalues.empty() ||
      cfg.kernel_dimension > 0)
    datum = datum_from(cfg);
  const Complex eta = zetacusp::eta_invariant(
      datum ? &*datum : nullptr, spectrum.empty() ? nullptr : &spectrum,
      cfg.manifold.n, route);
  zetacusp::ResultRecord rec;
  rec.add("command", "eta");
  echo_inputs(rec, cfg);
  rec.add("route", route_name);
  rec.add("input", datum ? (spectrum.empty() ? "spectral" : "spectral+geodesic")
                         : "geodesic");
  rec.add("eta", eta);
  rec.add("constants", "quadrature tolerance 1e-12; exact resolvent tail");
  emit_artifact("eta.txt", render_record(rec, cfg));
  return 0;
}

int run_det(const RunConfig& cfg, const std::string& grid_text) {
  const auto grid = parse_grid(grid_text);
  const auto datum = datum_from(cfg);
  const auto spectrum = spectrum_from(cfg);
  zetacusp::ResultRecord rec;
  rec.add("command", "det");
  echo_inputs(rec, cfg);
  rec.add("grid", grid_text);
  rec.add("constants", "product constant anchored at s = 1 (mellin route)");
  zetacusp::CsvTable table(
      {"s", "log_det_mellin", "log_det_product", "difference"});
  for (double s : grid) {
    const double a = zetacusp::regularized_determinant(
        s, datum, cfg.manifold, spectrum, zetacusp::DetRoute::mellin);
    const double b = zetacusp::regularized_determinant(
        s, datum, cfg.manifold, spectrum, zetacusp::DetRoute::product);
    table.add_row({zetacusp::format_value(s), zetacusp::format_value(a),
                   zetacusp::format_value(b), zetacusp::format_value(a - b)});
  }
  emit_artifact("det.csv", render_record(rec, cfg) + table.to_text());
  return 0;
}

int run_heat_trace(const RunConfig& cfg, const std::string& grid_text,
                   const std::string& parity_name) {
  const auto parity = parity_name == "odd" ? zetacusp::Parity::odd
                                           : zetacusp::Parity::even;
  const auto grid = parse_grid(grid_text);
  const auto datum = datum_from(cfg);
  const auto spectrum = spectrum_from(cfg);
  zetacusp::ResultRecord rec;
  rec.add("command", "heat-trace " + parity_name);
  echo_inputs(rec, cfg);
  rec.add("grid", grid_text);
  rec.add("constants", "geodesic tail bounds as emitted per row");
  zetacusp::CsvTable table({"t", "I", "H", "U", "total", "spectral",
                            "residual"});
  for (double t : grid) {
    const double ival = zetacusp::identity_term(t, cfg.manifold, parity);
    const auto h = zetacusp::hyperbolic_term(t, spectrum, cfg.manifold.n,
                                             parity);
    const double uval = zetacusp::unipotent_term(t, cfg.manifold, parity);
    const double spectral =
        zetacusp::relative_trace_spectral(t, datum, parity);
    const double residual = zetacusp::selberg_consistency_residual(
        t, cfg.manifold, spectrum, datum, parity);
    const double hval =
        parity == zetacusp::Parity::odd ? h.value.imag() : h.value.real();
    table.add_row({zetacusp::format_value(t), zetacusp::format_value(ival),
                   zetacusp::format_value(hval), zetacusp::format_value(uval),
                   zetacusp::format_value(ival + hval + uval),
                   zetacusp::format_value(spectral),
                   zetacusp::format_value(residual)});
  }
  emit_artifact("heat_trace.csv", render_record(rec, cfg) + table.to_text());
  return 0;
}

void append_ledger(std::string& out, const std::string& name,
                   const zetacusp::PoleLedger& ledger, const RunConfig& cfg) {
  zetacusp::ResultRecord rec;
  rec.add("ledger", name);
  rec.add("entries", static_cast<long>(ledger.entries.size()));
  out += render_record(rec, cfg);
  zetacusp::CsvTable table({"location_re", "location_im", "order",
                            "residue_re", "residue_im", "source"});
  for (const auto& e : ledger.entries)
    table.add_row({zetacusp::format_value(e.location.real()),
                   zetacusp::format_value(e.location.imag()),
                   std::to_string(e.order),
                   zetacusp::format_value(e.residue.real()),
                   zetacusp::format_value(e.residue.imag()), e.source});
  out += table.to_text();
}

int run_poles(const RunConfig& cfg) {
  const auto datum = datum_from(cfg);
  const auto spectrum = spectrum_from(cfg);
  std::string out;
  zetacusp::ResultRecord head;
  head.add("command", "poles");
  echo_inputs(head, cfg);
  head.add("constants", "residues exact in the model data");
  out += render_record(head, cfg);
  append_ledger(out, "scattering_odd",
                zetacusp::pole_ledger(datum.scattering,
                                      zetacusp::LedgerVariant::odd),
                cfg);
  append_ledger(out, "scattering_even",
                zetacusp::pole_ledger(datum.scattering,
                                      zetacusp::LedgerVariant::even),
                cfg);
  append_ledger(out, "resolvent_even",
                zetacusp::resolvent_pole_ledger(datum, zetacusp::Parity::even),
                cfg);
  append_ledger(out, "resolvent_odd",
                zetacusp::resolvent_pole_ledger(datum, zetacusp::Parity::odd),
                cfg);
  const auto expansion = zetacusp::heat_trace_expansion(
      cfg.manifold, spectrum, datum, cfg.truncation_k);
  const auto weighted = zetacusp::eta_zeta_ledgers(
      expansion, datum.kernel_dimension, /*gamma_weighted=*/true);
  const auto divided = zetacusp::eta_zeta_ledgers(
      expansion, datum.kernel_dimension, /*gamma_weighted=*/false);
  append_ledger(out, "eta_gamma_weighted", weighted.eta, cfg);
  append_ledger(out, "zeta_gamma_weighted", weighted.zeta, cfg);
  append_ledger(out, "eta", divided.eta, cfg);
  append_ledger(out, "zeta", divided.zeta, cfg);
  emit_artifact("poles.csv", out);
  return 0;
}

int run_verify_fe(const RunConfig& cfg, const std::string& parity_name,
                  const std::string& s_text) {
  const Complex s = parse_complex(s_text);
  const auto datum = datum_from(cfg);
  const auto report =
      parity_name == "odd" ? zetacusp::verify_fe_odd(s, datum)
                           : zetacusp::verify_fe_even(s, datum, cfg.manifold);
  zetacusp::ResultRecord rec;
  rec.add("command", "verify-fe " + parity_name);
  echo_inputs(rec, cfg);
  rec.add("s", s);
  rec.add("lhs", report.lhs);
  rec.add("rhs", report.rhs);
  rec.add("residual", report.residual);
  rec.add("pass", report.residual <= std::max(1e-6, cfg.tolerance) ? "1" : "0");
  rec.add("constants",
          parity_name == "odd"
              ? "eta routes: zeta (lhs anchor), heat (rhs)"
              : "two-point ratio against s0 = 0.7");
  emit_artifact("verify_fe.txt", render_record(rec, cfg));
  return 0;
}

int run_ms_check(const RunConfig& cfg, double lambda, double big_r) {
  const auto datum = datum_from(cfg);
  const auto result =
      zetacusp::maass_selberg_check(datum.scattering, lambda, big_r);
  zetacusp::ResultRecord rec;
  rec.add("command", "ms-check");
  echo_inputs(rec, cfg);
  rec.add("lambda", lambda);
  rec.add("R", big_r);
  rec.add("lhs", result.lhs);
  rec.add("rhs", result.rhs);
  rec.add("residual", result.residual);
  double decay = 0.0;
  for (const auto& p : datum.scattering.plus.poles)
    decay = std::max(decay, std::exp(2.0 * p.q.real() * big_r));
  rec.add("expected_decay", decay);
  rec.add("constants", "truncation at r = R; section mass by quadrature");
  emit_artifact("ms_check.txt", render_record(rec, cfg));
  return result.residual <= std::max(1e-3, 10.0 * decay) ? 0 : 1;
}

int emit_error(const RunConfig& cfg, const std::string& command,
               const std::string& what) {
  zetacusp::ResultRecord rec;
  rec.add("command", command);
  rec.add("status", "error");
  rec.add("error", what);
  emit_artifact("error.txt", render_record(rec, cfg));
  return 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Relative spectral invariants of cusped hyperbolic manifolds"};
  app.require_subcommand(1);

  std::string config_path;
  RunConfig overrides;
  bool have_n = false, have_kappa = false, have_volume = false,
       have_scale = false, have_ct1 = false, have_tol = false,
       have_k = false, have_format = false, have_kernel = false;
  std::vector<std::string> eigen_args;

  app.add_option("--config", config_path, "run configuration file");
  app.add_option("--n", overrides.manifold.n, "half rank n")
      ->each([&](const std::string&) { have_n = true; });
  app.add_option("--kappa", overrides.manifold.kappa, "number of cusps")
      ->each([&](const std::string&) { have_kappa = true; });
  app.add_option("--volume", overrides.manifold.volume, "manifold volume")
      ->each([&](const std::string&) { have_volume = true; });
  app.add_option("--plancherel-scale", overrides.manifold.plancherel_scale,
                 "identity-term normalization")
      ->each([&](const std::string&) { have_scale = true; });
  app.add_option("--c-t1", overrides.manifold.c_T1, "cusp constant term")
      ->each([&](const std::string&) { have_ct1 = true; });
  app.add_option("--spectrum", overrides.spectrum_path,
                 "length spectrum file");
  app.add_option("--scattering", overrides.scattering_path,
                 "scattering model file");
  app.add_option("--tolerance", overrides.tolerance,
                 "result tolerance, in [1e-14, 1e-4]")
      ->each([&](const std::string&) { have_tol = true; });
  app.add_option("--truncation-k", overrides.truncation_k,
                 "expansion truncation order")
      ->each([&](const std::string&) { have_k = true; });
  app.add_option("--format", overrides.format, "record format: text or csv")
      ->each([&](const std::string&) { have_format = true; });
  app.add_option("--kernel-dimension", overrides.kernel_dimension,
                 "dimension h of the relative kernel")
      ->each([&](const std::string&) { have_kernel = true; });
  app.add_option("--eigenvalue", eigen_args,
                 "point eigenvalue LAMBDA,MULT,SIGN (repeatable)");

  auto* cmd_validate = app.add_subcommand("validate", "exact invariant suite");

  int uni_n = 1;
  auto* cmd_unipotent =
      app.add_subcommand("unipotent", "cusp density data for rank n");
  cmd_unipotent->add_option("--n", uni_n, "density rank")->required();

  std::string zeta_parity, zeta_s = "4,0";
  auto* cmd_zeta = app.add_subcommand("zeta", "geodesic product value");
  cmd_zeta->add_option("parity", zeta_parity, "odd or even")
      ->required()
      ->check(CLI::IsMember({"odd", "even"}));
  cmd_zeta->add_option("--s", zeta_s, "evaluation point RE,IM");

  std::string eta_route = "heat";
  auto* cmd_eta = app.add_subcommand("eta", "eta invariant");
  cmd_eta->add_option("--route", eta_route, "heat or zeta")
      ->check(CLI::IsMember({"heat", "zeta"}));

  std::string det_grid = "0.5:2:0.25";
  auto* cmd_det =
      app.add_subcommand("det", "regularized determinant, both routes");
  cmd_det->add_option("--s-grid", det_grid, "shift grid A:B:STEP");

  std::string ht_grid = "0.5:3:0.5", ht_parity = "even";
  auto* cmd_heat = app.add_subcommand("heat-trace", "trace side-by-side");
  cmd_heat->add_option("--t-grid", ht_grid, "time grid A:B:STEP");
  cmd_heat->add_option("--parity", ht_parity, "even or odd")
      ->check(CLI::IsMember({"even", "odd"}));

  auto* cmd_poles = app.add_subcommand("poles", "pole ledgers");

  std::string fe_parity, fe_s = "0.3,0";
  auto* cmd_fe = app.add_subcommand("verify-fe", "functional equation check");
  cmd_fe->add_option("parity", fe_parity, "odd or even")
      ->required()
      ->check(CLI::IsMember({"odd", "even"}));
  cmd_fe->add_option("--s", fe_s, "evaluation point RE,IM");

  double ms_lambda = 1.0, ms_r = 5.0;
  auto* cmd_ms = app.add_subcommand("ms-check", "truncated section mass");
  cmd_ms->add_option("--lambda", ms_lambda, "spectral parameter")->required();
  cmd_ms->add_option("--R", ms_r, "truncation radius")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  RunConfig cfg;
  std::string command = "?";
  try {
    if (!config_path.empty()) cfg = load_run_config(config_path);
    if (have_n) cfg.manifold.n = overrides.manifold.n;
    if (have_kappa) cfg.manifold.kappa = overrides.manifold.kappa;
    if (have_volume) cfg.manifold.volume = overrides.manifold.volume;
    if (have_scale)
      cfg.manifold.plancherel_scale = overrides.manifold.plancherel_scale;
    if (have_ct1) cfg.manifold.c_T1 = overrides.manifold.c_T1;
    if (!overrides.spectrum_path.empty())
      cfg.spectrum_path = overrides.spectrum_path;
    if (!overrides.scattering_path.empty())
      cfg.scattering_path = overrides.scattering_path;
    if (have_tol) cfg.tolerance = overrides.tolerance;
    if (have_k) cfg.truncation_k = overrides.truncation_k;
    if (have_format) cfg.format = overrides.format;
    if (have_kernel) cfg.kernel_dimension = overrides.kernel_dimension;
    for (const auto& text : eigen_args) {
      std::string t = text;
      for (auto& c : t)
        if (c == ',') c = ' ';
      std::istringstream in(t);
      zetacusp::Eigenvalue ev;
      if (!(in >> ev.lambda >> ev.multiplicity >> ev.sign))
        throw UsageError("eigenvalue must be LAMBDA,MULT,SIGN: " + text);
      cfg.eigenvalues.push_back(ev);
    }
    check_config(cfg);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (cmd_validate->parsed()) {
      command = "validate";
      return run_validate(cfg);
    }
    if (cmd_unipotent->parsed()) {
      command = "unipotent";
      return run_unipotent(cfg, uni_n);
    }
    if (cmd_zeta->parsed()) {
      command = "zeta";
      return run_zeta(cfg, zeta_parity, zeta_s);
    }
    if (cmd_eta->parsed()) {
      command = "eta";
      return run_eta(cfg, eta_route);
    }
    if (cmd_det->parsed()) {
      command = "det";
      return run_det(cfg, det_grid);
    }
    if (cmd_heat->parsed()) {
      command = "heat-trace";
      return run_heat_trace(cfg, ht_grid, ht_parity);
    }
    if (cmd_poles->parsed()) {
      command = "poles";
      return run_poles(cfg);
    }
    if (cmd_fe->parsed()) {
      command = "verify-fe";
      return run_verify_fe(cfg, fe_parity, fe_s);
    }
    if (cmd_ms->parsed()) {
      command = "ms-check";
      return run_ms_check(cfg, ms_lambda, ms_r);
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const zetacusp::PoleEvaluation& e) {
    return emit_error(cfg, command, std::string("pole: ") + e.what());
  } catch (const zetacusp::ConvergenceError& e) {
    return emit_error(cfg, command,
                      std::string(e.what()) + "; abscissa estimate " +
                          zetacusp::format_value(e.abscissa()));
  } catch (const std::exception& e) {
    return emit_error(cfg, command, e.what());
  }
  return 2;
}
