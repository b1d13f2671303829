#include "zetacusp/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "zetacusp/parse_error.hpp"
#include "zetacusp/quadrature.hpp"

namespace zetacusp {

namespace {

constexpr double kMergeTol = 1e-12;

void sort_poles(std::vector<ScatteringPole>& poles) {
  std::sort(poles.begin(), poles.end(),
            [](const ScatteringPole& a, const ScatteringPole& b) {
              if (a.q.real() != b.q.real()) return a.q.real() < b.q.real();
              return a.q.imag() < b.q.imag();
            });
}

void normalize_block(ScatteringBlock& block, const char* name) {
  for (const auto& p : block.poles) {
    if (!(p.q.real() < 0.0))
      throw std::invalid_argument(std::string("block ") + name +
                                  ": pole with Re(q) >= 0");
    if (p.order < 1)
      throw std::invalid_argument(std::string("block ") + name +
                                  ": pole order must be >= 1");
  }
  if (!(block.p_const > 0.0))
    throw std::invalid_argument(std::string("block ") + name +
                                ": p_const must be positive");
  double mod = std::abs(block.base);
  if (std::abs(mod - 1.0) > 1e-12)
    throw std::invalid_argument(std::string("block ") + name +
                                ": base value must have unit modulus");
  block.base /= mod;
  std::vector<ScatteringPole> merged;
  for (const auto& p : block.poles) {
    bool found = false;
    for (auto& m : merged)
      if (std::abs(m.q - p.q) <= kMergeTol) {
        m.order += p.order;
        found = true;
        break;
      }
    if (!found) merged.push_back(p);
  }
  std::vector<ScatteringPole> closed = merged;
  for (const auto& p : merged) {
    if (std::abs(p.q.imag()) <= kMergeTol) continue;
    Complex conj_q = std::conj(p.q);
    bool found = false;
    for (const auto& m : merged)
      if (std::abs(m.q - conj_q) <= kMergeTol) {
        found = true;
        break;
      }
    if (!found) closed.push_back({conj_q, p.order});
  }
  block.poles = std::move(closed);
  sort_poles(block.poles);
}

double min_pole_modulus(const ScatteringModel& model) {
  double rho = std::numeric_limits<double>::infinity();
  for (const auto* blk : {&model.plus, &model.minus})
    for (const auto& p : blk->poles) rho = std::min(rho, std::abs(p.q));
  return rho;
}

// delta^m S(0) / h^m over the minimal centered stencil; error series in h^2.
constexpr double kPi = 3.14159265358979323846;

struct ParityTracker {
  double max_abs = 0.0;
  double max_off = 0.0;
};

}  // namespace

PoleEvaluation::PoleEvaluation(const PoleLedgerEntry& entry,
                               const std::string& what)
    : std::runtime_error(what), entry_(entry) {}

ScatteringModel parse_scattering_model(std::istream& in) {
  ScatteringModel model;
  model.minus_specified = false;
  ScatteringBlock* current = nullptr;
  bool saw_kappa = false;
  bool saw_n = false;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    auto require_block = [&]() -> ScatteringBlock& {
      if (current == nullptr)
        throw ParseError(lineno, "'" + key + "' before any block directive");
      return *current;
    };
    auto read_double = [&](double& v) {
      if (!(ls >> v))
        throw ParseError(lineno, "expected a number after '" + key + "'");
    };
    if (key == "kappa") {
      int v;
      if (!(ls >> v) || v < 1) throw ParseError(lineno, "bad kappa value");
      model.kappa = v;
      saw_kappa = true;
    } else if (key == "n") {
      int v;
      if (!(ls >> v) || v < 1) throw ParseError(lineno, "bad n value");
      model.n = v;
      saw_n = true;
    } else if (key == "block") {
      std::string which;
      if (!(ls >> which)) throw ParseError(lineno, "block requires plus|minus");
      if (which == "plus") {
        current = &model.plus;
      } else if (which == "minus") {
        current = &model.minus;
        model.minus_specified = true;
      } else {
        throw ParseError(lineno, "unknown block '" + which + "'");
      }
    } else if (key == "p_const") {
      double v;
      read_double(v);
      require_block().p_const = v;
    } else if (key == "base") {
      double re, im;
      read_double(re);
      read_double(im);
      require_block().base = {re, im};
    } else if (key == "pole") {
      double re, im;
      int order;
      read_double(re);
      read_double(im);
      if (!(ls >> order)) throw ParseError(lineno, "pole requires an order");
      require_block().poles.push_back({{re, im}, order});
    } else {
      throw ParseError(lineno, "unknown key '" + key + "'");
    }
    std::string rest;
    if (ls >> rest)
      throw ParseError(lineno, "trailing tokens after '" + key + "'");
  }
  if (!saw_kappa) throw ParseError(lineno, "missing kappa");
  if (!saw_n) throw ParseError(lineno, "missing n");
  return model;
}

ScatteringModel load_scattering_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return parse_scattering_model(in);
}

std::string serialize_scattering_model(const ScatteringModel& model) {
  std::string out;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "kappa %d\nn %d\n", model.kappa, model.n);
  out += buf;
  auto emit_block = [&](const ScatteringBlock& blk, const char* name) {
    out += std::string("block ") + name + "\n";
    std::snprintf(buf, sizeof(buf), "p_const %.17g\nbase %.17g %.17g\n",
                  blk.p_const, blk.base.real(), blk.base.imag());
    out += buf;
    for (const auto& p : blk.poles) {
      std::snprintf(buf, sizeof(buf), "pole %.17g %.17g %d\n", p.q.real(),
                    p.q.imag(), p.order);
      out += buf;
    }
  };
  emit_block(model.plus, "plus");
  if (model.minus_specified) emit_block(model.minus, "minus");
  return out;
}

ScatteringModel build_model(const ScatteringModel& raw) {
  if (raw.kappa < 1) throw std::invalid_argument("kappa must be >= 1");
  if (raw.n < 1) throw std::invalid_argument("n must be >= 1");
  ScatteringModel model = raw;
  normalize_block(model.plus, "plus");
  if (raw.minus_specified) {
    normalize_block(model.minus, "minus");
  } else {
    // det C-(z) = 1 / det C+(-z) over the conjugation-closed plus set.
    model.minus.poles = model.plus.poles;
    model.minus.p_const = model.plus.p_const;
    model.minus.base = 1.0 / model.plus.base;
    model.minus_specified = true;
  }
  auto near_singular = [&](Complex s) {
    for (const auto& p : model.plus.poles)
      if (std::abs(s - p.q) < 0.1 || std::abs(s + std::conj(p.q)) < 0.1)
        return true;
    for (const auto& p : model.minus.poles)
      if (std::abs(s + p.q) < 0.1 || std::abs(s - std::conj(p.q)) < 0.1)
        return true;
    return false;
  };
  for (double re = -2.0; re <= 2.0 + 1e-9; re += 0.5) {
    for (double im = -1.0; im <= 1.0 + 1e-9; im += 0.5) {
      Complex s{re, im};
      if (near_singular(s)) continue;
      Complex v = det_value(model.plus, s) * det_value(model.minus, -s);
      if (std::abs(v - 1.0) > 1e-12) {
        std::ostringstream os;
        os << "functional equation violated at s = (" << re << ", " << im
           << "): |det C+ det C- - 1| = " << std::abs(v - 1.0);
        throw std::invalid_argument(os.str());
      }
    }
  }
  return model;
}

Complex det_value(const ScatteringBlock& block, Complex z) {
  Complex v = block.base * std::exp(z * std::log(block.p_const));
  for (const auto& p : block.poles) {
    Complex factor = (z + std::conj(p.q)) / (z - p.q);
    for (int k = 0; k < p.order; ++k) v *= factor;
  }
  return v;
}

namespace {

Complex block_log_deriv(const ScatteringBlock& block, Complex z,
                        const char* name) {
  Complex sum = std::log(block.p_const);
  for (const auto& p : block.poles) {
    double tol = 1e-10 * (1.0 + std::abs(p.q));
    if (std::abs(z - p.q) < tol)
      throw PoleEvaluation(
          {p.q, p.order, Complex(-p.order, 0.0), std::string(name)},
          "log-derivative evaluated at a determinant pole");
    if (std::abs(z + std::conj(p.q)) < tol)
      throw PoleEvaluation({-std::conj(p.q), p.order,
                            Complex(p.order, 0.0), std::string(name)},
                           "log-derivative evaluated at a determinant zero");
    sum -= 2.0 * p.q.real() * static_cast<double>(p.order) /
           ((z - p.q) * (z + std::conj(p.q)));
  }
  return sum;
}

}  // namespace

Complex log_deriv_det(const ScatteringModel& model, Block block, Complex z) {
  switch (block) {
    case Block::plus:
      return block_log_deriv(model.plus, z, "plus");
    case Block::minus:
      return block_log_deriv(model.minus, z, "minus");
    case Block::phi:
      return block_log_deriv(model.plus, z, "plus") -
             block_log_deriv(model.minus, z, "minus");
    case Block::psi:
      return block_log_deriv(model.plus, z, "plus") +
             block_log_deriv(model.minus, z, "minus");
  }
  throw std::logic_error("unreachable block kind");
}

TaylorCoeffs taylor_coeffs(const ScatteringModel& model, int K) {
  if (K < 0 || K > 4)
    throw std::domain_error("taylor_coeffs supports K in [0, 4]");
  double rho = min_pole_modulus(model);
  if (rho < 1e-3)
    throw std::range_error(
        "pole within 1e-3 of the origin; the sampling circle cannot be "
        "placed");
  const double dfac = static_cast<double>(model.d());
  auto F_raw = [&](double lam) {
    return dfac * log_deriv_det(model, Block::phi, Complex(0.0, lam)).real();
  };
  auto G_raw = [&](double lam) {
    return dfac * log_deriv_det(model, Block::psi, Complex(0.0, lam)).real();
  };
  ParityTracker trF, trG;
  auto project = [](const std::function<double(double)>& raw,
                    ParityTracker& tr, int parity) {
    return [&raw, &tr, parity](double x) {
      double a = raw(x);
      double b = raw(-x);
      tr.max_abs = std::max({tr.max_abs, std::abs(a), std::abs(b)});
      double proj = parity > 0 ? 0.5 * (a + b) : 0.5 * (a - b);
      double off = parity > 0 ? 0.5 * (a - b) : 0.5 * (a + b);
      tr.max_off = std::max(tr.max_off, std::abs(off));
      return proj;
    };
  };
  std::function<double(double)> F = F_raw;
  std::function<double(double)> G = G_raw;
  auto F_odd = project(F, trF, -1);
  auto G_even = project(G, trG, +1);
  // Trapezoid ring sums on a circle strictly inside the pole set; spectrally
  // accurate, so the m = 8 coefficient keeps full precision where a
  // difference stencil loses half the digits to roundoff.
  const double r = std::min(0.5, 0.75 * rho);
  const int N = 128;
  std::vector<Complex> phi_ring(static_cast<std::size_t>(N));
  std::vector<Complex> psi_ring(static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i) {
    const Complex z = std::polar(r, 2.0 * kPi * i / N);
    const Complex iz(-z.imag(), z.real());
    phi_ring[static_cast<std::size_t>(i)] =
        dfac * log_deriv_det(model, Block::phi, iz);
    psi_ring[static_cast<std::size_t>(i)] =
        dfac * log_deriv_det(model, Block::psi, iz);
  }
  auto ring_coeff = [&](const std::vector<Complex>& vals, int m) {
    Complex acc = 0.0;
    for (int i = 0; i < N; ++i) {
      const double th = 2.0 * kPi * i * m / N;
      acc += vals[static_cast<std::size_t>(i)] *
             Complex(std::cos(th), -std::sin(th));
    }
    return acc.real() / (static_cast<double>(N) * std::pow(r, m));
  };
  TaylorCoeffs out;
  for (int m = 0; m <= 2 * K; ++m) {
    if (m % 2 == 1) {
      if ((m - 1) / 2 < K) out.f.push_back(ring_coeff(phi_ring, m));
    } else {
      out.g.push_back(ring_coeff(psi_ring, m));
    }
  }
  // Real-axis audit; the ring sums assume phi is genuinely odd and psi even.
  for (int i = 1; i <= 8; ++i) {
    (void)F_odd(r * i / 8.0);
    (void)G_even(r * i / 8.0);
  }
  double scale = std::max({1.0, trF.max_abs, trG.max_abs});
  out.parity_residual = std::max(trF.max_off, trG.max_off) / scale;
  if (out.parity_residual > 1e-9)
    throw std::invalid_argument(
        "model breaks the odd/even parity of the trace combinations "
        "(residual " +
        std::to_string(out.parity_residual) + ")");
  return out;
}

LargeTimeCoeffs large_time_coeffs(const ScatteringModel& model, int K) {
  TaylorCoeffs tc = taylor_coeffs(model, K);
  LargeTimeCoeffs out;
  for (int k = 0; k < K; ++k)
    out.gamma.push_back(tc.f[static_cast<std::size_t>(k)] *
                        std::tgamma(k + 1.5));
  for (int k = 0; k <= K; ++k)
    out.gamma_prime.push_back(tc.g[static_cast<std::size_t>(k)] *
                              std::tgamma(k + 0.5));
  const double dfac = static_cast<double>(model.d());
  double rho = min_pole_modulus(model);
  auto F = [&](double lam) {
    return dfac * log_deriv_det(model, Block::phi, Complex(0.0, lam)).real();
  };
  auto G = [&](double lam) {
    return dfac * log_deriv_det(model, Block::psi, Complex(0.0, lam)).real();
  };
  double amp = 0.0;
  for (double x : {0.0, 0.3, 0.7, 1.0})
    amp = std::max({amp, std::abs(F(x)), std::abs(G(x))});
  auto validate = [&](const std::vector<double>& coeffs, double shift,
                      const std::function<double(double)>& integrand,
                      double t, const char* label) {
    if (coeffs.empty()) return;
    double quad = integrate(
        [&](double lam) { return std::exp(-t * lam * lam) * integrand(lam); },
        -1.0, 1.0);
    double sum = 0.0;
    double last = 0.0;
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      last = coeffs[k] * std::pow(t, -(static_cast<double>(k) + shift));
      sum += last;
    }
    if (std::abs(quad) < 1e-10 && std::abs(sum) < 1e-10) return;
    double omitted = 0.0;
    if (std::isfinite(rho))
      omitted = 4.0 * std::abs(last) *
                (static_cast<double>(coeffs.size()) + shift) / (rho * rho * t);
    double tail = 2.0 * amp * std::exp(-t) / t;
    double tol = std::max(1e-6 * std::abs(quad), omitted + tail);
    if (std::abs(quad - sum) > tol)
      throw std::logic_error(std::string("large-time ") + label +
                             " series disagrees with quadrature at t = " +
                             std::to_string(t) + ": |" + std::to_string(quad) +
                             " - " + std::to_string(sum) + "| > " +
                             std::to_string(tol));
  };
  for (double t : {100.0, 10.0}) {
    validate(
        out.gamma, 1.5, [&](double lam) { return lam * F(lam); }, t, "gamma");
    validate(out.gamma_prime, 0.5, G, t, "gamma'");
  }
  return out;
}

ModelEisenstein model_eisenstein(const ScatteringModel& model, double lambda,
                                 int section_sign) {
  ModelEisenstein e;
  e.n = model.n;
  e.lambda = lambda;
  e.section_sign = section_sign >= 0 ? 1 : -1;
  const ScatteringBlock& blk = e.section_sign > 0 ? model.plus : model.minus;
  e.scattering_value = det_value(blk, Complex(0.0, lambda));
  e.incoming_coeff = {1.0, 0.0};
  e.outgoing_coeff = e.scattering_value;
  return e;
}

MaassSelbergResult maass_selberg_check(const ScatteringModel& model,
                                       double lambda, double R) {
  if (model.kappa != 1)
    throw std::invalid_argument("maass_selberg_check requires kappa = 1");
  if (lambda == 0.0)
    throw std::domain_error("lambda = 0 is degenerate for the cylinder check");
  if (!(R > 0.0)) throw std::invalid_argument("R must be positive");
  const ScatteringBlock& blk = model.plus;
  if (blk.p_const != 1.0 || std::abs(blk.base - Complex(1.0, 0.0)) > 1e-12)
    throw std::invalid_argument(
        "scalar cylinder model requires p = 1 and base = 1");
  if (blk.poles.size() > 1)
    throw std::invalid_argument(
        "scalar cylinder model supports at most one plus-block pole");
  if (!blk.poles.empty() && std::abs(blk.poles.front().q.imag()) > 1e-12)
    throw std::invalid_argument("cylinder model pole must be real");
  ModelEisenstein section = model_eisenstein(model, lambda, +1);
  double unit_mass = std::norm(section.incoming_coeff) +
                     std::norm(section.outgoing_coeff);  // 2 for |C| = 1
  double g = -log_deriv_det(model, Block::plus, Complex(0.0, lambda)).real();
  MaassSelbergResult result;
  if (blk.poles.empty()) {
    result.lhs = unit_mass * R;
  } else {
    // Interior resonance profile -2 Re(q) g e^{2 Re(q) r}; total mass over
    // [0, R] closed-form, converging to g as R grows.
    double a = 2.0 * blk.poles.front().q.real();
    result.lhs = unit_mass * R + g * (1.0 - std::exp(a * R));
  }
  result.rhs = unit_mass * R + g;
  result.residual = std::abs(result.lhs - result.rhs);
  return result;
}

PoleLedger pole_ledger(const ScatteringModel& model, LedgerVariant variant) {
  PoleLedger ledger;
  double dfac = static_cast<double>(model.d());
  for (const auto& p : model.plus.poles)
    ledger.entries.push_back(
        {p.q, p.order, Complex(dfac * p.order, 0.0), "scattering plus"});
  double minus_sign = variant == LedgerVariant::odd ? -1.0 : 1.0;
  for (const auto& p : model.minus.poles)
    ledger.entries.push_back({p.q, p.order,
                              Complex(minus_sign * dfac * p.order, 0.0),
                              "scattering minus"});
  std::sort(ledger.entries.begin(), ledger.entries.end(),
            [](const PoleLedgerEntry& a, const PoleLedgerEntry& b) {
              if (a.location.real() != b.location.real())
                return a.location.real() < b.location.real();
              return a.location.imag() < b.location.imag();
            });
  return ledger;
}

}  // namespace zetacusp
