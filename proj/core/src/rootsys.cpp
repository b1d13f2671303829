#include "zetacusp/rootsys.hpp"

#include <cmath>
#include <stdexcept>

#include "zetacusp/specfun.hpp"

namespace zetacusp {

namespace {

WeightEntry negate(const WeightEntry& e) {
  WeightEntry out = e;
  if (out.is_ilambda)
    out.ilambda_sign = -out.ilambda_sign;
  else
    out.value = -out.value;
  return out;
}

// (entry)^2 as an even polynomial: (i lambda)^2 = -lambda^2.
EvenPolynomial entry_square(const WeightEntry& e) {
  if (e.is_ilambda) return EvenPolynomial({Rational(0), Rational(-1)});
  return EvenPolynomial::constant(e.value * e.value);
}

Rational pi_rho(int n) {
  Rational out = 1;
  // rho tail entries n-1, ..., 1, 0 on e_2..e_{n+1}
  for (int i = 2; i <= n + 1; ++i)
    for (int j = i + 1; j <= n + 1; ++j) {
      const Rational a = n + 1 - i, b = n + 1 - j;
      out *= a * a - b * b;
    }
  return out;
}

}  // namespace

RootDatum build_root_datum(int n) {
  if (n < 1) throw std::domain_error("build_root_datum requires n >= 1");
  RootDatum d;
  d.n = n;
  for (int i = 2; i <= n + 1; ++i)
    for (int j = i + 1; j <= n + 1; ++j) {
      d.sigma_M.push_back({i, j, -1});
      d.sigma_M.push_back({i, j, 1});
    }
  for (int j = 2; j <= n + 1; ++j) {
    d.sigma_A.push_back({1, j, -1});
    d.sigma_A.push_back({1, j, 1});
  }
  return d;
}

WeightVector lambda_sigma(int n, int sigma_sign) {
  if (n < 1) throw std::domain_error("lambda_sigma requires n >= 1");
  WeightVector w;
  w.coords.resize(n + 1);
  w.coords[0].is_ilambda = true;
  for (int p = 2; p <= n; ++p) w.coords[p - 1].value = Rational(2 * (n - p) + 3, 2);
  if (n >= 2) w.coords[1].value = Rational(2 * n - 1, 2);
  w.coords[n].value = Rational(sigma_sign >= 0 ? 1 : -1, 2);
  return w;
}

WeightVector rho_sigma_m(int n) {
  WeightVector w;
  w.coords.resize(n + 1);
  for (int p = 2; p <= n + 1; ++p) w.coords[p - 1].value = n + 1 - p;
  return w;
}

WeightVector reflect(const WeightVector& w, const RootVector& alpha) {
  WeightVector out = w;
  auto& a = out.coords.at(alpha.i - 1);
  auto& b = out.coords.at(alpha.j - 1);
  if (alpha.sign < 0) {
    std::swap(a, b);
  } else {
    const WeightEntry tmp = a;
    a = negate(b);
    b = negate(tmp);
  }
  return out;
}

Pairing pair_root(const WeightVector& w, const RootVector& alpha) {
  const auto& a = w.coords.at(alpha.i - 1);
  const auto& b = w.coords.at(alpha.j - 1);
  Pairing p{0, 0};
  if (a.is_ilambda)
    p.ilambda_coeff += a.ilambda_sign;
  else
    p.constant += a.value;
  if (b.is_ilambda)
    p.ilambda_coeff += alpha.sign * b.ilambda_sign;
  else
    p.constant += alpha.sign * b.value;
  return p;
}

std::complex<double> Pairing::eval(double lambda) const {
  return {to_double(constant), to_double(ilambda_coeff) * lambda};
}

EvenPolynomial pi_product(const RootDatum& datum, const WeightVector& w) {
  if (static_cast<int>(w.coords.size()) != datum.n + 1)
    throw std::domain_error("pi_product: weight dimension mismatch");
  EvenPolynomial out = EvenPolynomial::constant(1);
  // (w_i - w_j)(w_i + w_j) = w_i^2 - w_j^2 over the D_n pairs
  for (int i = 2; i <= datum.n + 1; ++i)
    for (int j = i + 1; j <= datum.n + 1; ++j)
      out = out * (entry_square(w.coords[i - 1]) - entry_square(w.coords[j - 1]));
  return out;
}

long weyl_dimension(int n) {
  if (n < 1) throw std::domain_error("weyl_dimension requires n >= 1");
  const RootDatum datum = build_root_datum(n);
  const EvenPolynomial num = pi_product(datum, lambda_sigma(n, 1));
  const Rational den = pi_rho(n);
  if (num.degree() != 0)
    throw std::logic_error("weyl_dimension: numerator not constant");
  const Rational d = num.coeff(0) / den;
  const Rational expected = rational_pow(Rational(2), n - 1);
  if (d != expected)
    throw std::logic_error("weyl_dimension: exact value disagrees with 2^(n-1)");
  return static_cast<long>(1L << (n - 1));
}

std::vector<ReflectedProduct> reflected_products(int n, int sigma_sign) {
  std::vector<ReflectedProduct> out;
  if (n < 1) throw std::domain_error("reflected_products requires n >= 1");
  if (n == 1) return out;
  const RootDatum datum = build_root_datum(n);
  const WeightVector ls = lambda_sigma(n, sigma_sign);
  for (int j = 2; j <= n + 1; ++j) {
    const WeightVector wm = reflect(ls, {1, j, -1});
    const WeightVector wp = reflect(ls, {1, j, 1});
    const EvenPolynomial pj = pi_product(datum, wm);
    if (!(pi_product(datum, wp) == pj))
      throw std::logic_error("reflected_products: s_{e1-ej} != s_{e1+ej}");
    Rational cj = 1;
    for (int i = 2; i <= n + 1; ++i) {
      if (i == j) continue;
      for (int l = i + 1; l <= n + 1; ++l) {
        if (l == j) continue;
        cj *= wm.coords[i - 1].value * wm.coords[i - 1].value -
              wm.coords[l - 1].value * wm.coords[l - 1].value;
      }
    }
    out.push_back({j, cj, pj});
  }
  return out;
}

double PartialFractionSum::eval(double lambda) const {
  double out = 0.0;
  for (const auto& t : terms) {
    const double a = to_double(t.a);
    out += to_double(t.weight) * 2.0 * a / (lambda * lambda + a * a);
  }
  return out;
}

std::complex<double> PartialFractionSum::eval(std::complex<double> z) const {
  std::complex<double> out = 0.0;
  for (const auto& t : terms) {
    const double a = to_double(t.a);
    out += to_double(t.weight) * 2.0 * a / (z * z + a * a);
  }
  return out;
}

PartialFractionSum r_sum(int n, int j) {
  if (j < 2 || j > n + 1) throw std::domain_error("r_sum requires 2 <= j <= n+1");
  PartialFractionSum r;
  // ascending run a = 1/2 .. n-j+1/2 with weight +1
  for (Rational a(1, 2); a <= Rational(2 * (n - j) + 1, 2); a += 1)
    r.terms.push_back({a, 1});
  // descending run a = n-j+5/2 .. n-1/2 with weight -1
  for (Rational a(2 * (n - j) + 5, 2); a <= Rational(2 * n - 1, 2); a += 1)
    r.terms.push_back({a, -1});
  return r;
}

EvenPolynomial multiply_partial_fraction(const EvenPolynomial& p,
                                         const PartialFractionSum& r) {
  EvenPolynomial out;
  for (const auto& t : r.terms) {
    // divide p by (lambda^2 + a^2), exactly
    const Rational a2 = t.a * t.a;
    const auto& c = p.coeffs();
    if (c.empty()) continue;
    std::vector<Rational> q(c.size() > 0 ? c.size() - 1 : 0, Rational(0));
    Rational carry = 0;
    for (std::size_t k = c.size(); k-- > 1;) {
      const Rational qk = c[k] - carry;
      q[k - 1] = qk;
      carry = qk * a2;
    }
    if (c[0] - carry != 0)
      throw std::logic_error("multiply_partial_fraction: inexact denominator");
    EvenPolynomial quot{std::vector<Rational>(q.begin(), q.end())};
    out = out + quot * (t.weight * 2 * t.a);
  }
  return out;
}

Omega omega(int n, int sigma_sign) {
  const long d = weyl_dimension(n);
  Omega om;
  om.n = n;
  om.quad_coeff = Rational(-d, 2);
  om.psi1_coeff = Rational(2 * d);
  if (n == 1) {
    om.poly = EvenPolynomial();
    return om;
  }
  const auto products = reflected_products(n, sigma_sign);
  // Reflection-sum identity in the form sum_j P_j = d * Pi(rho); this is what
  // makes the quadruple's coefficient constant.
  EvenPolynomial sum_p;
  EvenPolynomial sum_pr;
  for (const auto& rp : products) {
    sum_p = sum_p + rp.p_j;
    sum_pr = sum_pr + multiply_partial_fraction(rp.p_j, r_sum(n, rp.j));
  }
  const Rational pr = pi_rho(n);
  if (!(sum_p == EvenPolynomial::constant(Rational(d) * pr)))
    throw std::logic_error("omega: sum of reflected products not d*Pi(rho)");
  om.poly = sum_pr * (Rational(-1, 2) / pr);
  if (om.poly.degree() > 2 * n - 4)
    throw std::logic_error("omega: polynomial part degree exceeds 2n-4");
  return om;
}

double Omega::eval(double lambda) const {
  const Complex il(0.0, lambda);
  const double quad =
      (digamma(il - (n - 0.5)) + digamma(-il - (n - 0.5)) +
       digamma(il + 0.5) + digamma(-il + 0.5))
          .real();
  return to_double(quad_coeff) * quad + poly.eval(lambda) +
         to_double(psi1_coeff) * (-euler_gamma);
}

std::complex<double> omega_direct(int n, int sigma_sign, double lambda) {
  const RootDatum datum = build_root_datum(n);
  const WeightVector ls = lambda_sigma(n, sigma_sign);
  const long d = weyl_dimension(n);
  const double prho = to_double(pi_rho(n));
  Complex sum = 0.0;
  for (const auto& alpha : datum.sigma_A) {
    const double pival = pi_product(datum, reflect(ls, alpha)).eval(lambda);
    const Complex h = pair_root(ls, alpha).eval(lambda);
    sum += (pival / prho) * (digamma(1.0 + h) + digamma(1.0 - h));
  }
  return 2.0 * static_cast<double>(d) * (-euler_gamma) - 0.5 * sum;
}

bool reflection_sum_identity(int n, int sigma_sign) {
  const RootDatum datum = build_root_datum(n);
  const WeightVector ls = lambda_sigma(n, sigma_sign);
  EvenPolynomial sum;
  for (const auto& alpha : datum.sigma_A)
    sum = sum + pi_product(datum, reflect(ls, alpha));
  const EvenPolynomial rhs = pi_product(datum, ls) * Rational(2);
  if (!(sum == rhs))
    throw std::logic_error("reflection_sum_identity failed");
  return true;
}

std::complex<double> harish_chandra_c(int n, std::complex<double> lambda) {
  if (n < 1) throw std::domain_error("harish_chandra_c requires n >= 1");
  const Complex il(-lambda.imag(), lambda.real());
  double num = 1.0;
  for (int k = n; k <= 2 * n - 1; ++k) num *= k;
  Complex den = 1.0;
  for (int k = 0; k < n; ++k) {
    const Complex f = il + (0.5 + k);
    if (std::abs(f) < 1e-14)
      throw std::domain_error("harish_chandra_c: pole of the Gamma ratio");
    den *= f;
  }
  return num / den;
}

std::complex<double> harish_chandra_c_log_deriv(int n,
                                                std::complex<double> lambda) {
  const Complex il(-lambda.imag(), lambda.real());
  Complex out = 0.0;
  for (int k = 0; k < n; ++k) out -= 1.0 / (il + (0.5 + k));
  return out;
}

EvenPolynomial plancherel_from_c(int n) {
  if (n < 1) throw std::domain_error("plancherel_from_c requires n >= 1");
  EvenPolynomial out = EvenPolynomial::constant(1);
  for (int k = 0; k < n; ++k)
    out = out * EvenPolynomial::shifted_square(Rational((2 * k + 1) * (2 * k + 1), 4));
  return out;
}

UnipotentDensity unipotent_density(int n, int kappa, double c_T1) {
  if (kappa < 1) throw std::domain_error("unipotent_density requires kappa >= 1");
  const Omega om = omega(n, 1);
  const long d = weyl_dimension(n);
  UnipotentDensity u;
  u.n = n;
  u.kappa = kappa;
  u.polynomial_part = om.poly * Rational(kappa, 2);
  u.psi1_coeff = Rational(kappa) * Rational(d);
  u.c_T1 = c_T1;
  u.digamma_coefficient = Rational(-kappa * d, 2);
  return u;
}

double UnipotentDensity::polynomial_eval(double lambda) const {
  return polynomial_part.eval(lambda) + to_double(psi1_coeff) * (-euler_gamma) +
         c_T1;
}

double UnipotentDensity::polynomial_eval_imag(double s) const {
  return polynomial_part.eval_imag(s) + to_double(psi1_coeff) * (-euler_gamma) +
         c_T1;
}

double UnipotentDensity::polynomial_integral_imag(double s) const {
  return polynomial_part.integral_imag(s) +
         (to_double(psi1_coeff) * (-euler_gamma) + c_T1) * s;
}

double UnipotentDensity::q_eval(double lambda) const {
  return to_double(digamma_coefficient) * 2.0 *
         digamma(Complex(0.5, lambda)).real();
}

double UnipotentDensity::eval(double lambda) const {
  return polynomial_eval(lambda) + q_eval(lambda);
}

double unipotent_density_unreduced(int n, int kappa, double c_T1,
                                   double lambda) {
  const long d = weyl_dimension(n);
  const double om = omega_direct(n, 1, lambda).real();
  const double sym_c =
      0.5 * (harish_chandra_c_log_deriv(n, lambda) +
             harish_chandra_c_log_deriv(n, -lambda))
                .real();
  return c_T1 + 0.5 * kappa * (om - static_cast<double>(d) * sym_c);
}

}  // namespace zetacusp
