#include "zetacusp/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace zetacusp {

using GK = boost::math::quadrature::gauss_kronrod<double, 15>;

double integrate(const std::function<double(double)>& f, double a, double b,
                 QuadratureOptions opts) {
  return GK::integrate(f, a, b, opts.max_depth, opts.abs_tol);
}

std::complex<double> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    QuadratureOptions opts) {
  const double re = GK::integrate([&](double x) { return f(x).real(); }, a, b,
                                  opts.max_depth, opts.abs_tol);
  const double im = GK::integrate([&](double x) { return f(x).imag(); }, a, b,
                                  opts.max_depth, opts.abs_tol);
  return {re, im};
}

std::complex<double> integrate_polyline(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    const std::vector<std::complex<double>>& vertices, QuadratureOptions opts) {
  std::complex<double> total = 0.0;
  for (std::size_t i = 0; i + 1 < vertices.size(); ++i) {
    const std::complex<double> z0 = vertices[i];
    const std::complex<double> dz = vertices[i + 1] - vertices[i];
    total += dz * integrate_complex([&](double u) { return f(z0 + u * dz); },
                                    0.0, 1.0, opts);
  }
  return total;
}

}  // namespace zetacusp
