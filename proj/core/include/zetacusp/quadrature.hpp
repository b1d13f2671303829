#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace zetacusp {

struct QuadratureOptions {
  double abs_tol = 1e-12;
  unsigned max_depth = 15;
};

// Adaptive Gauss-Kronrod on [a, b]; a and b may be infinite.
double integrate(const std::function<double(double)>& f, double a, double b,
                 QuadratureOptions opts = {});

std::complex<double> integrate_complex(
    const std::function<std::complex<double>(double)>& f, double a, double b,
    QuadratureOptions opts = {});

// Contour integral of f along the polyline through the given vertices.
std::complex<double> integrate_polyline(
    const std::function<std::complex<double>(std::complex<double>)>& f,
    const std::vector<std::complex<double>>& vertices,
    QuadratureOptions opts = {});

}  // namespace zetacusp
