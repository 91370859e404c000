#pragma once

// Adaptive Gauss-Kronrod quadrature for complex-valued integrands on a
// finite interval. Used as the fallback evaluation path for tail integrals
// that have no closed form, and by the test oracles.

#include <complex>
#include <functional>

namespace apnf::quad {

using cplx = std::complex<double>;

struct QuadResult {
  cplx value{0.0, 0.0};
  double error = 0.0;     // absolute error estimate
  int evaluations = 0;
  bool converged = true;
};

// Integrate f over [a, b] until the absolute error estimate drops below
// max(abs_tol, rel_tol * |integral|) or the subdivision budget is spent.
QuadResult integrate(const std::function<cplx(double)>& f, double a, double b,
                     double abs_tol = 1e-12, double rel_tol = 1e-12,
                     int max_subdivisions = 2000);

}  // namespace apnf::quad
