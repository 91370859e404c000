#include "oracles.hpp"

#include <cmath>

#include "apnf/quadrature.hpp"

namespace oracle {

cplx tail_integral(const std::function<cplx(double)>& f, double lambda, double t,
                   double t_cut, double* tail_bound_out) {
  auto integrand = [&](double s) { return std::exp(cplx{0.0, lambda * (s - t)}) * f(s); };
  const auto res = apnf::quad::integrate(integrand, t, t_cut, 1e-14, 1e-13, 8000);
  if (tail_bound_out) *tail_bound_out = std::abs(f(t_cut));
  return -res.value;
}

double envelope_sup(const std::function<cplx(double)>& f, double rate, double t_scan,
                    int samples) {
  double best = 0.0;
  for (int i = 0; i <= samples; ++i) {
    const double t = t_scan * i / samples;
    best = std::max(best, std::abs(f(t)) * std::exp(rate * t));
  }
  return best;
}

cplx fd_poisson_bracket(const std::function<cplx(std::vector<double>, std::vector<double>)>& F,
                        const std::function<cplx(std::vector<double>, std::vector<double>)>& G,
                        std::vector<double> I, std::vector<double> phi, double step) {
  const int n = static_cast<int>(I.size());
  cplx sum{0.0, 0.0};
  for (int l = 0; l < n; ++l) {
    auto dI = [&](const auto& fn) {
      auto up = I, dn = I;
      up[l] += step;
      dn[l] -= step;
      return (fn(up, phi) - fn(dn, phi)) / (2.0 * step);
    };
    auto dphi = [&](const auto& fn) {
      auto up = phi, dn = phi;
      up[l] += step;
      dn[l] -= step;
      return (fn(I, up) - fn(I, dn)) / (2.0 * step);
    };
    sum += dphi(F) * dI(G) - dphi(G) * dI(F);
  }
  return sum;
}

std::vector<double> rk4_flow(
    const std::function<std::vector<double>(double, const std::vector<double>&)>& rhs,
    std::vector<double> y0, double s0, double s1, int steps) {
  const double h = (s1 - s0) / steps;
  std::vector<double> y = std::move(y0);
  double s = s0;
  const int dim = static_cast<int>(y.size());
  auto axpy = [dim](const std::vector<double>& a, double c, const std::vector<double>& b) {
    std::vector<double> r(dim);
    for (int i = 0; i < dim; ++i) r[i] = a[i] + c * b[i];
    return r;
  };
  for (int k = 0; k < steps; ++k) {
    const auto k1 = rhs(s, y);
    const auto k2 = rhs(s + 0.5 * h, axpy(y, 0.5 * h, k1));
    const auto k3 = rhs(s + 0.5 * h, axpy(y, 0.5 * h, k2));
    const auto k4 = rhs(s + h, axpy(y, h, k3));
    for (int i = 0; i < dim; ++i) {
      y[i] += (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    s += h;
  }
  return y;
}

}  // namespace oracle
