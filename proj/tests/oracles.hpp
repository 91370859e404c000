#pragma once

// Test-only oracles, independent of the library's computation paths.
// Expected values in the test suites are produced (or cross-checked) by
// these rather than by the code under test.

#include <complex>
#include <functional>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

// -int_t^inf exp(i lambda (s-t)) f(s) ds by adaptive quadrature on
// [t, t_cut] plus an operator-supplied bound for the neglected tail.
cplx tail_integral(const std::function<cplx(double)>& f, double lambda, double t,
                   double t_cut, double* tail_bound_out = nullptr);

// sup over a dense grid of |f(t)| exp(rate t) on [0, t_scan].
double envelope_sup(const std::function<cplx(double)>& f, double rate, double t_scan,
                    int samples = 20000);

// Central finite-difference Poisson bracket {F,G} = F_phi.G_I - G_phi.F_I
// at one phase-space point (eta-free functions).
cplx fd_poisson_bracket(const std::function<cplx(std::vector<double>, std::vector<double>)>& F,
                        const std::function<cplx(std::vector<double>, std::vector<double>)>& G,
                        std::vector<double> I, std::vector<double> phi, double step = 1e-5);

// Classic fixed-step RK4 for small real ODE systems, used to flow
// Hamiltonian vector fields in the map tests.
std::vector<double> rk4_flow(
    const std::function<std::vector<double>(double, const std::vector<double>&)>& rhs,
    std::vector<double> y0, double s0, double s1, int steps);

}  // namespace oracle
