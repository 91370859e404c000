#pragma once

// Chebyshev-Lobatto grids: nodes, barycentric evaluation, spectral
// differentiation matrices and coefficient-space calculus. Grids are used
// twice in the project: one-dimensional grids in time (sampled time
// functions) and tensor grids over the action box (the grid coefficient
// backend of the series algebra).

#include <complex>
#include <span>
#include <vector>

namespace apnf::cheb {

using cplx = std::complex<double>;

// m Lobatto nodes on [lo, hi], descending from hi to lo:
//   x_j = mid + half*cos(pi j/(m-1)), j = 0..m-1.  Requires m >= 2.
std::vector<double> lobatto_nodes(int m, double lo, double hi);

// Barycentric weights of the Lobatto family: (-1)^j, halved at the ends.
std::vector<double> barycentric_weights(int m);

// Interpolate values given at lobatto_nodes(m, lo, hi) at point x.
cplx barycentric_eval(std::span<const double> nodes,
                      std::span<const double> weights,
                      std::span<const cplx> values, double x);

// First-derivative spectral matrix on lobatto_nodes(m, lo, hi),
// row-major m*m (Trefethen, Spectral Methods in MATLAB, ch. 6).
std::vector<double> diff_matrix(int m, double lo, double hi);

// Values at Lobatto nodes -> Chebyshev series coefficients (degree m-1)
// and back. Direct O(m^2) transforms; grids are small at desk scale.
std::vector<cplx> values_to_coeffs(std::span<const cplx> values);
std::vector<cplx> coeffs_to_values(std::span<const cplx> coeffs);

// Coefficient-space derivative and antiderivative on [lo, hi]; the
// antiderivative is normalised to vanish at the LEFT endpoint lo.
std::vector<cplx> coeff_derivative(std::span<const cplx> coeffs, double lo, double hi);
std::vector<cplx> coeff_antiderivative(std::span<const cplx> coeffs, double lo, double hi);

// Evaluate a Chebyshev coefficient series at x in [lo, hi] (Clenshaw).
cplx coeff_eval(std::span<const cplx> coeffs, double lo, double hi, double x);

}  // namespace apnf::cheb
