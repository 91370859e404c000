#include "apnf/chebyshev.hpp"

#include <cmath>
#include <stdexcept>

namespace apnf::cheb {

std::vector<double> lobatto_nodes(int m, double lo, double hi) {
  if (m < 2) throw std::invalid_argument("lobatto_nodes: need at least 2 nodes");
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  std::vector<double> x(m);
  const int n = m - 1;
  for (int j = 0; j <= n; ++j) {
    x[j] = mid + half * std::cos(M_PI * j / n);
  }
  x[0] = hi;  // pin the endpoints exactly
  x[n] = lo;
  return x;
}

std::vector<double> barycentric_weights(int m) {
  std::vector<double> w(m);
  for (int j = 0; j < m; ++j) {
    w[j] = (j % 2 == 0) ? 1.0 : -1.0;
  }
  w[0] *= 0.5;
  w[m - 1] *= 0.5;
  return w;
}

cplx barycentric_eval(std::span<const double> nodes,
                      std::span<const double> weights,
                      std::span<const cplx> values, double x) {
  cplx num{0.0, 0.0};
  double den = 0.0;
  const int m = static_cast<int>(nodes.size());
  for (int j = 0; j < m; ++j) {
    const double dx = x - nodes[j];
    if (dx == 0.0) return values[j];
    const double q = weights[j] / dx;
    num += q * values[j];
    den += q;
  }
  return num / den;
}

std::vector<double> diff_matrix(int m, double lo, double hi) {
  const int n = m - 1;
  if (n < 1) throw std::invalid_argument("diff_matrix: need at least 2 nodes");
  std::vector<double> xi(m);
  for (int j = 0; j <= n; ++j) xi[j] = std::cos(M_PI * j / n);
  std::vector<double> c(m, 1.0);
  c[0] = 2.0;
  c[n] = 2.0;

  std::vector<double> d(static_cast<size_t>(m) * m, 0.0);
  for (int i = 0; i <= n; ++i) {
    for (int j = 0; j <= n; ++j) {
      if (i == j) continue;
      const double sign = ((i + j) % 2 == 0) ? 1.0 : -1.0;
      d[static_cast<size_t>(i) * m + j] = (c[i] / c[j]) * sign / (xi[i] - xi[j]);
    }
  }
  // negative-sum trick for the diagonal
  for (int i = 0; i <= n; ++i) {
    double row = 0.0;
    for (int j = 0; j <= n; ++j)
      if (j != i) row += d[static_cast<size_t>(i) * m + j];
    d[static_cast<size_t>(i) * m + i] = -row;
  }
  const double scale = 2.0 / (hi - lo);
  for (double& v : d) v *= scale;
  return d;
}

std::vector<cplx> values_to_coeffs(std::span<const cplx> values) {
  const int m = static_cast<int>(values.size());
  const int n = m - 1;
  std::vector<cplx> a(m, cplx{0.0, 0.0});
  if (n == 0) {
    a[0] = values[0];
    return a;
  }
  for (int k = 0; k <= n; ++k) {
    cplx s{0.0, 0.0};
    for (int j = 0; j <= n; ++j) {
      const double cj = (j == 0 || j == n) ? 2.0 : 1.0;
      s += values[j] * (std::cos(M_PI * j * k / static_cast<double>(n)) / cj);
    }
    const double ck = (k == 0 || k == n) ? 2.0 : 1.0;
    a[k] = s * (2.0 / (n * ck));
  }
  return a;
}

std::vector<cplx> coeffs_to_values(std::span<const cplx> coeffs) {
  const int m = static_cast<int>(coeffs.size());
  const int n = m - 1;
  std::vector<cplx> f(m, cplx{0.0, 0.0});
  for (int j = 0; j <= n; ++j) {
    cplx s{0.0, 0.0};
    for (int k = 0; k <= n; ++k) {
      const double arg = (n == 0) ? 0.0 : M_PI * j * k / static_cast<double>(n);
      s += coeffs[k] * std::cos(arg);
    }
    f[j] = s;
  }
  return f;
}

std::vector<cplx> coeff_derivative(std::span<const cplx> coeffs, double lo, double hi) {
  const int m = static_cast<int>(coeffs.size());
  std::vector<cplx> b(m, cplx{0.0, 0.0});
  if (m < 2) return b;
  // b_{k} = b_{k+2} + 2(k+1) a_{k+1}, downward recurrence
  for (int k = m - 2; k >= 0; --k) {
    const cplx next = (k + 2 <= m - 1) ? b[k + 2] : cplx{0.0, 0.0};
    b[k] = next + 2.0 * (k + 1) * coeffs[k + 1];
  }
  b[0] *= 0.5;
  const double scale = 2.0 / (hi - lo);
  for (auto& v : b) v *= scale;
  return b;
}

std::vector<cplx> coeff_antiderivative(std::span<const cplx> coeffs, double lo, double hi) {
  const int m = static_cast<int>(coeffs.size());
  std::vector<cplx> a(coeffs.begin(), coeffs.end());
  a.resize(m + 2, cplx{0.0, 0.0});
  std::vector<cplx> big(m + 1, cplx{0.0, 0.0});
  for (int k = 1; k <= m; ++k) {
    const cplx prev = a[k - 1];
    const cplx next = a[k + 1];
    big[k] = (prev - next) / (2.0 * k);
  }
  // pin the value at the left endpoint (xi = -1) to zero
  cplx at_left{0.0, 0.0};
  for (int k = 1; k <= m; ++k) {
    at_left += big[k] * ((k % 2 == 0) ? 1.0 : -1.0);
  }
  big[0] = -at_left;
  const double half = 0.5 * (hi - lo);
  for (auto& v : big) v *= half;
  return big;
}

cplx coeff_eval(std::span<const cplx> coeffs, double lo, double hi, double x) {
  const double xi = (2.0 * x - lo - hi) / (hi - lo);
  cplx b1{0.0, 0.0}, b2{0.0, 0.0};
  for (int k = static_cast<int>(coeffs.size()) - 1; k >= 1; --k) {
    const cplx tmp = 2.0 * xi * b1 - b2 + coeffs[k];
    b2 = b1;
    b1 = tmp;
  }
  return coeffs.empty() ? cplx{0.0, 0.0} : (coeffs[0] + xi * b1 - b2);
}

}  // namespace apnf::cheb
