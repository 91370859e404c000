#include "apnf/polynomial.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace apnf::fourier {

Poly Poly::constant(int n, double c) {
  Poly p(n);
  if (c != 0.0) p.terms_[std::vector<int>(n, 0)] = c;
  return p;
}

Poly Poly::linear(std::span<const double> omega) {
  Poly p(static_cast<int>(omega.size()));
  for (size_t d = 0; d < omega.size(); ++d) {
    if (omega[d] == 0.0) continue;
    std::vector<int> e(omega.size(), 0);
    e[d] = 1;
    p.terms_[std::move(e)] = omega[d];
  }
  return p;
}

Poly Poly::monomial(int n, std::vector<int> exponents, double c) {
  if (static_cast<int>(exponents.size()) != n) {
    throw std::invalid_argument("Poly::monomial: exponent length mismatch");
  }
  Poly p(n);
  if (c != 0.0) p.terms_[std::move(exponents)] = c;
  return p;
}

double Poly::eval(std::span<const double> I) const {
  double v = 0.0;
  for (const auto& [e, c] : terms_) {
    double m = c;
    for (size_t d = 0; d < e.size(); ++d) {
      for (int q = 0; q < e[d]; ++q) m *= I[d];
    }
    v += m;
  }
  return v;
}

Poly Poly::partial(int dim) const {
  Poly out(n_);
  for (const auto& [e, c] : terms_) {
    if (e[dim] == 0) continue;
    std::vector<int> de = e;
    de[dim] -= 1;
    out.terms_[std::move(de)] += c * e[dim];
  }
  return out;
}

std::vector<Poly> Poly::gradient() const {
  std::vector<Poly> g;
  g.reserve(n_);
  for (int d = 0; d < n_; ++d) g.push_back(partial(d));
  return g;
}

int Poly::degree() const {
  int deg = 0;
  for (const auto& [e, c] : terms_) {
    deg = std::max(deg, std::accumulate(e.begin(), e.end(), 0));
  }
  return deg;
}

bool Poly::is_linear() const { return degree() <= 1; }

Poly& Poly::add_term(std::vector<int> exponents, double c) {
  if (static_cast<int>(exponents.size()) != n_) {
    throw std::invalid_argument("Poly::add_term: exponent length mismatch");
  }
  auto& slot = terms_[std::move(exponents)];
  slot += c;
  return *this;
}

Poly operator+(const Poly& a, const Poly& b) {
  Poly out = a;
  for (const auto& [e, c] : b.terms_) {
    out.terms_[e] += c;
    if (out.terms_[e] == 0.0) out.terms_.erase(e);
  }
  return out;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly out(a.n_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      std::vector<int> e(a.n_);
      for (int d = 0; d < a.n_; ++d) e[d] = ea[d] + eb[d];
      out.terms_[std::move(e)] += ca * cb;
    }
  }
  return out;
}

Poly Poly::scaled(double s) const {
  Poly out(n_);
  if (s == 0.0) return out;
  for (const auto& [e, c] : terms_) out.terms_[e] = c * s;
  return out;
}

}  // namespace apnf::fourier
