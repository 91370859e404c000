#pragma once

// Real multivariate polynomials in the actions I, used for the integrable
// part h(I) and its frequency map omega(I) = dh/dI.

#include <map>
#include <span>
#include <vector>

namespace apnf::fourier {

class Poly {
 public:
  explicit Poly(int n = 0) : n_(n) {}

  static Poly constant(int n, double c);
  static Poly linear(std::span<const double> omega);  // omega . I
  static Poly monomial(int n, std::vector<int> exponents, double c);

  int n() const { return n_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<std::vector<int>, double>& terms() const { return terms_; }

  double eval(std::span<const double> I) const;
  Poly partial(int dim) const;
  std::vector<Poly> gradient() const;
  int degree() const;

  // true when every monomial has total degree <= 1 (isochronous case)
  bool is_linear() const;

  Poly& add_term(std::vector<int> exponents, double c);

  friend Poly operator+(const Poly& a, const Poly& b);
  friend Poly operator*(const Poly& a, const Poly& b);
  Poly scaled(double s) const;

 private:
  int n_ = 0;
  std::map<std::vector<int>, double> terms_;
};

}  // namespace apnf::fourier
