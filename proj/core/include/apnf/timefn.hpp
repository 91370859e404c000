#pragma once

// Closed algebra of time-dependent coefficient functions on t in [0, inf).
//
// Four representations, one value type:
//   ExpPoly        sum of c * t^p * exp(mu t), Re mu <= 0   (exact)
//   RationalDecay  sum of c * (t+1)^{-m}, m >= 1            (exact)
//   PiecewisePoly  compactly supported, per-interval ExpPoly content (exact)
//   QuadFn         sampled Chebyshev interpolant + certified decay data
//
// The operations every caller needs are products, time derivatives and the
// oscillatory tail integral
//     c(t) = -int_t^inf exp(i*lambda*(s-t)) f(s) ds,
// which is the unique decaying solution of c' + i*lambda*c = f. Products,
// derivatives and tails keep ExpPoly, RationalDecay (lambda = 0) and
// PiecewisePoly inputs inside their class; everything else degrades to
// QuadFn with recorded accuracy.

#include <complex>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace apnf::timefn {

using cplx = std::complex<double>;

/// Certified bound |f(t)| <= amplitude * exp(-rate * t) for all t >= 0.
struct Envelope {
  double amplitude = 0.0;
  double rate = 0.0;
};

/// Certified bound |f(t)| <= amplitude * (t+1)^{-order} for all t >= 0.
struct RationalMajorant {
  double amplitude = 0.0;
  int order = 0;
};

struct Config {
  int term_cap = 512;              // ExpPoly term budget before QuadFn demotion
  double exponent_merge_rel = 1e-12;
  double prune_rel = 0.0;          // optional relative coefficient pruning
  double tail_tol = 1e-10;         // absolute tolerance of quadrature-backed tails
  double t_max_factor = 40.0;      // sampled range = factor / slowest decay rate
  double t_max_ratefree = 80.0;    // sampled range when there is no exponential rate
  int min_nodes = 65;
  int max_nodes = 4097;
};

class TailDiverges : public std::runtime_error {
 public:
  explicit TailDiverges(const std::string& what) : std::runtime_error(what) {}
};

// ---------------------------------------------------------------------------
// ExpPoly

struct ExpPolyTerm {
  cplx c;
  int power = 0;  // >= 0
  cplx mu;        // Re mu <= 0
};

class ExpPoly {
 public:
  ExpPoly() = default;
  ExpPoly(std::vector<ExpPolyTerm> terms, const Config& cfg);

  static ExpPoly constant(cplx c);
  static ExpPoly decay(cplx c, double rate);            // c * exp(-rate t)
  static ExpPoly mode(cplx c, int power, cplx mu);

  const std::vector<ExpPolyTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  cplx value(double t) const;
  double coeff_scale() const;  // max |c|

  ExpPoly scaled(cplx s) const;
  ExpPoly conjugated() const;
  ExpPoly derivative() const;
  ExpPoly shifted(double rate_shift) const;  // multiply by exp(rate_shift * t), unchecked

 private:
  friend class TimeFn;
  std::vector<ExpPolyTerm> terms_;  // sorted by (power, Re mu, Im mu), merged
};

// ---------------------------------------------------------------------------
// RationalDecay

struct RationalTerm {
  cplx c;
  int order = 1;  // >= 1
};

class RationalDecay {
 public:
  RationalDecay() = default;
  explicit RationalDecay(std::vector<RationalTerm> terms);

  static RationalDecay single(cplx c, int order);

  const std::vector<RationalTerm>& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  int min_order() const;
  cplx value(double t) const;

  RationalDecay scaled(cplx s) const;
  RationalDecay conjugated() const;
  RationalDecay derivative() const;

 private:
  std::vector<RationalTerm> terms_;  // sorted by order, merged
};

// ---------------------------------------------------------------------------
// PiecewisePoly
//
// Compact support [breaks.front(), breaks.back()); identically zero outside.
// The content of each interval is an ExpPoly in the local coordinate
// x = t - center(i), which keeps coefficients O(amplitude) regardless of
// where the support sits and makes the class closed under products,
// derivatives and oscillatory tails (tails introduce exp(-i lambda x)
// factors on earlier intervals).

class PiecewisePoly {
 public:
  PiecewisePoly() = default;

  // Real polynomial pieces (ascending powers of x = t - interval_start)
  // between consecutive breakpoints. Enforces C^1 continuity at interior
  // breakpoints and at the support boundary.
  static PiecewisePoly from_polynomials(std::vector<double> breaks,
                                        std::vector<std::vector<double>> pieces);

  // The quartic bump (amp/h^4) [(t-t0+h)(t-t0-h)]^2 on [t0-h, t0+h].
  static PiecewisePoly bump(double t0, double amp, double h);
  // Sum of bumps with common half-width h; centers must satisfy
  // t_{l+1} - t_l > 2h (disjoint supports).
  static PiecewisePoly bump_train(const std::vector<std::pair<double, double>>& centers_amps,
                                  double h);

  static PiecewisePoly from_pieces(std::vector<double> breaks, std::vector<double> centers,
                                   std::vector<ExpPoly> content);

  bool empty() const;
  const std::vector<double>& breaks() const { return breaks_; }
  const std::vector<double>& centers() const { return centers_; }
  const std::vector<ExpPoly>& content() const { return content_; }
  double support_end() const { return breaks_.empty() ? 0.0 : breaks_.back(); }
  cplx value(double t) const;

  PiecewisePoly scaled(cplx s) const;
  PiecewisePoly conjugated() const;

 private:
  std::vector<double> breaks_;    // strictly increasing, breaks_.front() >= 0
  std::vector<double> centers_;   // local origin of each interval's content
  std::vector<ExpPoly> content_;  // content_[i](t - centers_[i]) on [breaks_[i], breaks_[i+1])
};

// ---------------------------------------------------------------------------
// QuadFn

class QuadFn {
 public:
  QuadFn() = default;

  static QuadFn sample(const std::function<cplx(double)>& f, double t_max, int n_nodes,
                       Envelope env, std::optional<RationalMajorant> rational,
                       double accuracy, bool promoted_from_cap = false);

  // Construct directly from Lobatto node values on [0, t_max] (descending
  // node order, as produced by cheb::lobatto_nodes).
  static QuadFn from_values(double t_max, std::vector<cplx> values, Envelope env,
                            std::optional<RationalMajorant> rational, double accuracy,
                            bool promoted_from_cap = false);

  double t_max() const { return t_max_; }
  int n_nodes() const { return static_cast<int>(values_.size()); }
  const std::vector<double>& nodes() const { return nodes_; }
  const std::vector<cplx>& node_values() const { return values_; }
  const Envelope& stored_envelope() const { return env_; }
  const std::optional<RationalMajorant>& rational_majorant() const { return rational_; }
  double accuracy() const { return accuracy_; }
  bool promoted_from_cap() const { return promoted_; }

  // Barycentric inside [0, t_max]; beyond t_max the boundary value decayed
  // by the stored envelope (an estimate, adequate because every consumer
  // samples inside the certified range).
  cplx value(double t) const;

  QuadFn scaled(cplx s) const;
  QuadFn conjugated() const;

 private:
  double t_max_ = 0.0;
  std::vector<double> nodes_;
  std::vector<double> bary_;
  std::vector<cplx> values_;
  Envelope env_;
  std::optional<RationalMajorant> rational_;
  double accuracy_ = 0.0;
  bool promoted_ = false;
};

// ---------------------------------------------------------------------------
// TimeFn: the closed value type

enum class TimeClass { exp_poly, rational, piecewise, quad };

class TimeFn {
 public:
  using Rep = std::variant<ExpPoly, RationalDecay, PiecewisePoly, QuadFn>;

  TimeFn() : rep_(ExpPoly{}) {}
  TimeFn(ExpPoly v) : rep_(std::move(v)) {}
  TimeFn(RationalDecay v) : rep_(std::move(v)) {}
  TimeFn(PiecewisePoly v) : rep_(std::move(v)) {}
  TimeFn(QuadFn v) : rep_(std::move(v)) {}

  static TimeFn zero() { return TimeFn(); }
  static TimeFn constant(cplx c) { return TimeFn(ExpPoly::constant(c)); }

  TimeClass cls() const;
  const Rep& rep() const { return rep_; }

  bool is_zero() const;
  bool is_constant() const;
  std::optional<cplx> constant_value() const;

  cplx value(double t) const;

 private:
  Rep rep_;
};

// --- algebra ---------------------------------------------------------------

TimeFn add(const TimeFn& f, const TimeFn& g, const Config& cfg = {});
TimeFn scale(const TimeFn& f, cplx s);
TimeFn multiply(const TimeFn& f, const TimeFn& g, const Config& cfg = {});
TimeFn time_derivative(const TimeFn& f, const Config& cfg = {});
TimeFn conjugate(const TimeFn& f);

// c = oscillatory_tail(f, lambda) satisfies c' + i*lambda*c = f identically,
// with the decaying initial condition c(0) = -int_0^inf exp(i lambda s) f(s) ds.
// Throws TailDiverges when f is not summable for the requested mode.
TimeFn oscillatory_tail(const TimeFn& f, double lambda, const Config& cfg = {});

// Drop terms with |c| <= threshold (absolute); exact classes only.
TimeFn prune(const TimeFn& f, double abs_threshold);

// --- certification ----------------------------------------------------------

// Largest exponential rate at which an envelope can be certified; second
// member tells whether the supremum itself is admissible. Compactly
// supported functions report +inf.
struct RateLimit {
  double rate = 0.0;
  bool attainable = true;
};
RateLimit max_certifiable_rate(const TimeFn& f);

// Minimal amplitude with |f(t)| <= M exp(-rate_target t); throws when the
// target rate exceeds max_certifiable_rate.
Envelope certify_envelope(const TimeFn& f, double rate_target, const Config& cfg = {});

// Minimal amplitude with |f(t)| <= M (t+1)^{-order_target}; throws when the
// class cannot support the order.
RationalMajorant certify_rational(const TimeFn& f, int order_target, const Config& cfg = {});

// certify_envelope(f, 0).amplitude
double sup_abs(const TimeFn& f, const Config& cfg = {});

}  // namespace apnf::timefn
