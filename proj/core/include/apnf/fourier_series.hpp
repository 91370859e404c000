#pragma once

// Truncated Fourier series in the angles with action- and time-dependent
// coefficients: the shared representation of perturbations, generating
// functions and normal-form levels.
//
// Two coefficient backends:
//   taylor - multivariate polynomial in dI = I - I* with TimeFn entries,
//            total degree capped. Used by the isochronous algorithm, where
//            the mode frequencies omega.k are action independent.
//   grid   - TimeFn values on a Chebyshev tensor grid over the real action
//            box G, with spectral differentiation in I. Used by the general
//            algorithm, where each node gets its own omega(I).k.
//
// Truncation (harmonic cutoff, degree cap) never happens silently: the
// weight of everything dropped accumulates in a per-series ledger.

#include <complex>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "apnf/polynomial.hpp"
#include "apnf/timefn.hpp"

namespace apnf::fourier {

using cplx = std::complex<double>;

// ---------------------------------------------------------------------------

struct MultiIndex {
  std::vector<int> k;

  int order() const;  // |k| = sum |k_l|
  MultiIndex negated() const;
  friend MultiIndex operator+(const MultiIndex& a, const MultiIndex& b);
  auto operator<=>(const MultiIndex&) const = default;
};

MultiIndex make_index(std::initializer_list<int> ks);

// ---------------------------------------------------------------------------

enum class Backend { taylor, grid };

struct SeriesMeta {
  int n = 1;  // torus dimension
  int k_max = 8;
  Backend backend = Backend::taylor;

  // action box G and expansion point
  std::vector<double> box_lo, box_hi;
  std::vector<double> center;  // I*, defaults to the box midpoint

  // analyticity radii bookkeeping
  double rho = 0.25;
  double sigma = 0.5;

  // taylor backend
  int degree = 6;

  // grid backend
  std::vector<int> grid_shape;        // nodes per dimension (>= 4)
  double grid_inflation = 2.0;        // sup-norm factor on top of the node max

  timefn::Config time_cfg;

  // caches (filled by make_meta)
  std::vector<std::vector<double>> grid_nodes;   // per dim
  std::vector<std::vector<double>> grid_diff;    // per dim, row-major m*m
  int grid_total = 0;

  double box_halfwidth(int dim) const;
};

std::shared_ptr<const SeriesMeta> make_meta(SeriesMeta m);

// ---------------------------------------------------------------------------

// One Fourier coefficient f_k(I, t); backend decided by the owning series.
struct Coeff {
  std::map<std::vector<int>, timefn::TimeFn> taylor;  // dI-exponent -> TimeFn
  std::vector<timefn::TimeFn> grid;                   // flattened tensor values

  bool is_zero() const;
};

struct Ledger {
  double dropped_norm = 0.0;
  long promotions = 0;
  Ledger& operator+=(const Ledger& o) {
    dropped_norm += o.dropped_norm;
    promotions += o.promotions;
    return *this;
  }
};

// ---------------------------------------------------------------------------

class Series {
 public:
  Series() = default;
  explicit Series(std::shared_ptr<const SeriesMeta> meta) : meta_(std::move(meta)) {}

  const SeriesMeta& meta() const { return *meta_; }
  const std::shared_ptr<const SeriesMeta>& meta_ptr() const { return meta_; }
  const std::map<MultiIndex, Coeff>& modes() const { return modes_; }
  bool empty() const;
  int mode_count() const { return static_cast<int>(modes_.size()); }

  Ledger& ledger() { return ledger_; }
  const Ledger& ledger() const { return ledger_; }

  // construction helpers
  void set_mode(MultiIndex k, Coeff c);
  const Coeff* find(const MultiIndex& k) const;

  // single harmonic with an action-independent coefficient
  static Series harmonic(std::shared_ptr<const SeriesMeta> meta, MultiIndex k,
                         timefn::TimeFn f);

 private:
  std::shared_ptr<const SeriesMeta> meta_;
  std::map<MultiIndex, Coeff> modes_;
  Ledger ledger_;
};

// --- coefficient-level helpers (backend dispatch through meta) -------------

Coeff coeff_zero(const SeriesMeta& meta);
Coeff coeff_const(const SeriesMeta& meta, timefn::TimeFn f);
// polynomial in absolute I, converted to the backend representation
Coeff coeff_from_poly(const SeriesMeta& meta, const Poly& p, const timefn::TimeFn& f);
Coeff coeff_add(const SeriesMeta& meta, const Coeff& a, const Coeff& b);
Coeff coeff_scale(const SeriesMeta& meta, const Coeff& a, cplx s);
Coeff coeff_mul(const SeriesMeta& meta, const Coeff& a, const Coeff& b, Ledger& ledger);
Coeff coeff_dI(const SeriesMeta& meta, const Coeff& a, int dim);
Coeff coeff_dt(const SeriesMeta& meta, const Coeff& a);
Coeff coeff_conj(const SeriesMeta& meta, const Coeff& a);
cplx coeff_eval(const SeriesMeta& meta, const Coeff& a, std::span<const double> I, double t);
// sup_I majorant of |f_k(.,t)| <= M exp(-rate t) at radius rho
double coeff_majorant(const SeriesMeta& meta, const Coeff& a, double rho, double rate);
// cheap scale estimate (no refinement), for ledgers and pruning
double coeff_amp_hint(const SeriesMeta& meta, const Coeff& a);
timefn::RateLimit coeff_rate_limit(const SeriesMeta& meta, const Coeff& a);

// --- series-level algebra ---------------------------------------------------

Series series_zero(std::shared_ptr<const SeriesMeta> meta);
Series add(const Series& a, const Series& b);
Series sub(const Series& a, const Series& b);
Series scale(const Series& a, cplx s);
Series mul(const Series& a, const Series& b);
Series dphi(const Series& a, int dim);
Series dI(const Series& a, int dim);
Series dt(const Series& a);
Series conj_series(const Series& a);
// multiply by a polynomial in the absolute actions (harmonic-diagonal)
Series mul_poly(const Series& a, const Poly& p);
// drop coefficient terms below rel * (series amp hint)
Series prune_series(const Series& a, double rel);

cplx evaluate(const Series& a, std::span<const double> I, std::span<const double> phi, double t);
cplx evaluate_mode(const Series& a, const MultiIndex& k, std::span<const double> I, double t);

// reality defect: max over modes of |coeff(-k) - conj(coeff(k))| sampled at
// a few (I, t); zero for real-representable series
double reality_defect(const Series& a);

// --- Fourier norm and shells -------------------------------------------------

// Envelope (M, rate) with sum_k sup_I |f_k(I,t)| e^{|k| sigma} <= M e^{-rate t}.
// rate < 0 requests the best attainable common rate.
timefn::Envelope fourier_norm(const Series& a, double rho, double sigma, double rate = -1.0);

// Lambda_s = { (s-1)N <= |k| < sN }; returns shells 1..ceil((k_max+1)/N),
// whose sum reproduces the series coefficient-exactly (k = 0 in shell 1).
std::vector<Series> shell_split(const Series& a, int N);

// harmonics with |k| in [lo, hi)
Series project_order_range(const Series& a, int lo, int hi);

// ---------------------------------------------------------------------------

// Extended Hamiltonian h(I) + eta + epsilon_hat * f(I, phi, t); eta always
// enters linearly with coefficient one.
struct Hamiltonian {
  Poly h;
  double epsilon_hat = 0.0;
  Series f;
  timefn::Envelope declared;  // Hypothesis (M_f, a) for the unscaled f

  std::vector<Poly> omega() const { return h.gradient(); }
  Series perturbation() const { return scale(f, cplx{epsilon_hat, 0.0}); }
};

}  // namespace apnf::fourier
