#include "apnf/fourier_series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "apnf/chebyshev.hpp"

namespace apnf::fourier {

using timefn::TimeFn;

// ---------------------------------------------------------------------------
// MultiIndex

int MultiIndex::order() const {
  int s = 0;
  for (int v : k) s += std::abs(v);
  return s;
}

MultiIndex MultiIndex::negated() const {
  MultiIndex out = *this;
  for (int& v : out.k) v = -v;
  return out;
}

MultiIndex operator+(const MultiIndex& a, const MultiIndex& b) {
  MultiIndex out = a;
  for (size_t i = 0; i < out.k.size(); ++i) out.k[i] += b.k[i];
  return out;
}

MultiIndex make_index(std::initializer_list<int> ks) { return MultiIndex{std::vector<int>(ks)}; }

// ---------------------------------------------------------------------------
// SeriesMeta

double SeriesMeta::box_halfwidth(int dim) const {
  return std::max(box_hi[dim] - center[dim], center[dim] - box_lo[dim]);
}

std::shared_ptr<const SeriesMeta> make_meta(SeriesMeta m) {
  if (m.n < 1) throw std::invalid_argument("SeriesMeta: dimension must be >= 1");
  if (static_cast<int>(m.box_lo.size()) != m.n || static_cast<int>(m.box_hi.size()) != m.n) {
    throw std::invalid_argument("SeriesMeta: box dimensions mismatch");
  }
  for (int d = 0; d < m.n; ++d) {
    if (!(m.box_lo[d] < m.box_hi[d])) throw std::invalid_argument("SeriesMeta: empty action box");
  }
  if (m.center.empty()) {
    m.center.resize(m.n);
    for (int d = 0; d < m.n; ++d) m.center[d] = 0.5 * (m.box_lo[d] + m.box_hi[d]);
  }
  if (m.backend == Backend::grid) {
    if (static_cast<int>(m.grid_shape.size()) != m.n) {
      throw std::invalid_argument("SeriesMeta: grid shape dimensions mismatch");
    }
    m.grid_total = 1;
    m.grid_nodes.clear();
    m.grid_diff.clear();
    for (int d = 0; d < m.n; ++d) {
      if (m.grid_shape[d] < 4) {
        throw std::invalid_argument("SeriesMeta: need at least 4 grid nodes per dimension");
      }
      m.grid_total *= m.grid_shape[d];
      m.grid_nodes.push_back(cheb::lobatto_nodes(m.grid_shape[d], m.box_lo[d], m.box_hi[d]));
      m.grid_diff.push_back(cheb::diff_matrix(m.grid_shape[d], m.box_lo[d], m.box_hi[d]));
    }
  }
  return std::make_shared<const SeriesMeta>(std::move(m));
}

namespace {

void check_compatible(const SeriesMeta& a, const SeriesMeta& b) {
  if (a.n != b.n || a.backend != b.backend || a.k_max != b.k_max || a.degree != b.degree ||
      a.grid_shape != b.grid_shape || a.box_lo != b.box_lo || a.box_hi != b.box_hi ||
      a.center != b.center) {
    throw std::invalid_argument("series metadata mismatch");
  }
}

std::vector<int> unflatten(const SeriesMeta& meta, int idx) {
  std::vector<int> out(meta.n);
  for (int d = meta.n - 1; d >= 0; --d) {
    out[d] = idx % meta.grid_shape[d];
    idx /= meta.grid_shape[d];
  }
  return out;
}

int flatten(const SeriesMeta& meta, std::span<const int> idx) {
  int f = 0;
  for (int d = 0; d < meta.n; ++d) f = f * meta.grid_shape[d] + idx[d];
  return f;
}

double grid_node_coord(const SeriesMeta& meta, int dim, int i) {
  return meta.grid_nodes[dim][i];
}

// quick amplitude estimate of a TimeFn (no refinement; may overestimate)
double amp_hint_fn(const TimeFn& f) {
  switch (f.cls()) {
    case timefn::TimeClass::exp_poly: {
      const auto& e = std::get<timefn::ExpPoly>(f.rep());
      double s = 0.0;
      for (const auto& t : e.terms()) s += std::abs(t.c);
      return s;
    }
    case timefn::TimeClass::rational: {
      const auto& r = std::get<timefn::RationalDecay>(f.rep());
      double s = 0.0;
      for (const auto& t : r.terms()) s += std::abs(t.c);
      return s;
    }
    case timefn::TimeClass::piecewise: {
      const auto& p = std::get<timefn::PiecewisePoly>(f.rep());
      double s = 0.0;
      for (const auto& c : p.content()) s = std::max(s, c.coeff_scale());
      return s;
    }
    case timefn::TimeClass::quad: {
      const auto& q = std::get<timefn::QuadFn>(f.rep());
      double s = 0.0;
      for (const auto& v : q.node_values()) s = std::max(s, std::abs(v));
      return s;
    }
  }
  return 0.0;
}

}  // namespace

// ---------------------------------------------------------------------------
// Coeff helpers

bool Coeff::is_zero() const {
  for (const auto& [e, f] : taylor) {
    if (!f.is_zero()) return false;
  }
  for (const auto& f : grid) {
    if (!f.is_zero()) return false;
  }
  return true;
}

Coeff coeff_zero(const SeriesMeta& meta) {
  Coeff c;
  if (meta.backend == Backend::grid) c.grid.assign(meta.grid_total, TimeFn::zero());
  return c;
}

Coeff coeff_const(const SeriesMeta& meta, TimeFn f) {
  Coeff c = coeff_zero(meta);
  if (meta.backend == Backend::taylor) {
    if (!f.is_zero()) c.taylor[std::vector<int>(meta.n, 0)] = std::move(f);
  } else {
    for (auto& v : c.grid) v = f;
  }
  return c;
}

Coeff coeff_from_poly(const SeriesMeta& meta, const Poly& p, const TimeFn& f) {
  Coeff c = coeff_zero(meta);
  if (meta.backend == Backend::grid) {
    for (int i = 0; i < meta.grid_total; ++i) {
      const auto idx = unflatten(meta, i);
      std::vector<double> I(meta.n);
      for (int d = 0; d < meta.n; ++d) I[d] = grid_node_coord(meta, d, idx[d]);
      const double v = p.eval(I);
      if (v != 0.0) c.grid[i] = timefn::scale(f, cplx{v, 0.0});
    }
    return c;
  }
  // taylor: expand each absolute-I monomial around the centre
  std::map<std::vector<int>, double> shifted;
  for (const auto& [e, coeff] : p.terms()) {
    std::map<std::vector<int>, double> acc{{std::vector<int>(meta.n, 0), coeff}};
    for (int d = 0; d < meta.n; ++d) {
      // multiply acc by (c_d + dI_d)^{e_d}
      std::map<std::vector<int>, double> next;
      const double cd = meta.center[d];
      for (const auto& [ex, cf] : acc) {
        double binom = 1.0;
        for (int j = 0; j <= e[d]; ++j) {
          std::vector<int> nex = ex;
          nex[d] += j;
          next[nex] += cf * binom * std::pow(cd, e[d] - j);
          binom *= static_cast<double>(e[d] - j) / static_cast<double>(j + 1);
        }
      }
      acc = std::move(next);
    }
    for (const auto& [ex, cf] : acc) shifted[ex] += cf;
  }
  for (const auto& [ex, cf] : shifted) {
    if (cf == 0.0) continue;
    const int deg = std::accumulate(ex.begin(), ex.end(), 0);
    if (deg > meta.degree) {
      throw std::invalid_argument("coeff_from_poly: polynomial degree exceeds the series cap");
    }
    c.taylor[ex] = timefn::scale(f, cplx{cf, 0.0});
  }
  return c;
}

Coeff coeff_add(const SeriesMeta& meta, const Coeff& a, const Coeff& b) {
  Coeff out = a;
  if (meta.backend == Backend::taylor) {
    for (const auto& [e, f] : b.taylor) {
      auto it = out.taylor.find(e);
      if (it == out.taylor.end()) {
        out.taylor[e] = f;
      } else {
        it->second = timefn::add(it->second, f, meta.time_cfg);
        if (it->second.is_zero()) out.taylor.erase(it);
      }
    }
  } else {
    if (out.grid.empty()) out.grid.assign(meta.grid_total, TimeFn::zero());
    for (int i = 0; i < meta.grid_total; ++i) {
      if (i < static_cast<int>(b.grid.size())) {
        out.grid[i] = timefn::add(out.grid[i], b.grid[i], meta.time_cfg);
      }
    }
  }
  return out;
}

Coeff coeff_scale(const SeriesMeta& meta, const Coeff& a, cplx s) {
  Coeff out = a;
  if (meta.backend == Backend::taylor) {
    for (auto& [e, f] : out.taylor) f = timefn::scale(f, s);
  } else {
    for (auto& f : out.grid) f = timefn::scale(f, s);
  }
  return out;
}

Coeff coeff_mul(const SeriesMeta& meta, const Coeff& a, const Coeff& b, Ledger& ledger) {
  Coeff out = coeff_zero(meta);
  if (meta.backend == Backend::taylor) {
    for (const auto& [ea, fa] : a.taylor) {
      for (const auto& [eb, fb] : b.taylor) {
        std::vector<int> e(meta.n);
        int deg = 0;
        for (int d = 0; d < meta.n; ++d) {
          e[d] = ea[d] + eb[d];
          deg += e[d];
        }
        if (deg > meta.degree) {
          double w = amp_hint_fn(fa) * amp_hint_fn(fb);
          for (int d = 0; d < meta.n; ++d) {
            w *= std::pow(meta.box_halfwidth(d) + meta.rho, e[d]);
          }
          ledger.dropped_norm += w;
          continue;
        }
        const TimeFn prod = timefn::multiply(fa, fb, meta.time_cfg);
        auto it = out.taylor.find(e);
        if (it == out.taylor.end()) {
          out.taylor[std::move(e)] = prod;
        } else {
          it->second = timefn::add(it->second, prod, meta.time_cfg);
        }
      }
    }
    std::erase_if(out.taylor, [](const auto& kv) { return kv.second.is_zero(); });
  } else {
    for (int i = 0; i < meta.grid_total; ++i) {
      out.grid[i] = timefn::multiply(a.grid[i], b.grid[i], meta.time_cfg);
    }
  }
  return out;
}

Coeff coeff_dI(const SeriesMeta& meta, const Coeff& a, int dim) {
  Coeff out = coeff_zero(meta);
  if (meta.backend == Backend::taylor) {
    for (const auto& [e, f] : a.taylor) {
      if (e[dim] == 0) continue;
      std::vector<int> de = e;
      de[dim] -= 1;
      TimeFn part = timefn::scale(f, cplx{static_cast<double>(e[dim]), 0.0});
      auto it = out.taylor.find(de);
      if (it == out.taylor.end()) {
        out.taylor[std::move(de)] = std::move(part);
      } else {
        it->second = timefn::add(it->second, part, meta.time_cfg);
      }
    }
  } else {
    const int m = meta.grid_shape[dim];
    const auto& D = meta.grid_diff[dim];
    for (int i = 0; i < meta.grid_total; ++i) {
      const auto idx = unflatten(meta, i);
      TimeFn acc = TimeFn::zero();
      std::vector<int> jdx = idx;
      for (int j = 0; j < m; ++j) {
        const double w = D[static_cast<size_t>(idx[dim]) * m + j];
        if (w == 0.0) continue;
        jdx[dim] = j;
        acc = timefn::add(acc, timefn::scale(a.grid[flatten(meta, jdx)], cplx{w, 0.0}),
                          meta.time_cfg);
      }
      out.grid[i] = std::move(acc);
    }
  }
  return out;
}

Coeff coeff_dt(const SeriesMeta& meta, const Coeff& a) {
  Coeff out = coeff_zero(meta);
  if (meta.backend == Backend::taylor) {
    for (const auto& [e, f] : a.taylor) {
      TimeFn d = timefn::time_derivative(f, meta.time_cfg);
      if (!d.is_zero()) out.taylor[e] = std::move(d);
    }
  } else {
    for (int i = 0; i < meta.grid_total; ++i) {
      out.grid[i] = timefn::time_derivative(a.grid[i], meta.time_cfg);
    }
  }
  return out;
}

Coeff coeff_conj(const SeriesMeta& meta, const Coeff& a) {
  Coeff out = a;
  if (meta.backend == Backend::taylor) {
    for (auto& [e, f] : out.taylor) f = timefn::conjugate(f);
  } else {
    for (auto& f : out.grid) f = timefn::conjugate(f);
  }
  return out;
}

cplx coeff_eval(const SeriesMeta& meta, const Coeff& a, std::span<const double> I, double t) {
  if (meta.backend == Backend::taylor) {
    cplx v{0.0, 0.0};
    for (const auto& [e, f] : a.taylor) {
      double mono = 1.0;
      for (int d = 0; d < meta.n; ++d) {
        const double dI = I[d] - meta.center[d];
        for (int q = 0; q < e[d]; ++q) mono *= dI;
      }
      v += mono * f.value(t);
    }
    return v;
  }
  // tensor barycentric interpolation
  std::vector<std::vector<double>> w(meta.n);
  std::vector<int> exact(meta.n, -1);
  for (int d = 0; d < meta.n; ++d) {
    const auto& nodes = meta.grid_nodes[d];
    const auto bw = cheb::barycentric_weights(static_cast<int>(nodes.size()));
    w[d].assign(nodes.size(), 0.0);
    double den = 0.0;
    for (size_t j = 0; j < nodes.size(); ++j) {
      const double dx = I[d] - nodes[j];
      if (dx == 0.0) {
        exact[d] = static_cast<int>(j);
        break;
      }
      w[d][j] = bw[j] / dx;
      den += w[d][j];
    }
    if (exact[d] < 0) {
      for (auto& x : w[d]) x /= den;
    }
  }
  cplx v{0.0, 0.0};
  for (int i = 0; i < meta.grid_total; ++i) {
    const auto idx = unflatten(meta, i);
    double weight = 1.0;
    bool skip = false;
    for (int d = 0; d < meta.n; ++d) {
      if (exact[d] >= 0) {
        if (idx[d] != exact[d]) {
          skip = true;
          break;
        }
      } else {
        weight *= w[d][idx[d]];
      }
    }
    if (skip || weight == 0.0) continue;
    v += weight * a.grid[i].value(t);
  }
  return v;
}

double coeff_majorant(const SeriesMeta& meta, const Coeff& a, double rho, double rate) {
  if (meta.backend == Backend::taylor) {
    double m = 0.0;
    for (const auto& [e, f] : a.taylor) {
      double w = 1.0;
      for (int d = 0; d < meta.n; ++d) {
        w *= std::pow(meta.box_halfwidth(d) + rho, e[d]);
      }
      m += w * timefn::certify_envelope(f, rate, meta.time_cfg).amplitude;
    }
    return m;
  }
  double m = 0.0;
  for (const auto& f : a.grid) {
    m = std::max(m, timefn::certify_envelope(f, rate, meta.time_cfg).amplitude);
  }
  return meta.grid_inflation * m;
}

double coeff_amp_hint(const SeriesMeta& meta, const Coeff& a) {
  double m = 0.0;
  if (meta.backend == Backend::taylor) {
    for (const auto& [e, f] : a.taylor) {
      double w = amp_hint_fn(f);
      for (int d = 0; d < meta.n; ++d) {
        w *= std::pow(meta.box_halfwidth(d) + meta.rho, e[d]);
      }
      m += w;
    }
  } else {
    for (const auto& f : a.grid) m = std::max(m, amp_hint_fn(f));
  }
  return m;
}

timefn::RateLimit coeff_rate_limit(const SeriesMeta& meta, const Coeff& a) {
  timefn::RateLimit rl{std::numeric_limits<double>::infinity(), true};
  auto fold = [&rl](const TimeFn& f) {
    if (f.is_zero()) return;
    const auto r = timefn::max_certifiable_rate(f);
    if (r.rate < rl.rate) rl = r;
    else if (r.rate == rl.rate && !r.attainable) rl.attainable = false;
  };
  if (meta.backend == Backend::taylor) {
    for (const auto& [e, f] : a.taylor) fold(f);
  } else {
    for (const auto& f : a.grid) fold(f);
  }
  return rl;
}

// ---------------------------------------------------------------------------
// Series

bool Series::empty() const {
  for (const auto& [k, c] : modes_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

void Series::set_mode(MultiIndex k, Coeff c) {
  if (static_cast<int>(k.k.size()) != meta_->n) {
    throw std::invalid_argument("Series::set_mode: index dimension mismatch");
  }
  if (k.order() > meta_->k_max) {
    throw std::invalid_argument("Series::set_mode: harmonic above the cutoff");
  }
  if (c.is_zero()) {
    modes_.erase(k);
  } else {
    modes_[std::move(k)] = std::move(c);
  }
}

const Coeff* Series::find(const MultiIndex& k) const {
  auto it = modes_.find(k);
  return it == modes_.end() ? nullptr : &it->second;
}

Series Series::harmonic(std::shared_ptr<const SeriesMeta> meta, MultiIndex k, TimeFn f) {
  Series s(meta);
  s.set_mode(std::move(k), coeff_const(*meta, std::move(f)));
  return s;
}

Series series_zero(std::shared_ptr<const SeriesMeta> meta) { return Series(std::move(meta)); }

Series add(const Series& a, const Series& b) {
  check_compatible(a.meta(), b.meta());
  Series out = a;
  out.ledger() += b.ledger();
  for (const auto& [k, c] : b.modes()) {
    const Coeff* ex = out.find(k);
    Coeff sum = ex ? coeff_add(a.meta(), *ex, c) : c;
    out.set_mode(k, std::move(sum));
  }
  return out;
}

Series sub(const Series& a, const Series& b) { return add(a, scale(b, cplx{-1.0, 0.0})); }

Series scale(const Series& a, cplx s) {
  Series out(a.meta_ptr());
  out.ledger() = a.ledger();
  if (s == cplx{0.0, 0.0}) return out;
  for (const auto& [k, c] : a.modes()) out.set_mode(k, coeff_scale(a.meta(), c, s));
  return out;
}

Series mul(const Series& a, const Series& b) {
  check_compatible(a.meta(), b.meta());
  const auto& meta = a.meta();
  Series out(a.meta_ptr());
  out.ledger() += a.ledger();
  out.ledger() += b.ledger();
  std::map<MultiIndex, Coeff> acc;
  for (const auto& [ka, ca] : a.modes()) {
    for (const auto& [kb, cb] : b.modes()) {
      const MultiIndex k = ka + kb;
      if (k.order() > meta.k_max) {
        out.ledger().dropped_norm += coeff_amp_hint(meta, ca) * coeff_amp_hint(meta, cb) *
                                     std::exp(k.order() * meta.sigma);
        continue;
      }
      Coeff prod = coeff_mul(meta, ca, cb, out.ledger());
      auto it = acc.find(k);
      if (it == acc.end()) {
        acc[k] = std::move(prod);
      } else {
        it->second = coeff_add(meta, it->second, prod);
      }
    }
  }
  for (auto& [k, c] : acc) {
    if (!c.is_zero()) out.set_mode(k, std::move(c));
  }
  return out;
}

Series dphi(const Series& a, int dim) {
  Series out(a.meta_ptr());
  out.ledger() = a.ledger();
  for (const auto& [k, c] : a.modes()) {
    if (k.k[dim] == 0) continue;
    out.set_mode(k, coeff_scale(a.meta(), c, cplx{0.0, static_cast<double>(k.k[dim])}));
  }
  return out;
}

Series dI(const Series& a, int dim) {
  Series out(a.meta_ptr());
  out.ledger() = a.ledger();
  for (const auto& [k, c] : a.modes()) {
    Coeff d = coeff_dI(a.meta(), c, dim);
    if (!d.is_zero()) out.set_mode(k, std::move(d));
  }
  return out;
}

Series dt(const Series& a) {
  Series out(a.meta_ptr());
  out.ledger() = a.ledger();
  for (const auto& [k, c] : a.modes()) {
    Coeff d = coeff_dt(a.meta(), c);
    if (!d.is_zero()) out.set_mode(k, std::move(d));
  }
  return out;
}

Series conj_series(const Series& a) {
  Series out(a.meta_ptr());
  out.ledger() = a.ledger();
  for (const auto& [k, c] : a.modes()) {
    out.set_mode(k.negated(), coeff_conj(a.meta(), c));
  }
  return out;
}

Series mul_poly(const Series& a, const Poly& p) {
  const auto& meta = a.meta();
  Series out(a.meta_ptr());
  out.ledger() = a.ledger();
  const Coeff pc = coeff_from_poly(meta, p, TimeFn::constant(cplx{1.0, 0.0}));
  for (const auto& [k, c] : a.modes()) {
    Coeff prod = coeff_mul(meta, c, pc, out.ledger());
    if (!prod.is_zero()) out.set_mode(k, std::move(prod));
  }
  return out;
}

Series prune_series(const Series& a, double rel) {
  if (rel <= 0.0) return a;
  double scale_hint = 0.0;
  for (const auto& [k, c] : a.modes()) {
    scale_hint = std::max(scale_hint, coeff_amp_hint(a.meta(), c));
  }
  const double cut = rel * scale_hint;
  if (cut <= 0.0) return a;
  Series out(a.meta_ptr());
  out.ledger() = a.ledger();
  for (const auto& [k, c] : a.modes()) {
    Coeff pruned = c;
    if (a.meta().backend == Backend::taylor) {
      for (auto& [e, f] : pruned.taylor) f = timefn::prune(f, cut);
      std::erase_if(pruned.taylor, [](const auto& kv) { return kv.second.is_zero(); });
    } else {
      for (auto& f : pruned.grid) f = timefn::prune(f, cut);
    }
    if (!pruned.is_zero()) out.set_mode(k, std::move(pruned));
  }
  return out;
}

cplx evaluate(const Series& a, std::span<const double> I, std::span<const double> phi, double t) {
  cplx v{0.0, 0.0};
  for (const auto& [k, c] : a.modes()) {
    double arg = 0.0;
    for (int d = 0; d < a.meta().n; ++d) arg += k.k[d] * phi[d];
    v += coeff_eval(a.meta(), c, I, t) * std::exp(cplx{0.0, arg});
  }
  return v;
}

cplx evaluate_mode(const Series& a, const MultiIndex& k, std::span<const double> I, double t) {
  const Coeff* c = a.find(k);
  return c ? coeff_eval(a.meta(), *c, I, t) : cplx{0.0, 0.0};
}

double reality_defect(const Series& a) {
  double worst = 0.0;
  std::vector<double> probe = a.meta().center;
  std::vector<double> probe2 = a.meta().center;
  for (int d = 0; d < a.meta().n; ++d) {
    probe2[d] = a.meta().box_lo[d] + 0.7 * (a.meta().box_hi[d] - a.meta().box_lo[d]);
  }
  for (const auto& [k, c] : a.modes()) {
    const MultiIndex neg = k.negated();
    for (double t : {0.0, 1.0, 5.0}) {
      for (const auto& I : {probe, probe2}) {
        const cplx lhs = evaluate_mode(a, neg, I, t);
        const cplx rhs = std::conj(coeff_eval(a.meta(), c, I, t));
        worst = std::max(worst, std::abs(lhs - rhs));
      }
    }
  }
  return worst;
}

// ---------------------------------------------------------------------------
// norms and shells

timefn::Envelope fourier_norm(const Series& a, double rho, double sigma, double rate) {
  if (rho > a.meta().rho + 1e-12 || sigma > a.meta().sigma + 1e-12) {
    throw std::invalid_argument("fourier_norm: radii exceed the series metadata");
  }
  if (a.modes().empty()) return {0.0, std::max(rate, 0.0)};

  double use_rate = rate;
  if (rate < 0.0) {
    double best = std::numeric_limits<double>::infinity();
    bool attain = true;
    for (const auto& [k, c] : a.modes()) {
      const auto rl = coeff_rate_limit(a.meta(), c);
      if (rl.rate < best) {
        best = rl.rate;
        attain = rl.attainable;
      } else if (rl.rate == best && !rl.attainable) {
        attain = false;
      }
    }
    if (!std::isfinite(best)) {
      use_rate = 0.0;
    } else {
      use_rate = attain ? best : 0.95 * best;
    }
  }

  double m = 0.0;
  for (const auto& [k, c] : a.modes()) {
    m += coeff_majorant(a.meta(), c, rho, use_rate) * std::exp(k.order() * sigma);
  }
  return {m, use_rate};
}

std::vector<Series> shell_split(const Series& a, int N) {
  if (N < 1) throw std::invalid_argument("shell_split: N must be >= 1");
  int max_shell = 1;
  for (const auto& [k, c] : a.modes()) {
    max_shell = std::max(max_shell, k.order() / N + 1);
  }
  std::vector<Series> shells;
  shells.reserve(max_shell);
  for (int s = 0; s < max_shell; ++s) shells.emplace_back(a.meta_ptr());
  for (const auto& [k, c] : a.modes()) {
    shells[k.order() / N].set_mode(k, c);
  }
  return shells;
}

Series project_order_range(const Series& a, int lo, int hi) {
  Series out(a.meta_ptr());
  for (const auto& [k, c] : a.modes()) {
    const int o = k.order();
    if (o >= lo && o < hi) out.set_mode(k, c);
  }
  return out;
}

}  // namespace apnf::fourier
