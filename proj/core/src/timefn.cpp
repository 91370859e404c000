#include "apnf/timefn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "apnf/chebyshev.hpp"
#include "apnf/quadrature.hpp"

namespace apnf::timefn {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool close_rel(double a, double b, double rel) {
  const double scale = std::max({std::abs(a), std::abs(b), 1e-300});
  return std::abs(a - b) <= rel * std::max(scale, 1.0e-6);
}

bool same_exponent(const cplx& a, const cplx& b, double rel) {
  return close_rel(a.real(), b.real(), rel) && close_rel(a.imag(), b.imag(), rel);
}

// Canonical term order: by power, then Re mu, then Im mu.
bool term_less(const ExpPolyTerm& a, const ExpPolyTerm& b) {
  if (a.power != b.power) return a.power < b.power;
  if (a.mu.real() != b.mu.real()) return a.mu.real() < b.mu.real();
  return a.mu.imag() < b.mu.imag();
}

std::vector<ExpPolyTerm> normalize_terms(std::vector<ExpPolyTerm> terms, const Config& cfg) {
  std::sort(terms.begin(), terms.end(), term_less);
  std::vector<ExpPolyTerm> out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    if (t.c == cplx{0.0, 0.0}) continue;
    if (!out.empty() && out.back().power == t.power &&
        same_exponent(out.back().mu, t.mu, cfg.exponent_merge_rel)) {
      out.back().c += t.c;
      if (out.back().c == cplx{0.0, 0.0}) out.pop_back();
    } else {
      out.push_back(t);
    }
  }
  if (cfg.prune_rel > 0.0 && !out.empty()) {
    double scale = 0.0;
    for (const auto& t : out) scale = std::max(scale, std::abs(t.c));
    const double cut = cfg.prune_rel * scale;
    std::erase_if(out, [cut](const ExpPolyTerm& t) { return std::abs(t.c) <= cut; });
  }
  return out;
}

double falling_factorial(int p, int j) {
  double v = 1.0;
  for (int i = 0; i < j; ++i) v *= static_cast<double>(p - i);
  return v;
}

// Supremum of |g| over [lo, hi] by dense sampling plus golden-section
// refinement of each local maximum.
double sup_abs_interval(const std::function<double(double)>& g, double lo, double hi,
                        double osc_freq) {
  if (hi <= lo) return g(lo);
  const double waves = osc_freq * (hi - lo) / (2.0 * M_PI);
  const int n = std::clamp(static_cast<int>(64 + 24.0 * waves), 64, 40000);
  std::vector<double> ts(n + 1), vs(n + 1);
  for (int i = 0; i <= n; ++i) {
    ts[i] = lo + (hi - lo) * i / n;
    vs[i] = g(ts[i]);
  }
  double best = std::max(vs.front(), vs.back());
  const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
  for (int i = 0; i <= n; ++i) {
    const bool local_max =
        (i == 0 || vs[i] >= vs[i - 1]) && (i == n || vs[i] >= vs[i + 1]);
    if (!local_max) continue;
    double a = ts[std::max(0, i - 1)];
    double b = ts[std::min(n, i + 1)];
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = g(x1), f2 = g(x2);
    for (int it = 0; it < 80 && (b - a) > 1e-14 * std::max(1.0, std::abs(b)); ++it) {
      if (f1 < f2) {
        a = x1;
        x1 = x2;
        f1 = f2;
        x2 = a + gr * (b - a);
        f2 = g(x2);
      } else {
        b = x2;
        x2 = x1;
        f2 = f1;
        x1 = b - gr * (b - a);
        f1 = g(x1);
      }
    }
    best = std::max({best, f1, f2, vs[i]});
  }
  return best;
}

double max_osc_freq(const ExpPoly& g) {
  double w = 0.0;
  for (const auto& t : g.terms()) w = std::max(w, std::abs(t.mu.imag()));
  return w;
}

// Supremum of |g| over [0, inf) for an ExpPoly whose terms all satisfy
// Re mu <= 0 and (Re mu == 0 implies power == 0).
double sup_abs_halfline(const ExpPoly& g) {
  if (g.empty()) return 0.0;
  double t_search = 1.0;
  double persistent = 0.0;  // non-decaying oscillatory amplitude
  for (const auto& t : g.terms()) {
    const double decay = -t.mu.real();
    if (decay > 0.0) {
      t_search = std::max(t_search, 2.0 * t.power / decay + 2.0 / decay);
    } else {
      persistent += std::abs(t.c);
    }
  }
  const double freq = max_osc_freq(g);
  auto eval = [&g](double t) { return std::abs(g.value(t)); };
  for (int round = 0; round < 8; ++round) {
    const double found = sup_abs_interval(eval, 0.0, t_search, freq);
    double tail = persistent;
    for (const auto& t : g.terms()) {
      const double decay = -t.mu.real();
      if (decay > 0.0) {
        tail += std::abs(t.c) * std::pow(t_search, t.power) * std::exp(-decay * t_search);
      }
    }
    if (tail <= found || tail <= persistent * (1.0 + 1e-12)) {
      return std::max(found, tail);
    }
    t_search *= 2.0;
  }
  return sup_abs_interval(eval, 0.0, t_search, freq);
}

int oscillation_nodes(double freq, double t_max, const Config& cfg) {
  const double waves = freq * t_max / (2.0 * M_PI);
  int n = static_cast<int>(cfg.min_nodes + 10.0 * waves);
  return std::clamp(n, cfg.min_nodes, cfg.max_nodes);
}

}  // namespace

// ---------------------------------------------------------------------------
// ExpPoly

ExpPoly::ExpPoly(std::vector<ExpPolyTerm> terms, const Config& cfg) {
  for (const auto& t : terms) {
    if (t.power < 0) throw std::invalid_argument("ExpPoly: negative power");
    if (t.mu.real() > 1e-12 * (1.0 + std::abs(t.mu.imag()))) {
      throw std::invalid_argument("ExpPoly: growing exponent (Re mu > 0)");
    }
  }
  for (auto& t : terms) {
    if (t.mu.real() > 0.0) t.mu = cplx{0.0, t.mu.imag()};
  }
  terms_ = normalize_terms(std::move(terms), cfg);
}

ExpPoly ExpPoly::constant(cplx c) { return mode(c, 0, cplx{0.0, 0.0}); }

ExpPoly ExpPoly::decay(cplx c, double rate) { return mode(c, 0, cplx{-rate, 0.0}); }

ExpPoly ExpPoly::mode(cplx c, int power, cplx mu) {
  if (c == cplx{0.0, 0.0}) return ExpPoly{};
  return ExpPoly({{c, power, mu}}, Config{});
}

cplx ExpPoly::value(double t) const {
  cplx v{0.0, 0.0};
  for (const auto& term : terms_) {
    v += term.c * std::pow(t, term.power) * std::exp(term.mu * t);
  }
  return v;
}

double ExpPoly::coeff_scale() const {
  double s = 0.0;
  for (const auto& t : terms_) s = std::max(s, std::abs(t.c));
  return s;
}

ExpPoly ExpPoly::scaled(cplx s) const {
  ExpPoly out = *this;
  if (s == cplx{0.0, 0.0}) return ExpPoly{};
  for (auto& t : out.terms_) t.c *= s;
  return out;
}

ExpPoly ExpPoly::conjugated() const {
  std::vector<ExpPolyTerm> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) terms.push_back({std::conj(t.c), t.power, std::conj(t.mu)});
  ExpPoly out;
  out.terms_ = normalize_terms(std::move(terms), Config{});
  return out;
}

ExpPoly ExpPoly::derivative() const {
  std::vector<ExpPolyTerm> terms;
  terms.reserve(2 * terms_.size());
  for (const auto& t : terms_) {
    if (t.power > 0) {
      terms.push_back({t.c * static_cast<double>(t.power), t.power - 1, t.mu});
    }
    if (t.mu != cplx{0.0, 0.0}) {
      terms.push_back({t.c * t.mu, t.power, t.mu});
    }
  }
  ExpPoly out;
  out.terms_ = normalize_terms(std::move(terms), Config{});
  return out;
}

ExpPoly ExpPoly::shifted(double rate_shift) const {
  ExpPoly out = *this;
  for (auto& t : out.terms_) t.mu += rate_shift;
  return out;
}

// ---------------------------------------------------------------------------
// RationalDecay

RationalDecay::RationalDecay(std::vector<RationalTerm> terms) {
  for (const auto& t : terms) {
    if (t.order < 1) throw std::invalid_argument("RationalDecay: order must be >= 1");
  }
  std::sort(terms.begin(), terms.end(),
            [](const RationalTerm& a, const RationalTerm& b) { return a.order < b.order; });
  for (const auto& t : terms) {
    if (t.c == cplx{0.0, 0.0}) continue;
    if (!terms_.empty() && terms_.back().order == t.order) {
      terms_.back().c += t.c;
      if (terms_.back().c == cplx{0.0, 0.0}) terms_.pop_back();
    } else {
      terms_.push_back(t);
    }
  }
}

RationalDecay RationalDecay::single(cplx c, int order) { return RationalDecay({{c, order}}); }

int RationalDecay::min_order() const {
  int m = std::numeric_limits<int>::max();
  for (const auto& t : terms_) m = std::min(m, t.order);
  return terms_.empty() ? 0 : m;
}

cplx RationalDecay::value(double t) const {
  cplx v{0.0, 0.0};
  for (const auto& term : terms_) v += term.c * std::pow(t + 1.0, -term.order);
  return v;
}

RationalDecay RationalDecay::scaled(cplx s) const {
  if (s == cplx{0.0, 0.0}) return RationalDecay{};
  RationalDecay out = *this;
  for (auto& t : out.terms_) t.c *= s;
  return out;
}

RationalDecay RationalDecay::conjugated() const {
  RationalDecay out = *this;
  for (auto& t : out.terms_) t.c = std::conj(t.c);
  return out;
}

RationalDecay RationalDecay::derivative() const {
  std::vector<RationalTerm> terms;
  terms.reserve(terms_.size());
  for (const auto& t : terms_) {
    terms.push_back({-static_cast<double>(t.order) * t.c, t.order + 1});
  }
  return RationalDecay(std::move(terms));
}

// ---------------------------------------------------------------------------
// PiecewisePoly

namespace {

ExpPoly poly_to_exp(const std::vector<double>& coeffs) {
  std::vector<ExpPolyTerm> terms;
  for (int p = 0; p < static_cast<int>(coeffs.size()); ++p) {
    if (coeffs[p] != 0.0) terms.push_back({cplx{coeffs[p], 0.0}, p, cplx{0.0, 0.0}});
  }
  return ExpPoly(std::move(terms), Config{});
}

void check_breaks(const std::vector<double>& breaks) {
  if (breaks.size() < 2) throw std::invalid_argument("PiecewisePoly: need at least one interval");
  if (breaks.front() < 0.0) throw std::invalid_argument("PiecewisePoly: support must lie in t >= 0");
  for (size_t i = 1; i < breaks.size(); ++i) {
    if (breaks[i] <= breaks[i - 1]) {
      throw std::invalid_argument("PiecewisePoly: breakpoints must increase");
    }
  }
}

}  // namespace

PiecewisePoly PiecewisePoly::from_pieces(std::vector<double> breaks, std::vector<double> centers,
                                         std::vector<ExpPoly> content) {
  check_breaks(breaks);
  if (content.size() + 1 != breaks.size() || centers.size() != content.size()) {
    throw std::invalid_argument("PiecewisePoly: content/breakpoint count mismatch");
  }
  PiecewisePoly out;
  out.breaks_ = std::move(breaks);
  out.centers_ = std::move(centers);
  out.content_ = std::move(content);
  return out;
}

PiecewisePoly PiecewisePoly::from_polynomials(std::vector<double> breaks,
                                              std::vector<std::vector<double>> pieces) {
  std::vector<ExpPoly> content;
  std::vector<double> centers;
  content.reserve(pieces.size());
  for (size_t i = 0; i < pieces.size(); ++i) {
    content.push_back(poly_to_exp(pieces[i]));
    centers.push_back(i < breaks.size() ? breaks[i] : 0.0);
  }
  PiecewisePoly out = from_pieces(std::move(breaks), std::move(centers), std::move(content));

  // C^1 continuity at the interior breakpoints and at the support boundary.
  double scale = 1e-300;
  for (const auto& c : out.content_) scale = std::max(scale, c.coeff_scale());
  const double tol = 1e-9 * scale;
  auto val = [&](int piece, double t) {
    return piece < 0 || piece >= static_cast<int>(out.content_.size())
               ? cplx{0.0, 0.0}
               : out.content_[piece].value(t - out.centers_[piece]);
  };
  auto der = [&](int piece, double t) {
    return piece < 0 || piece >= static_cast<int>(out.content_.size())
               ? cplx{0.0, 0.0}
               : out.content_[piece].derivative().value(t - out.centers_[piece]);
  };
  for (size_t i = 0; i < out.breaks_.size(); ++i) {
    const double b = out.breaks_[i];
    const int left = static_cast<int>(i) - 1;
    const int right = (i + 1 < out.breaks_.size()) ? static_cast<int>(i) : -1;
    if (std::abs(val(left, b) - val(right, b)) > tol ||
        std::abs(der(left, b) - der(right, b)) > tol) {
      throw std::invalid_argument("PiecewisePoly: pieces are not C^1 at t = " + std::to_string(b));
    }
  }
  return out;
}

PiecewisePoly PiecewisePoly::bump(double t0, double amp, double h) {
  if (h <= 0.0) throw std::invalid_argument("bump: half-width must be positive");
  if (t0 - h < 0.0) throw std::invalid_argument("bump: support must lie in t >= 0");
  // (amp/h^4) (x^2 - h^2)^2 = (amp/h^4) x^4 - (2 amp/h^2) x^2 + amp,
  // in the local coordinate x = t - t0.
  std::vector<ExpPolyTerm> terms{{cplx{amp, 0.0}, 0, {0.0, 0.0}},
                                 {cplx{-2.0 * amp / (h * h), 0.0}, 2, {0.0, 0.0}},
                                 {cplx{amp / (h * h * h * h), 0.0}, 4, {0.0, 0.0}}};
  return from_pieces({t0 - h, t0 + h}, {t0}, {ExpPoly(std::move(terms), Config{})});
}

PiecewisePoly PiecewisePoly::bump_train(
    const std::vector<std::pair<double, double>>& centers_amps, double h) {
  if (centers_amps.empty()) return PiecewisePoly{};
  std::vector<std::pair<double, double>> sorted = centers_amps;
  std::sort(sorted.begin(), sorted.end());
  for (size_t l = 1; l < sorted.size(); ++l) {
    if (sorted[l].first - sorted[l - 1].first <= 2.0 * h) {
      throw std::invalid_argument("bump_train: bump spacing must exceed 2h");
    }
  }
  std::vector<double> breaks, centers;
  std::vector<ExpPoly> content;
  for (size_t l = 0; l < sorted.size(); ++l) {
    const double lo = sorted[l].first - h;
    const double hi = sorted[l].first + h;
    PiecewisePoly b = bump(sorted[l].first, sorted[l].second, h);
    if (l == 0) {
      breaks = {lo, hi};
      centers = {sorted[l].first};
      content = {b.content_.front()};
    } else {
      breaks.push_back(lo);  // close the gap [prev_hi, lo)
      centers.push_back(0.5 * (breaks[breaks.size() - 2] + lo));
      content.push_back(ExpPoly{});
      breaks.push_back(hi);
      centers.push_back(sorted[l].first);
      content.push_back(b.content_.front());
    }
  }
  return from_pieces(std::move(breaks), std::move(centers), std::move(content));
}

bool PiecewisePoly::empty() const {
  for (const auto& c : content_) {
    if (!c.empty()) return false;
  }
  return true;
}

cplx PiecewisePoly::value(double t) const {
  if (breaks_.empty() || t < breaks_.front() || t >= breaks_.back()) return {0.0, 0.0};
  auto it = std::upper_bound(breaks_.begin(), breaks_.end(), t);
  const int idx = static_cast<int>(it - breaks_.begin()) - 1;
  return content_[idx].value(t - centers_[idx]);
}

PiecewisePoly PiecewisePoly::scaled(cplx s) const {
  PiecewisePoly out = *this;
  for (auto& c : out.content_) c = c.scaled(s);
  return out;
}

PiecewisePoly PiecewisePoly::conjugated() const {
  PiecewisePoly out = *this;
  for (auto& c : out.content_) c = c.conjugated();
  return out;
}

namespace {

// Re-centre an ExpPoly in x_old = t - c_old to x_new = t - c_new:
// substitute x_old = x_new + delta with delta = c_new - c_old.
ExpPoly recentre(const ExpPoly& g, double delta, const Config& cfg) {
  if (delta == 0.0) return g;
  std::vector<ExpPolyTerm> terms;
  for (const auto& t : g.terms()) {
    const cplx phase = std::exp(t.mu * delta);
    double binom = 1.0;
    for (int j = t.power; j >= 0; --j) {
      // binom(p, j) * delta^{p-j}
      terms.push_back({t.c * phase * binom * std::pow(delta, t.power - j), j, t.mu});
      binom *= static_cast<double>(j) / static_cast<double>(t.power - j + 1);
    }
  }
  return ExpPoly(std::move(terms), cfg);
}

}  // namespace

// ---------------------------------------------------------------------------
// QuadFn

QuadFn QuadFn::sample(const std::function<cplx(double)>& f, double t_max, int n_nodes,
                      Envelope env, std::optional<RationalMajorant> rational,
                      double accuracy, bool promoted_from_cap) {
  if (t_max <= 0.0) throw std::invalid_argument("QuadFn: t_max must be positive");
  n_nodes = std::max(n_nodes, 8);
  QuadFn out;
  out.t_max_ = t_max;
  out.nodes_ = cheb::lobatto_nodes(n_nodes, 0.0, t_max);
  out.bary_ = cheb::barycentric_weights(n_nodes);
  out.values_.resize(n_nodes);
  for (int j = 0; j < n_nodes; ++j) out.values_[j] = f(out.nodes_[j]);
  out.env_ = env;
  out.rational_ = rational;
  out.accuracy_ = accuracy;
  out.promoted_ = promoted_from_cap;
  return out;
}

QuadFn QuadFn::from_values(double t_max, std::vector<cplx> values, Envelope env,
                           std::optional<RationalMajorant> rational, double accuracy,
                           bool promoted_from_cap) {
  if (t_max <= 0.0) throw std::invalid_argument("QuadFn: t_max must be positive");
  if (values.size() < 2) throw std::invalid_argument("QuadFn: need at least 2 node values");
  QuadFn out;
  out.t_max_ = t_max;
  out.nodes_ = cheb::lobatto_nodes(static_cast<int>(values.size()), 0.0, t_max);
  out.bary_ = cheb::barycentric_weights(static_cast<int>(values.size()));
  out.values_ = std::move(values);
  out.env_ = env;
  out.rational_ = rational;
  out.accuracy_ = accuracy;
  out.promoted_ = promoted_from_cap;
  return out;
}

cplx QuadFn::value(double t) const {
  if (values_.empty()) return {0.0, 0.0};
  if (t <= t_max_) {
    return cheb::barycentric_eval(nodes_, bary_, values_, t);
  }
  const cplx boundary = values_.front();  // node 0 is t_max (descending order)
  if (env_.rate > 0.0) return boundary * std::exp(-env_.rate * (t - t_max_));
  if (rational_ && rational_->order > 0) {
    return boundary * std::pow((t + 1.0) / (t_max_ + 1.0), -rational_->order);
  }
  return boundary;
}

QuadFn QuadFn::scaled(cplx s) const {
  QuadFn out = *this;
  for (auto& v : out.values_) v *= s;
  const double m = std::abs(s);
  out.env_.amplitude *= m;
  if (out.rational_) out.rational_->amplitude *= m;
  out.accuracy_ *= m;
  return out;
}

QuadFn QuadFn::conjugated() const {
  QuadFn out = *this;
  for (auto& v : out.values_) v = std::conj(v);
  return out;
}

// ---------------------------------------------------------------------------
// TimeFn basics

TimeClass TimeFn::cls() const {
  return static_cast<TimeClass>(rep_.index());
}

bool TimeFn::is_zero() const {
  return std::visit(
      [](const auto& v) -> bool {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, ExpPoly>) return v.empty();
        else if constexpr (std::is_same_v<T, RationalDecay>) return v.empty();
        else if constexpr (std::is_same_v<T, PiecewisePoly>) return v.empty();
        else return false;
      },
      rep_);
}

bool TimeFn::is_constant() const { return constant_value().has_value(); }

std::optional<cplx> TimeFn::constant_value() const {
  if (const auto* e = std::get_if<ExpPoly>(&rep_)) {
    if (e->empty()) return cplx{0.0, 0.0};
    if (e->terms().size() == 1 && e->terms()[0].power == 0 &&
        e->terms()[0].mu == cplx{0.0, 0.0}) {
      return e->terms()[0].c;
    }
  }
  return std::nullopt;
}

cplx TimeFn::value(double t) const {
  return std::visit([t](const auto& v) { return v.value(t); }, rep_);
}

// ---------------------------------------------------------------------------
// Promotion to QuadFn

namespace {

double natural_freq(const TimeFn& f) {
  if (const auto* e = std::get_if<ExpPoly>(&f.rep())) return max_osc_freq(*e);
  return 0.0;
}

// Build the sampled representation of an arbitrary TimeFn, carrying over the
// certified decay data of the construction.
QuadFn promote_to_quad(const TimeFn& f, const Config& cfg, bool from_cap = false) {
  if (const auto* q = std::get_if<QuadFn>(&f.rep())) return *q;

  const RateLimit rl = max_certifiable_rate(f);
  double rate = 0.0;
  if (std::isfinite(rl.rate)) {
    rate = rl.attainable ? rl.rate : 0.9 * rl.rate;
  }
  double t_max;
  if (const auto* p = std::get_if<PiecewisePoly>(&f.rep())) {
    t_max = std::max(1.0, 1.25 * p->support_end());
    rate = 0.0;
  } else if (rate > 0.0) {
    t_max = cfg.t_max_factor / rate;
  } else {
    t_max = cfg.t_max_ratefree;
  }
  int n = oscillation_nodes(natural_freq(f), t_max, cfg);
  if (f.cls() == TimeClass::rational) {
    // the pole at t = -1 sits close to the domain edge; resolve it
    n = std::clamp(std::max(n, 257), n, cfg.max_nodes);
  }
  const Envelope env = certify_envelope(f, rate, cfg);

  std::optional<RationalMajorant> rational;
  if (const auto* r = std::get_if<RationalDecay>(&f.rep()); r && !r->empty()) {
    double amp = 0.0;
    for (const auto& t : r->terms()) amp += std::abs(t.c);
    rational = RationalMajorant{amp, r->min_order()};
  }
  return QuadFn::sample([&f](double t) { return f.value(t); }, t_max, n, env, rational,
                        1e-14 * std::max(1.0, env.amplitude), from_cap);
}

QuadFn resampled_binary(const QuadFn& a, const QuadFn& b,
                        const std::function<cplx(cplx, cplx)>& op, Envelope env,
                        std::optional<RationalMajorant> rational, double accuracy,
                        const Config& cfg) {
  const double t_max = std::max(a.t_max(), b.t_max());
  const int n = std::clamp(std::max(a.n_nodes(), b.n_nodes()), cfg.min_nodes, cfg.max_nodes);
  return QuadFn::sample([&](double t) { return op(a.value(t), b.value(t)); }, t_max, n, env,
                        rational, accuracy, a.promoted_from_cap() || b.promoted_from_cap());
}

std::optional<RationalMajorant> majorant_of(const TimeFn& f, const Config&) {
  switch (f.cls()) {
    case TimeClass::rational: {
      const auto& r = std::get<RationalDecay>(f.rep());
      if (r.empty()) return RationalMajorant{0.0, 1};
      double amp = 0.0;
      for (const auto& t : r.terms()) amp += std::abs(t.c);
      return RationalMajorant{amp, r.min_order()};
    }
    case TimeClass::quad:
      return std::get<QuadFn>(f.rep()).rational_majorant();
    default:
      return std::nullopt;
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// add / scale / multiply

namespace {

TimeFn add_exp(const ExpPoly& a, const ExpPoly& b, const Config& cfg) {
  std::vector<ExpPolyTerm> terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  ExpPoly out(std::move(terms), cfg);
  if (static_cast<int>(out.terms().size()) > cfg.term_cap) {
    return TimeFn(promote_to_quad(TimeFn(out), cfg, true));
  }
  return TimeFn(std::move(out));
}

TimeFn add_rational(const RationalDecay& a, const RationalDecay& b) {
  std::vector<RationalTerm> terms = a.terms();
  terms.insert(terms.end(), b.terms().begin(), b.terms().end());
  return TimeFn(RationalDecay(std::move(terms)));
}

TimeFn add_piecewise(const PiecewisePoly& a, const PiecewisePoly& b, const Config& cfg) {
  if (a.breaks().empty()) return TimeFn(b);
  if (b.breaks().empty()) return TimeFn(a);
  std::vector<double> breaks;
  breaks.reserve(a.breaks().size() + b.breaks().size());
  std::merge(a.breaks().begin(), a.breaks().end(), b.breaks().begin(), b.breaks().end(),
             std::back_inserter(breaks));
  breaks.erase(std::unique(breaks.begin(), breaks.end(),
                           [](double x, double y) { return std::abs(x - y) <= 1e-13; }),
               breaks.end());
  auto content_at = [&cfg](const PiecewisePoly& p, double mid, double new_centre) -> ExpPoly {
    if (p.breaks().empty() || mid < p.breaks().front() || mid >= p.breaks().back()) return {};
    auto it = std::upper_bound(p.breaks().begin(), p.breaks().end(), mid);
    const size_t idx = static_cast<size_t>(it - p.breaks().begin()) - 1;
    return recentre(p.content()[idx], new_centre - p.centers()[idx], cfg);
  };
  std::vector<ExpPoly> content;
  std::vector<double> centers;
  content.reserve(breaks.size() - 1);
  for (size_t i = 0; i + 1 < breaks.size(); ++i) {
    const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
    centers.push_back(mid);
    std::vector<ExpPolyTerm> terms = content_at(a, mid, mid).terms();
    const auto bt = content_at(b, mid, mid).terms();
    terms.insert(terms.end(), bt.begin(), bt.end());
    content.emplace_back(std::move(terms), cfg);
  }
  return TimeFn(
      PiecewisePoly::from_pieces(std::move(breaks), std::move(centers), std::move(content)));
}

}  // namespace

TimeFn add(const TimeFn& f, const TimeFn& g, const Config& cfg) {
  if (f.is_zero()) return g;
  if (g.is_zero()) return f;

  if (f.cls() == g.cls()) {
    switch (f.cls()) {
      case TimeClass::exp_poly:
        return add_exp(std::get<ExpPoly>(f.rep()), std::get<ExpPoly>(g.rep()), cfg);
      case TimeClass::rational:
        return add_rational(std::get<RationalDecay>(f.rep()), std::get<RationalDecay>(g.rep()));
      case TimeClass::piecewise:
        return add_piecewise(std::get<PiecewisePoly>(f.rep()), std::get<PiecewisePoly>(g.rep()),
                             cfg);
      case TimeClass::quad:
        break;  // handled below
    }
  }

  // mixed classes (or two QuadFn): sampled sum
  const QuadFn qa = promote_to_quad(f, cfg);
  const QuadFn qb = promote_to_quad(g, cfg);
  Envelope env{qa.stored_envelope().amplitude + qb.stored_envelope().amplitude,
               std::min(qa.stored_envelope().rate, qb.stored_envelope().rate)};
  std::optional<RationalMajorant> rational;
  if (qa.rational_majorant() && qb.rational_majorant()) {
    rational = RationalMajorant{
        qa.rational_majorant()->amplitude + qb.rational_majorant()->amplitude,
        std::min(qa.rational_majorant()->order, qb.rational_majorant()->order)};
  }
  return TimeFn(resampled_binary(
      qa, qb, [](cplx x, cplx y) { return x + y; }, env, rational,
      qa.accuracy() + qb.accuracy(), cfg));
}

TimeFn scale(const TimeFn& f, cplx s) {
  if (s == cplx{0.0, 0.0}) return TimeFn::zero();
  return std::visit([&](const auto& v) { return TimeFn(v.scaled(s)); }, f.rep());
}

TimeFn multiply(const TimeFn& f, const TimeFn& g, const Config& cfg) {
  if (f.is_zero() || g.is_zero()) return TimeFn::zero();
  if (auto c = f.constant_value()) return scale(g, *c);
  if (auto c = g.constant_value()) return scale(f, *c);

  if (f.cls() == g.cls()) {
    switch (f.cls()) {
      case TimeClass::exp_poly: {
        const auto& a = std::get<ExpPoly>(f.rep());
        const auto& b = std::get<ExpPoly>(g.rep());
        std::vector<ExpPolyTerm> terms;
        terms.reserve(a.terms().size() * b.terms().size());
        for (const auto& ta : a.terms()) {
          for (const auto& tb : b.terms()) {
            terms.push_back({ta.c * tb.c, ta.power + tb.power, ta.mu + tb.mu});
          }
        }
        ExpPoly out(std::move(terms), cfg);
        if (static_cast<int>(out.terms().size()) > cfg.term_cap) {
          return TimeFn(promote_to_quad(TimeFn(out), cfg, true));
        }
        return TimeFn(std::move(out));
      }
      case TimeClass::rational: {
        const auto& a = std::get<RationalDecay>(f.rep());
        const auto& b = std::get<RationalDecay>(g.rep());
        std::vector<RationalTerm> terms;
        terms.reserve(a.terms().size() * b.terms().size());
        for (const auto& ta : a.terms()) {
          for (const auto& tb : b.terms()) {
            terms.push_back({ta.c * tb.c, ta.order + tb.order});
          }
        }
        return TimeFn(RationalDecay(std::move(terms)));
      }
      case TimeClass::piecewise: {
        const auto& a = std::get<PiecewisePoly>(f.rep());
        const auto& b = std::get<PiecewisePoly>(g.rep());
        // support intersection
        const double lo = std::max(a.breaks().front(), b.breaks().front());
        const double hi = std::min(a.breaks().back(), b.breaks().back());
        if (hi <= lo) return TimeFn::zero();
        std::vector<double> breaks{lo};
        for (double x : a.breaks())
          if (x > lo && x < hi) breaks.push_back(x);
        for (double x : b.breaks())
          if (x > lo && x < hi) breaks.push_back(x);
        breaks.push_back(hi);
        std::sort(breaks.begin(), breaks.end());
        breaks.erase(std::unique(breaks.begin(), breaks.end(),
                                 [](double x, double y) { return std::abs(x - y) <= 1e-13; }),
                     breaks.end());
        auto content_at = [&cfg](const PiecewisePoly& p, double mid, double new_centre) -> ExpPoly {
          auto it = std::upper_bound(p.breaks().begin(), p.breaks().end(), mid);
          const int idx = static_cast<int>(it - p.breaks().begin()) - 1;
          if (idx < 0 || idx >= static_cast<int>(p.content().size())) return {};
          return recentre(p.content()[idx], new_centre - p.centers()[idx], cfg);
        };
        std::vector<ExpPoly> content;
        std::vector<double> centers;
        for (size_t i = 0; i + 1 < breaks.size(); ++i) {
          const double mid = 0.5 * (breaks[i] + breaks[i + 1]);
          centers.push_back(mid);
          const ExpPoly pa = content_at(a, mid, mid);
          const ExpPoly pb = content_at(b, mid, mid);
          std::vector<ExpPolyTerm> terms;
          for (const auto& ta : pa.terms()) {
            for (const auto& tb : pb.terms()) {
              terms.push_back({ta.c * tb.c, ta.power + tb.power, ta.mu + tb.mu});
            }
          }
          content.emplace_back(std::move(terms), cfg);
        }
        return TimeFn(
            PiecewisePoly::from_pieces(std::move(breaks), std::move(centers), std::move(content)));
      }
      case TimeClass::quad:
        break;
    }
  }

  const QuadFn qa = promote_to_quad(f, cfg);
  const QuadFn qb = promote_to_quad(g, cfg);
  Envelope env{qa.stored_envelope().amplitude * qb.stored_envelope().amplitude,
               std::min(qa.stored_envelope().rate, qb.stored_envelope().rate)};
  std::optional<RationalMajorant> rational;
  if (qa.rational_majorant() && qb.rational_majorant()) {
    rational = RationalMajorant{
        qa.rational_majorant()->amplitude * qb.rational_majorant()->amplitude,
        qa.rational_majorant()->order + qb.rational_majorant()->order};
  }
  const double acc = qa.accuracy() * qb.stored_envelope().amplitude +
                     qb.accuracy() * qa.stored_envelope().amplitude;
  return TimeFn(resampled_binary(
      qa, qb, [](cplx x, cplx y) { return x * y; }, env, rational, acc, cfg));
}

TimeFn conjugate(const TimeFn& f) {
  return std::visit([](const auto& v) { return TimeFn(v.conjugated()); }, f.rep());
}

TimeFn prune(const TimeFn& f, double abs_threshold) {
  if (abs_threshold <= 0.0) return f;
  if (const auto* e = std::get_if<ExpPoly>(&f.rep())) {
    std::vector<ExpPolyTerm> terms;
    for (const auto& t : e->terms()) {
      if (std::abs(t.c) > abs_threshold) terms.push_back(t);
    }
    return TimeFn(ExpPoly(std::move(terms), Config{}));
  }
  if (const auto* r = std::get_if<RationalDecay>(&f.rep())) {
    std::vector<RationalTerm> terms;
    for (const auto& t : r->terms()) {
      if (std::abs(t.c) > abs_threshold) terms.push_back(t);
    }
    return TimeFn(RationalDecay(std::move(terms)));
  }
  return f;
}

// ---------------------------------------------------------------------------
// time derivative

TimeFn time_derivative(const TimeFn& f, const Config& cfg) {
  (void)cfg;
  switch (f.cls()) {
    case TimeClass::exp_poly:
      return TimeFn(std::get<ExpPoly>(f.rep()).derivative());
    case TimeClass::rational:
      return TimeFn(std::get<RationalDecay>(f.rep()).derivative());
    case TimeClass::piecewise: {
      const auto& p = std::get<PiecewisePoly>(f.rep());
      if (p.breaks().empty()) return TimeFn::zero();
      std::vector<ExpPoly> content;
      content.reserve(p.content().size());
      for (const auto& c : p.content()) content.push_back(c.derivative());
      // the derivative must be continuous, otherwise the input was not C^1
      double scale = 1e-300;
      for (const auto& c : content) scale = std::max(scale, c.coeff_scale());
      const double tol = 1e-8 * std::max(scale, 1e-30);
      for (size_t i = 0; i < p.breaks().size(); ++i) {
        const double b = p.breaks()[i];
        if (i == 0 && b <= 0.0) continue;  // domain boundary, no left side
        const cplx left = (i == 0) ? cplx{0.0, 0.0} : content[i - 1].value(b - p.centers()[i - 1]);
        const cplx right = (i + 1 == p.breaks().size()) ? cplx{0.0, 0.0}
                                                        : content[i].value(b - p.centers()[i]);
        if (std::abs(left - right) > tol) {
          throw std::invalid_argument(
              "time_derivative: piecewise input is not differentiable at t = " +
              std::to_string(b));
        }
      }
      return TimeFn(PiecewisePoly::from_pieces(p.breaks(), p.centers(), std::move(content)));
    }
    case TimeClass::quad: {
      const auto& q = std::get<QuadFn>(f.rep());
      if (q.node_values().empty()) return TimeFn::zero();
      auto coeffs = cheb::values_to_coeffs(q.node_values());
      auto dcoeffs = cheb::coeff_derivative(coeffs, 0.0, q.t_max());
      auto dvals = cheb::coeffs_to_values(dcoeffs);
      QuadFn out = q;
      // measured envelope of the derivative on the sampled range
      double amp = 0.0;
      for (size_t j = 0; j < dvals.size(); ++j) {
        amp = std::max(amp, std::abs(dvals[j]) * std::exp(q.stored_envelope().rate * q.nodes()[j]));
      }
      Envelope env{amp, q.stored_envelope().rate};
      std::optional<RationalMajorant> rational;
      if (q.rational_majorant()) {
        double ramp = 0.0;
        const int order = q.rational_majorant()->order + 1;
        for (size_t j = 0; j < dvals.size(); ++j) {
          ramp = std::max(ramp, std::abs(dvals[j]) * std::pow(q.nodes()[j] + 1.0, order));
        }
        rational = RationalMajorant{ramp, order};
      }
      const double n2 = static_cast<double>(q.n_nodes()) * q.n_nodes();
      return TimeFn(QuadFn::from_values(q.t_max(), std::move(dvals), env, rational,
                                        q.accuracy() * n2 / q.t_max(), q.promoted_from_cap()));
    }
  }
  return TimeFn::zero();
}

// ---------------------------------------------------------------------------
// oscillatory tail

namespace {

// Indefinite integral of  sum_i c_i s^{p_i} exp(mu_i s) * exp(i lambda s):
// the antiderivative is an ExpPoly in s with exponents nu = mu + i lambda
// (or a pure power when nu == 0). Exponents may have Re nu <= 0 always.
std::vector<ExpPolyTerm> osc_antiderivative_terms(const ExpPoly& g, double lambda) {
  std::vector<ExpPolyTerm> out;
  for (const auto& t : g.terms()) {
    const cplx nu = t.mu + cplx{0.0, lambda};
    if (std::abs(nu) <= 1e-14 * (1.0 + std::abs(lambda))) {
      out.push_back({t.c / static_cast<double>(t.power + 1), t.power + 1, cplx{0.0, 0.0}});
    } else {
      for (int j = 0; j <= t.power; ++j) {
        const double sign = (j % 2 == 0) ? 1.0 : -1.0;
        const cplx coeff = t.c * sign * falling_factorial(t.power, j) / std::pow(nu, j + 1);
        out.push_back({coeff, t.power - j, nu});
      }
    }
  }
  return out;
}

cplx eval_terms(const std::vector<ExpPolyTerm>& terms, double s) {
  cplx v{0.0, 0.0};
  for (const auto& t : terms) v += t.c * std::pow(s, t.power) * std::exp(t.mu * s);
  return v;
}

TimeFn tail_exp(const ExpPoly& f, double lambda, const Config& cfg) {
  std::vector<ExpPolyTerm> out;
  for (const auto& t : f.terms()) {
    if (t.mu.real() >= 0.0) {
      throw TailDiverges("oscillatory_tail: ExpPoly term without decay (Re mu >= 0)");
    }
    const cplx nu = t.mu + cplx{0.0, lambda};
    for (int j = 0; j <= t.power; ++j) {
      const double sign = (j % 2 == 0) ? 1.0 : -1.0;
      const cplx coeff = t.c * sign * falling_factorial(t.power, j) / std::pow(nu, j + 1);
      out.push_back({coeff, t.power - j, t.mu});
    }
  }
  ExpPoly result(std::move(out), cfg);
  if (static_cast<int>(result.terms().size()) > cfg.term_cap) {
    return TimeFn(promote_to_quad(TimeFn(result), cfg, true));
  }
  return TimeFn(std::move(result));
}

TimeFn tail_rational_zero_mode(const RationalDecay& f, const Config&) {
  std::vector<RationalTerm> out;
  for (const auto& t : f.terms()) {
    if (t.order < 2) {
      throw TailDiverges("oscillatory_tail: RationalDecay of order 1 diverges at lambda = 0");
    }
    out.push_back({-t.c / static_cast<double>(t.order - 1), t.order - 1});
  }
  return TimeFn(RationalDecay(std::move(out)));
}

// J_p(x) = int_x^inf exp(i lambda u) u^{-p} du, x >= 1, lambda != 0.
// Integration by parts K times down to p + K = 6, then adaptive quadrature of
// the absolutely convergent remainder with a certified cut.
cplx tail_J(double lambda, int p, double x, double tol) {
  const cplx ilam{0.0, lambda};
  cplx series{0.0, 0.0};
  cplx factor{1.0, 0.0};
  int q = p;
  while (q < 6) {
    series += -factor * std::exp(ilam * x) * std::pow(x, -q) / ilam;
    factor *= static_cast<double>(q) / ilam;
    ++q;
  }
  // remainder: factor * J_q(x) with q >= 6
  const double cut_bound = 2.0 / std::abs(lambda);
  double x_end = std::pow(cut_bound * std::abs(factor) / std::max(tol, 1e-300),
                          1.0 / static_cast<double>(q));
  x_end = std::max(x_end, x * 1.0000001);
  auto integrand = [lambda, q](double u) {
    return std::exp(cplx{0.0, lambda * u}) * std::pow(u, -q);
  };
  const auto res = quad::integrate(integrand, x, x_end, tol / std::max(1.0, std::abs(factor)),
                                   1e-13, 4000);
  return series + factor * res.value;
}

TimeFn tail_rational_osc(const RationalDecay& f, double lambda, const Config& cfg) {
  const double t_max = cfg.t_max_ratefree;
  const int n =
      std::min(std::max(257, oscillation_nodes(std::abs(lambda), t_max, cfg)), cfg.max_nodes);

  auto c_of_t = [&](double t) {
    // c(t) = - sum_i c_i exp(-i lambda (t+1)) * ... ; derive directly:
    //   int_t^inf exp(i lambda (s-t)) (s+1)^{-m} ds
    //     = exp(-i lambda (t+1)) * J_m(t + 1)           [u = s + 1]
    cplx acc{0.0, 0.0};
    for (const auto& term : f.terms()) {
      const cplx J = tail_J(lambda, term.order, t + 1.0, cfg.tail_tol);
      acc += term.c * std::exp(cplx{0.0, -lambda * (t + 1.0)}) * J;
    }
    return -acc;
  };

  // decay bookkeeping: |c(t)| <= int_t^inf |f| for orders >= 2, and the
  // by-parts bound 2|c|/|lambda| (t+1)^{-1} otherwise
  double amp = 0.0;
  int order = std::numeric_limits<int>::max();
  for (const auto& term : f.terms()) {
    if (term.order >= 2) {
      amp += std::abs(term.c) / (term.order - 1);
      order = std::min(order, term.order - 1);
    } else {
      amp += 2.0 * std::abs(term.c) / std::abs(lambda);
      order = std::min(order, 1);
    }
  }
  RationalMajorant rational{amp, order};
  Envelope env{amp, 0.0};
  return TimeFn(QuadFn::sample(c_of_t, t_max, n, env, rational, cfg.tail_tol, false));
}

TimeFn tail_piecewise(const PiecewisePoly& f, double lambda, const Config& cfg) {
  if (f.breaks().empty() || f.empty()) return TimeFn::zero();
  const auto& breaks = f.breaks();
  const int pieces = static_cast<int>(f.content().size());

  std::vector<ExpPoly> out_content(pieces);
  cplx boundary{0.0, 0.0};  // c(b_{i+1}), accumulated right to left
  const cplx ilam{0.0, lambda};

  // Per piece, in the local coordinate x = t - centre:
  //   c(x) = exp(-i lambda x) Q(x)
  //        + exp(-i lambda x) [ v exp(i lambda x_hi) - Q(x_hi) ],
  // with Q the antiderivative of exp(i lambda x) * content(x) and v the
  // boundary value accumulated from the right.
  for (int i = pieces - 1; i >= 0; --i) {
    const double centre = f.centers()[i];
    const double x_hi = breaks[i + 1] - centre;
    const auto q_terms = osc_antiderivative_terms(f.content()[i], lambda);
    const cplx q_hi = eval_terms(q_terms, x_hi);

    std::vector<ExpPolyTerm> terms;
    terms.reserve(q_terms.size() + 1);
    for (const auto& t : q_terms) {
      terms.push_back({t.c, t.power, t.mu - ilam});  // exp(-i lambda x) * Q(x)
    }
    const cplx const_coeff = boundary * std::exp(ilam * x_hi) - q_hi;
    if (const_coeff != cplx{0.0, 0.0}) {
      terms.push_back({const_coeff, 0, -ilam});
    }
    out_content[i] = ExpPoly(std::move(terms), cfg);
    boundary = out_content[i].value(breaks[i] - centre);
  }

  std::vector<double> out_breaks = breaks;
  std::vector<double> out_centers = f.centers();
  if (breaks.front() > 0.0) {
    // before the support starts the tail is a pure oscillation; centre the
    // lead piece at its left end t = 0
    std::vector<ExpPolyTerm> lead;
    const cplx coeff = boundary * std::exp(ilam * breaks.front());
    if (coeff != cplx{0.0, 0.0}) lead.push_back({coeff, 0, -ilam});
    out_breaks.insert(out_breaks.begin(), 0.0);
    out_centers.insert(out_centers.begin(), 0.0);
    out_content.insert(out_content.begin(), ExpPoly(std::move(lead), cfg));
  }
  return TimeFn(PiecewisePoly::from_pieces(std::move(out_breaks), std::move(out_centers),
                                           std::move(out_content)));
}

TimeFn tail_quad(const QuadFn& f, double lambda, const Config& cfg) {
  if (f.node_values().empty()) return TimeFn::zero();
  const double t_max = f.t_max();
  const bool zero_mode = std::abs(lambda) <= 1e-14;
  if (zero_mode) {
    const bool integrable = f.stored_envelope().rate > 0.0 ||
                            (f.rational_majorant() && f.rational_majorant()->order >= 2);
    if (!integrable) {
      throw TailDiverges("oscillatory_tail: sampled function is not integrable at lambda = 0");
    }
  } else if (f.stored_envelope().rate <= 0.0 && !f.rational_majorant()) {
    throw TailDiverges("oscillatory_tail: sampled function carries no decay certificate");
  }

  // refine the grid so exp(i lambda s) is resolved
  const int n = std::max(f.n_nodes(), oscillation_nodes(std::abs(lambda), t_max, cfg));
  const auto nodes = cheb::lobatto_nodes(n, 0.0, t_max);
  std::vector<cplx> prod(n);
  for (int j = 0; j < n; ++j) {
    prod[j] = f.value(nodes[j]) * std::exp(cplx{0.0, lambda * nodes[j]});
  }
  const auto coeffs = cheb::values_to_coeffs(prod);
  const auto anti = cheb::coeff_antiderivative(coeffs, 0.0, t_max);  // P with P(0) = 0
  const cplx p_end = cheb::coeff_eval(anti, 0.0, t_max, t_max);

  // Estimate of int_{t_max}^inf exp(i lambda s) f(s) ds. Any error in this
  // constant enters the result as a homogeneous solution exp(-i lambda t)
  // and leaves the ODE residual c' + i lambda c - f untouched; it only
  // perturbs the initial-condition choice. Recorded in the accuracy field.
  cplx tail_beyond{0.0, 0.0};
  double tail_err = 0.0;
  const cplx f_end = f.value(t_max);
  if (!zero_mode) {
    // one integration by parts with the boundary value
    const cplx ilam{0.0, lambda};
    tail_beyond = -std::exp(ilam * t_max) * f_end / ilam;
    tail_err = std::abs(f_end) / (lambda * lambda) / std::max(1.0, t_max);
  } else if (f.rational_majorant() && f.rational_majorant()->order >= 2) {
    // power-law extrapolation of the boundary value
    const int m = f.rational_majorant()->order;
    tail_beyond = f_end * (t_max + 1.0) / (m - 1.0);
    tail_err = std::abs(tail_beyond) * 0.5;
  } else {
    const double a = f.stored_envelope().rate;
    tail_beyond = f_end / a;
    tail_err = std::abs(tail_beyond) * 0.25;
  }

  std::vector<cplx> out_values(n);
  for (int j = 0; j < n; ++j) {
    const cplx p_t = cheb::coeff_eval(anti, 0.0, t_max, nodes[j]);
    out_values[j] = -std::exp(cplx{0.0, -lambda * nodes[j]}) * (p_end - p_t + tail_beyond);
  }

  Envelope env;
  std::optional<RationalMajorant> rational;
  if (f.stored_envelope().rate > 0.0) {
    env = Envelope{f.stored_envelope().amplitude / f.stored_envelope().rate,
                   f.stored_envelope().rate};
  } else {
    env = Envelope{0.0, 0.0};
    for (const auto& v : out_values) env.amplitude = std::max(env.amplitude, std::abs(v));
    env.amplitude *= 1.05;
  }
  if (f.rational_majorant() && f.rational_majorant()->order >= 2) {
    rational = RationalMajorant{
        f.rational_majorant()->amplitude / (f.rational_majorant()->order - 1.0),
        f.rational_majorant()->order - 1};
  }

  return TimeFn(QuadFn::from_values(t_max, std::move(out_values), env, rational,
                                    f.accuracy() * t_max + tail_err + cfg.tail_tol,
                                    f.promoted_from_cap()));
}

}  // namespace

TimeFn oscillatory_tail(const TimeFn& f, double lambda, const Config& cfg) {
  if (f.is_zero()) return TimeFn::zero();
  switch (f.cls()) {
    case TimeClass::exp_poly:
      return tail_exp(std::get<ExpPoly>(f.rep()), lambda, cfg);
    case TimeClass::rational: {
      const auto& r = std::get<RationalDecay>(f.rep());
      if (std::abs(lambda) <= 1e-14) return tail_rational_zero_mode(r, cfg);
      return tail_rational_osc(r, lambda, cfg);
    }
    case TimeClass::piecewise:
      return tail_piecewise(std::get<PiecewisePoly>(f.rep()), lambda, cfg);
    case TimeClass::quad:
      return tail_quad(std::get<QuadFn>(f.rep()), lambda, cfg);
  }
  return TimeFn::zero();
}

// ---------------------------------------------------------------------------
// certification

RateLimit max_certifiable_rate(const TimeFn& f) {
  switch (f.cls()) {
    case TimeClass::exp_poly: {
      const auto& e = std::get<ExpPoly>(f.rep());
      if (e.empty()) return {kInf, true};
      double rate = kInf;
      for (const auto& t : e.terms()) rate = std::min(rate, -t.mu.real());
      bool attainable = true;
      for (const auto& t : e.terms()) {
        if (-t.mu.real() == rate && t.power > 0) attainable = false;
      }
      return {rate, attainable};
    }
    case TimeClass::rational: {
      const auto& r = std::get<RationalDecay>(f.rep());
      if (r.empty()) return {kInf, true};
      return {0.0, true};
    }
    case TimeClass::piecewise:
      return {kInf, true};
    case TimeClass::quad:
      return {std::get<QuadFn>(f.rep()).stored_envelope().rate, true};
  }
  return {0.0, true};
}

Envelope certify_envelope(const TimeFn& f, double rate_target, const Config& cfg) {
  (void)cfg;
  if (rate_target < 0.0) throw std::invalid_argument("certify_envelope: negative rate");
  if (f.is_zero()) return {0.0, rate_target};

  switch (f.cls()) {
    case TimeClass::exp_poly: {
      const auto& e = std::get<ExpPoly>(f.rep());
      // admissibility
      for (const auto& t : e.terms()) {
        const double margin = -t.mu.real() - rate_target;
        if (margin < 0.0 || (margin == 0.0 && t.power > 0)) {
          throw std::invalid_argument(
              "certify_envelope: target rate exceeds the certifiable decay of an ExpPoly term");
        }
      }
      const ExpPoly g = e.shifted(rate_target);
      return {sup_abs_halfline(g), rate_target};
    }
    case TimeClass::rational: {
      if (rate_target > 0.0) {
        throw std::invalid_argument(
            "certify_envelope: RationalDecay has no exponential decay rate");
      }
      const auto& r = std::get<RationalDecay>(f.rep());
      // |f| as a polynomial in u = (t+1)^{-1} on (0, 1]
      auto g = [&r](double u) {
        cplx v{0.0, 0.0};
        for (const auto& term : r.terms()) v += term.c * std::pow(u, term.order);
        return std::abs(v);
      };
      return {sup_abs_interval(g, 0.0, 1.0, 0.0), 0.0};
    }
    case TimeClass::piecewise: {
      const auto& p = std::get<PiecewisePoly>(f.rep());
      double best = 0.0;
      for (size_t i = 0; i < p.content().size(); ++i) {
        if (p.content()[i].empty()) continue;
        // weight exp(rate t) = exp(rate centre) * exp(rate x) locally
        const ExpPoly g = p.content()[i].shifted(rate_target);
        const double weight = std::exp(rate_target * p.centers()[i]);
        auto eval = [&g](double x) { return std::abs(g.value(x)); };
        const double lo = p.breaks()[i] - p.centers()[i];
        const double hi = p.breaks()[i + 1] - p.centers()[i];
        best = std::max(best, weight * sup_abs_interval(eval, lo, hi, max_osc_freq(g)));
      }
      return {best, rate_target};
    }
    case TimeClass::quad: {
      const auto& q = std::get<QuadFn>(f.rep());
      if (rate_target > q.stored_envelope().rate + 1e-15) {
        throw std::invalid_argument(
            "certify_envelope: target rate exceeds the sampled function's certificate");
      }
      double best = 0.0;
      const int dense = 4 * q.n_nodes();
      for (int i = 0; i <= dense; ++i) {
        const double t = q.t_max() * i / dense;
        best = std::max(best, std::abs(q.value(t)) * std::exp(rate_target * t));
      }
      // beyond the sampled range use the analytic certificates
      double beyond = q.stored_envelope().amplitude *
                      std::exp(-(q.stored_envelope().rate - rate_target) * q.t_max());
      if (q.rational_majorant() && rate_target == 0.0) {
        beyond = std::min(beyond, q.rational_majorant()->amplitude *
                                      std::pow(q.t_max() + 1.0, -q.rational_majorant()->order));
      }
      return {std::max(best, beyond), rate_target};
    }
  }
  return {0.0, rate_target};
}

RationalMajorant certify_rational(const TimeFn& f, int order_target, const Config& cfg) {
  (void)cfg;
  if (order_target < 0) throw std::invalid_argument("certify_rational: negative order");
  if (f.is_zero()) return {0.0, order_target};

  auto weighted_sup_to = [&](double t_hi, double extra_freq) {
    auto g = [&](double t) {
      return std::abs(f.value(t)) * std::pow(t + 1.0, order_target);
    };
    return sup_abs_interval(g, 0.0, t_hi, extra_freq);
  };

  switch (f.cls()) {
    case TimeClass::rational: {
      const auto& r = std::get<RationalDecay>(f.rep());
      if (r.min_order() < order_target) {
        throw std::invalid_argument("certify_rational: order exceeds the class decay");
      }
      auto g = [&](double u) {
        cplx v{0.0, 0.0};
        for (const auto& term : r.terms()) v += term.c * std::pow(u, term.order - order_target);
        return std::abs(v);
      };
      return {sup_abs_interval(g, 0.0, 1.0, 0.0), order_target};
    }
    case TimeClass::exp_poly: {
      const auto& e = std::get<ExpPoly>(f.rep());
      double min_rate = kInf;
      for (const auto& t : e.terms()) min_rate = std::min(min_rate, -t.mu.real());
      if (order_target > 0 && min_rate <= 0.0) {
        throw std::invalid_argument("certify_rational: non-decaying ExpPoly");
      }
      const double t_hi = (order_target == 0) ? 1.0 : 2.0 * order_target / min_rate + 4.0 / min_rate;
      double best = weighted_sup_to(t_hi, max_osc_freq(e));
      // beyond t_hi the weighted terms decrease monotonically
      double tail = 0.0;
      for (const auto& t : e.terms()) {
        tail += std::abs(t.c) * std::pow(t_hi, t.power) * std::pow(t_hi + 1.0, order_target) *
                std::exp(t.mu.real() * t_hi);
      }
      return {std::max(best, tail), order_target};
    }
    case TimeClass::piecewise: {
      const auto& p = std::get<PiecewisePoly>(f.rep());
      return {weighted_sup_to(p.support_end(), 1.0), order_target};
    }
    case TimeClass::quad: {
      const auto& q = std::get<QuadFn>(f.rep());
      const bool covered = (q.rational_majorant() && q.rational_majorant()->order >= order_target) ||
                           q.stored_envelope().rate > 0.0;
      if (!covered) {
        throw std::invalid_argument("certify_rational: sampled function carries no certificate");
      }
      double best = 0.0;
      const int dense = 4 * q.n_nodes();
      for (int i = 0; i <= dense; ++i) {
        const double t = q.t_max() * i / dense;
        best = std::max(best, std::abs(q.value(t)) * std::pow(t + 1.0, order_target));
      }
      double beyond = kInf;
      if (q.rational_majorant() && q.rational_majorant()->order >= order_target) {
        beyond = q.rational_majorant()->amplitude *
                 std::pow(q.t_max() + 1.0, order_target - q.rational_majorant()->order);
      }
      if (q.stored_envelope().rate > 0.0) {
        const double a = q.stored_envelope().rate;
        const double t_star = std::max(q.t_max(), order_target / a);
        const double val = q.stored_envelope().amplitude * std::exp(-a * t_star) *
                           std::pow(t_star + 1.0, order_target);
        beyond = std::min(beyond, val);
      }
      return {std::max(best, beyond), order_target};
    }
  }
  return {0.0, order_target};
}

double sup_abs(const TimeFn& f, const Config& cfg) {
  return certify_envelope(f, 0.0, cfg).amplitude;
}

}  // namespace apnf::timefn
