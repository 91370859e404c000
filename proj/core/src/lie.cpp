#include "apnf/lie.hpp"

#include <cmath>

namespace apnf::lie {

using fourier::Backend;
using fourier::cplx;

Series poisson_bracket(const Series& F, const Series& G) {
  const int n = F.meta().n;
  Series out = fourier::series_zero(F.meta_ptr());
  for (int d = 0; d < n; ++d) {
    out = fourier::add(out, fourier::mul(fourier::dphi(F, d), fourier::dI(G, d)));
    out = fourier::sub(out, fourier::mul(fourier::dphi(G, d), fourier::dI(F, d)));
  }
  return out;
}

Series bracket_coordinate_action(const Series& G, int dim) {
  return fourier::scale(fourier::dphi(G, dim), cplx{-1.0, 0.0});
}

Series bracket_coordinate_angle(const Series& G, int dim) { return fourier::dI(G, dim); }

Series bracket_eta(const Series& G) { return fourier::scale(fourier::dt(G), cplx{-1.0, 0.0}); }

Series homological_operator(const Poly& h, const Series& chi) {
  Series out = fourier::dt(chi);
  const auto omega = h.gradient();
  for (int d = 0; d < h.n(); ++d) {
    if (omega[d].is_zero()) continue;
    out = fourier::add(out, fourier::mul_poly(fourier::dphi(chi, d), omega[d]));
  }
  return out;
}

Series bracket_H0(const Poly& h, const Series& G) {
  return fourier::scale(homological_operator(h, G), cplx{-1.0, 0.0});
}

// ---------------------------------------------------------------------------

namespace {

double amplitude(const Series& s) {
  if (s.empty()) return 0.0;
  return fourier::fourier_norm(s, s.meta().rho, s.meta().sigma, 0.0).amplitude;
}

// shared driver: out = sum_s weight(s) * T_s with T_1 = seed,
// T_{s+1} = {T_s, chi}; stops when weight(s)*|T_s| < tol * ref_norm
Series weighted_bracket_sum(const Series& chi, const Series& seed, const Series* zeroth,
                            const std::function<double(int)>& weight, int s_max, double tol,
                            double ref_norm, const char* label, LieSeriesInfo* info) {
  LieSeriesInfo local;
  Series acc = zeroth ? *zeroth : fourier::series_zero(seed.meta_ptr());
  Series term = seed;
  bool converged = false;
  double prev = -1.0;
  int growth_streak = 0;
  for (int s = 1; s <= s_max; ++s) {
    const double w = weight(s);
    const double a = amplitude(term) * std::abs(w);
    local.term_norms.push_back(a);
    acc = fourier::add(acc, fourier::scale(term, cplx{w, 0.0}));
    local.terms_used = s;
    if (a < tol * std::max(ref_norm, 1e-300)) {
      converged = true;
      // geometric tail estimate from the last contraction ratio
      const double ratio = (prev > 0.0) ? std::min(0.9, a / prev) : 0.5;
      local.tail_estimate = a * ratio / (1.0 - ratio);
      break;
    }
    if (prev >= 0.0 && a > prev) {
      ++growth_streak;
    } else {
      growth_streak = 0;
    }
    prev = a;
    if (s == s_max) break;
    term = poisson_bracket(term, chi);
  }
  local.converged = converged;
  if (info) *info = local;
  if (!converged) {
    throw LieSeriesDivergence(std::string(label) + ": no convergence within the order budget" +
                                  (growth_streak > 2 ? " (terms growing)" : ""),
                              local);
  }
  return acc;
}

double inv_factorial(int s) {
  double f = 1.0;
  for (int i = 2; i <= s; ++i) f /= i;
  return f;
}

}  // namespace

Series lie_series_apply(const Series& chi, const Series& F, int s_max, double tol,
                        LieSeriesInfo* info) {
  if (chi.empty() || F.empty()) {
    if (info) *info = LieSeriesInfo{0, true, {}, 0.0};
    return F;
  }
  const Series seed = poisson_bracket(F, chi);
  return weighted_bracket_sum(chi, seed, &F, [](int s) { return inv_factorial(s); }, s_max, tol,
                              amplitude(F), "lie_series_apply", info);
}

Series lie_series_displacement(const Series& chi, const Series& seed, int s_max, double tol,
                               LieSeriesInfo* info) {
  if (chi.empty() || seed.empty()) {
    if (info) *info = LieSeriesInfo{0, true, {}, 0.0};
    return seed;
  }
  const double ref = std::max(amplitude(seed), 1e-300);
  return weighted_bracket_sum(chi, seed, nullptr, [](int s) { return inv_factorial(s); }, s_max,
                              tol, ref, "lie_series_displacement", info);
}

Series birkhoff_remainder_sum(const Series& chi, const Series& F, int s_max, double tol,
                              LieSeriesInfo* info) {
  if (chi.empty() || F.empty()) {
    if (info) *info = LieSeriesInfo{0, true, {}, 0.0};
    return fourier::series_zero(F.meta_ptr());
  }
  const Series seed = poisson_bracket(F, chi);
  // weight s/(s+1)! relative to the s-th bracket power
  return weighted_bracket_sum(
      chi, seed, nullptr, [](int s) { return s * inv_factorial(s + 1); }, s_max, tol,
      amplitude(F), "birkhoff_remainder_sum", info);
}

// ---------------------------------------------------------------------------

bool GeneratingSequence::all_zero() const {
  for (const auto& c : chi) {
    if (!c.empty()) return false;
  }
  return true;
}

std::vector<Series> lie_transform_levels(const GeneratingSequence& chi, const Series& F,
                                         int s_total) {
  std::vector<Series> levels;
  levels.reserve(s_total + 1);
  levels.push_back(F);
  const int r = chi.order();
  for (int s = 1; s <= s_total; ++s) {
    Series acc = fourier::series_zero(F.meta_ptr());
    for (int j = 1; j <= std::min(s, r); ++j) {
      if (chi.chi[j - 1].empty()) continue;
      const Series br = poisson_bracket(levels[s - j], chi.chi[j - 1]);
      acc = fourier::add(acc, fourier::scale(br, cplx{static_cast<double>(j), 0.0}));
    }
    levels.push_back(fourier::scale(acc, cplx{1.0 / s, 0.0}));
  }
  return levels;
}

std::vector<Series> lie_transform_levels_base(
    const GeneratingSequence& chi,
    const std::function<Series(const Series& chi_j)>& base_bracket,
    const std::shared_ptr<const fourier::SeriesMeta>& meta, int s_total) {
  // levels[s] = E_s X for s >= 1; the base X itself is not a series, so the
  // recursion replaces L_{chi^(j)} E_0 X by base_bracket(chi^(j)).
  std::vector<Series> levels(1, fourier::series_zero(meta));  // placeholder E_0
  const int r = chi.order();
  for (int s = 1; s <= s_total; ++s) {
    Series acc = fourier::series_zero(meta);
    for (int j = 1; j <= std::min(s, r); ++j) {
      if (chi.chi[j - 1].empty()) continue;
      Series br = (s == j) ? base_bracket(chi.chi[j - 1])
                           : poisson_bracket(levels[s - j], chi.chi[j - 1]);
      acc = fourier::add(acc, fourier::scale(br, cplx{static_cast<double>(j), 0.0}));
    }
    levels.push_back(fourier::scale(acc, cplx{1.0 / s, 0.0}));
  }
  levels.erase(levels.begin());
  return levels;
}

Series lie_transform_apply(const GeneratingSequence& chi, const Series& F, int s_total,
                           std::vector<double>* level_norms) {
  const auto levels = lie_transform_levels(chi, F, s_total);
  Series acc = fourier::series_zero(F.meta_ptr());
  if (level_norms) level_norms->clear();
  for (const auto& level : levels) {
    acc = fourier::add(acc, level);
    if (level_norms) level_norms->push_back(amplitude(level));
  }
  return acc;
}

}  // namespace apnf::lie
