#pragma once

// Poisson brackets, Lie series exp(L_chi) and the Lie transform T_chi built
// from the triangular E_s recursion. The bracket convention is
//   L_G F = {F, G} = F_phi . G_I - G_phi . F_I - F_eta G_t,
// with every generating function independent of eta. The eta and h(I)+eta
// left arguments are handled by dedicated entry points rather than a general
// eta slot in the series type.

#include <functional>
#include <stdexcept>

#include "apnf/fourier_series.hpp"

namespace apnf::lie {

using fourier::Poly;
using fourier::Series;

// {F, G} for eta-free F, G
Series poisson_bracket(const Series& F, const Series& G);

// L_G of special left arguments
Series bracket_coordinate_action(const Series& G, int dim);  // {I_l, G}   = -G_phi_l
Series bracket_coordinate_angle(const Series& G, int dim);   // {phi_l, G} = G_I_l
Series bracket_eta(const Series& G);                         // {eta, G}   = -G_t

// L_G H0 = {H0, G} = -(G_t + omega(I).G_phi) for H0 = h(I) + eta
Series bracket_H0(const Poly& h, const Series& G);
// L_{H0} chi = chi_t + omega(I).chi_phi, the homological left side
Series homological_operator(const Poly& h, const Series& chi);

// ---------------------------------------------------------------------------

struct LieSeriesInfo {
  int terms_used = 0;
  bool converged = false;
  std::vector<double> term_norms;  // weighted amplitude of each term at t = 0
  double tail_estimate = 0.0;      // geometric bound on the dropped tail
};

class LieSeriesDivergence : public std::runtime_error {
 public:
  LieSeriesDivergence(const std::string& what, LieSeriesInfo info)
      : std::runtime_error(what), info(std::move(info)) {}
  LieSeriesInfo info;
};

// exp(L_chi) F truncated when the term amplitude falls below tol relative to
// ||F||; throws LieSeriesDivergence when s_max is hit while terms still grow.
Series lie_series_apply(const Series& chi, const Series& F, int s_max, double tol,
                        LieSeriesInfo* info = nullptr);

// sum_{s>=1} (1/s!) L_chi^{s-1} seed, where seed = L_chi(coordinate); the
// displacement of exp(L_chi) applied to a coordinate function.
Series lie_series_displacement(const Series& chi, const Series& seed, int s_max, double tol,
                               LieSeriesInfo* info = nullptr);

// sum_{s>=1} s/(s+1)! L_chi^s F  (the one-step Birkhoff remainder)
Series birkhoff_remainder_sum(const Series& chi, const Series& F, int s_max, double tol,
                              LieSeriesInfo* info = nullptr);

// ---------------------------------------------------------------------------

struct GeneratingSequence {
  std::vector<Series> chi;  // chi[j-1] holds chi^{(j)}, j = 1..r

  int order() const { return static_cast<int>(chi.size()); }
  bool all_zero() const;
};

// E_0 F .. E_S F with E_0 = id, E_s = (1/s) sum_{j=1}^{min(s,r)} j L_{chi^(j)} E_{s-j}
std::vector<Series> lie_transform_levels(const GeneratingSequence& chi, const Series& F,
                                         int s_total);

// E_1 X .. E_S X for a non-series left argument X, given the innermost
// bracket L_{chi^(j)} X as a callback.
std::vector<Series> lie_transform_levels_base(
    const GeneratingSequence& chi,
    const std::function<Series(const Series& chi_j)>& base_bracket,
    const std::shared_ptr<const fourier::SeriesMeta>& meta, int s_total);

// T_chi F = sum_{s=0}^{S} E_s F with per-level amplitude norms available
Series lie_transform_apply(const GeneratingSequence& chi, const Series& F, int s_total,
                           std::vector<double>* level_norms = nullptr);

}  // namespace apnf::lie
