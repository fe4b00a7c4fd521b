#pragma once

#include <cstdint>
#include <vector>

#include "credal/channels.hpp"
#include "credal/core.hpp"
#include "credal/dirichlet.hpp"
#include "credal/quadrature.hpp"

namespace credal {

struct OptimizerConfig {
  int coarse_grid_per_dim = 11;
  int refine_iters = 200;
  /// Gaps swept when certifying vacuity, strictly decreasing.
  std::vector<double> boundary_ladder = {1e-1, 1e-2, 1e-3, 1e-4,
                                         1e-5, 1e-6, 1e-7, 1e-8};
  double tol = 1e-6;
};

struct OptResult {
  Estimate estimate;
  std::vector<double> t;  // the optimizing mean vector
};

/// sup over t in the gap-clipped simplex of E[prod theta_i^{n_i} | data]:
/// coarse simplex grid, then Nelder-Mead refinement in logistic coordinates
/// restarted from the three best grid points.
OptResult upper_expectation(const PriorSet& prior_set, const Channel& channel,
                            const ManifestDataset& data,
                            const CountVector& counts,
                            const QuadratureConfig& qcfg,
                            const OptimizerConfig& ocfg);

OptResult lower_expectation(const PriorSet& prior_set, const Channel& channel,
                            const ManifestDataset& data,
                            const CountVector& counts,
                            const QuadratureConfig& qcfg,
                            const OptimizerConfig& ocfg);

/// Closed-form single-outcome predictive bounds of the identity-channel
/// model: lower n_i / (N + s), upper (n_i + s) / (N + s).
BoundPair idm_bounds(const CountVector& observed, double s,
                     std::size_t next_outcome);

enum class Verdict { vacuous_confirmed, learning_possible, inconclusive };

const char* verdict_name(Verdict v);

struct LadderPoint {
  double gap = 0.0;
  Estimate upper;
};

/// min of the likelihood over the boundary of the superlevel set Theta_delta,
/// probing the weaker positivity hypothesis liminf_{delta->0} inf L > 0.
struct LiminfProbe {
  double delta = 0.0;
  double min_likelihood = 0.0;
};

struct VacuityReport {
  bool hypothesis_holds = false;         // L positive at the monomial argmax
  RelativeFrequencies argmax_point;      // f', the unique maximizer
  double monomial_max_value = 0.0;       // f_max
  double likelihood_at_argmax = 0.0;
  PositivityReport positivity;           // global strict positivity
  std::vector<LiminfProbe> liminf_probes;
  BoundPair prior_bounds;
  BoundPair posterior_bounds;
  std::vector<LadderPoint> ladder_values;
  Verdict verdict = Verdict::inconclusive;
};

/// Applies the vacuity theorem numerically: checks the positivity hypothesis
/// at the argmax of the predictive monomial, compares prior bounds against
/// the vacuous pair (0, f_max), and when the hypothesis holds sweeps the
/// boundary-gap ladder to confirm that posterior uppers converge to f_max.
VacuityReport vacuity_check(const PriorSet& prior_set, const Channel& channel,
                            const ManifestDataset& data,
                            const CountVector& counts,
                            const QuadratureConfig& qcfg,
                            const OptimizerConfig& ocfg);

/// Member of the concentrating density sequence: Dirichlet with shape n at
/// the dominant category of `monomial` and shape 1 elsewhere (Beta(n, 1)
/// when k = 2).
DirichletSpec concentrating_spec(const CountVector& monomial, std::int64_t n);

struct ConcentrationPoint {
  std::int64_t n = 0;
  double expectation = 0.0;  // E_n(f), closed form
  Estimate superlevel_mass;  // P_n(Theta_delta)
};

std::vector<ConcentrationPoint> concentration_experiment(
    const std::vector<std::int64_t>& n_list, const CountVector& monomial,
    double delta, const QuadratureConfig& cfg);

struct RatioPoint {
  std::int64_t n = 0;
  Estimate ratio;  // E_n(L f) / E_n(L)
};

/// Throws DegenerateLError when the likelihood vanishes at the argmax of f.
std::vector<RatioPoint> ratio_experiment(
    const std::vector<std::int64_t>& n_list, const CountVector& monomial,
    const Channel& channel, const ManifestDataset& data,
    const QuadratureConfig& cfg);

}  // namespace credal
