#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "credal/channels.hpp"
#include "credal/core.hpp"
#include "credal/dirichlet.hpp"

namespace credal {

struct QuadratureConfig {
  int gauss_nodes = 256;    // Gauss-Legendre rule size per panel (>= 16)
  int mc_samples = 200000;  // importance-sampling draws (>= 1000)
  std::uint64_t seed = 0;
  double interior_clip = 1e-12;  // clamp for log evaluations at boundary nodes
};

/// Nodes and weights of the n-point Gauss-Legendre rule on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& nodes,
                       std::vector<double>& weights);

/// log of integral over [lo, hi] of theta^(A-1) (1-theta)^(B-1) exp(logG).
///
/// The interval is split at 1/2 and covered by octave panels toward each
/// endpoint; an endpoint touching 0 (or 1) gets a final stub handled by the
/// power substitution theta = c u^m with m = ceil(3 / A), which absorbs the
/// density singularity for any A > 0. logG is never evaluated closer to the
/// boundary than `clip`.
double log_beta_weighted_interval(double A, double B, double lo, double hi,
                                  const std::function<double(double)>& logG,
                                  int nodes, double clip);

/// Closed-form prior expectation of the counts monomial (= dirichlet moment).
Estimate prior_expectation(const DirichletSpec& spec,
                           const CountVector& counts);

/// E[prod theta_i^{n_i} | data] under the single prior `spec`.
/// Dispatches: closed form for empty data, Gauss-Legendre for k = 2,
/// self-normalized importance sampling otherwise.
Estimate posterior_expectation(const DirichletSpec& spec,
                               const Channel& channel,
                               const ManifestDataset& data,
                               const CountVector& counts,
                               const QuadratureConfig& cfg);

/// k = 2 deterministic path (does not shortcut empty data).
Estimate posterior_expectation_gauss(const DirichletSpec& spec,
                                     const Channel& channel,
                                     const ManifestDataset& data,
                                     const CountVector& counts,
                                     const QuadratureConfig& cfg);

/// Self-normalized importance sampling with the prior as proposal, any k.
Estimate posterior_expectation_importance(const DirichletSpec& spec,
                                          const Channel& channel,
                                          const ManifestDataset& data,
                                          const CountVector& counts,
                                          const QuadratureConfig& cfg);

/// P(Theta_delta) where Theta_delta = { theta : f(theta) >= f_max - delta }
/// for the counts monomial f, under the density `spec`. k = 2 integrates the
/// density over the superlevel interval located by bisection; k >= 3 uses a
/// Monte Carlo indicator average.
Estimate mass_of_superlevel_set(const DirichletSpec& spec,
                                const CountVector& monomial, double delta,
                                const QuadratureConfig& cfg);

}  // namespace credal
