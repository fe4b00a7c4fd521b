#pragma once

#include <cstddef>
#include <vector>

#include "credal/core.hpp"
#include "credal/rng.hpp"

namespace credal {

/// One member dir_{s,t} of the near-ignorance set: strength s > 0 and mean
/// vector t in the open simplex (t_i > 0, sum 1 within 1e-9, renormalized).
struct DirichletSpec {
  DirichletSpec(double s_in, std::vector<double> t_in);

  std::size_t k() const { return t.size(); }
  /// Shape parameter s * t_i of coordinate i.
  double alpha(std::size_t i) const { return s * t[i]; }

  double s;
  std::vector<double> t;
};

/// The near-ignorance prior set M0 = { dir_{s,t} : t in T } for one fixed s.
/// boundary_gap is the smallest t_i the optimizers may visit; it keeps the
/// search inside the open set T.
struct PriorSet {
  PriorSet(double s_in, std::size_t k_in, double boundary_gap_in = 1e-8);

  double s;
  std::size_t k;
  double boundary_gap;
};

/// log dir_{s,t}(theta). Throws BoundaryDivergenceError where the density
/// diverges (theta_i = 0 with s t_i < 1); returns -inf where it is zero.
double log_density(const DirichletSpec& spec, const Chances& theta);

/// Prior moment E[prod theta_i^{n_i}] as a ratio of log-gamma terms.
double log_moment(const DirichletSpec& spec, const CountVector& counts);
double moment(const DirichletSpec& spec, const CountVector& counts);

/// Conjugate update for perfectly observed counts: strength s + N, mean
/// (s t_i + n_i) / (s + N).
DirichletSpec posterior_update(const DirichletSpec& spec,
                               const CountVector& counts);

/// n independent draws from dir_{s,t} via normalized Gamma variates,
/// assembled in log space so small shapes do not collapse to zero.
std::vector<Chances> sample(const DirichletSpec& spec, Rng& rng,
                            std::size_t n);

}  // namespace credal
