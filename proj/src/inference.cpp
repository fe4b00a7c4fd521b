#include "credal/inference.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace credal {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// All integer compositions of `total` into k parts, lexicographic order.
void enumerate_compositions(std::size_t k, int total,
                            std::vector<int>& prefix,
                            std::vector<std::vector<int>>& out) {
  if (prefix.size() + 1 == k) {
    prefix.push_back(total);
    out.push_back(prefix);
    prefix.pop_back();
    return;
  }
  for (int c = 0; c <= total; ++c) {
    prefix.push_back(c);
    enumerate_compositions(k, total - c, prefix, out);
    prefix.pop_back();
  }
}

std::vector<std::vector<double>> simplex_grid(std::size_t k, int per_dim) {
  if (per_dim < 2) {
    throw InvalidArgumentError("coarse_grid_per_dim must be >= 2");
  }
  std::vector<std::vector<int>> comps;
  std::vector<int> prefix;
  enumerate_compositions(k, per_dim - 1, prefix, comps);
  std::vector<std::vector<double>> grid;
  grid.reserve(comps.size());
  const double denom = static_cast<double>(per_dim - 1);
  for (const auto& c : comps) {
    std::vector<double> t(k);
    for (std::size_t i = 0; i < k; ++i) t[i] = c[i] / denom;
    grid.push_back(std::move(t));
  }
  return grid;
}

// Affine shrink toward the barycenter so every coordinate is >= gap.
std::vector<double> clip_to_gap(const std::vector<double>& t, double gap) {
  const double scale = 1.0 - static_cast<double>(t.size()) * gap;
  std::vector<double> out(t.size());
  for (std::size_t i = 0; i < t.size(); ++i) out[i] = scale * t[i] + gap;
  return out;
}

// Additive logistic map R^{k-1} -> open simplex, last coordinate as base.
std::vector<double> logistic_to_simplex(const std::vector<double>& z) {
  std::vector<double> t(z.size() + 1);
  double denom = 1.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    t[i] = std::exp(std::clamp(z[i], -60.0, 60.0));
    denom += t[i];
  }
  for (std::size_t i = 0; i < z.size(); ++i) t[i] /= denom;
  t[z.size()] = 1.0 / denom;
  return t;
}

std::vector<double> simplex_to_logistic(const std::vector<double>& t) {
  std::vector<double> z(t.size() - 1);
  const double base = t.back();
  for (std::size_t i = 0; i + 1 < t.size(); ++i) {
    z[i] = std::log(t[i] / base);
  }
  return z;
}

template <typename F>
std::pair<std::vector<double>, double> nelder_mead(
    F&& f, const std::vector<double>& z0, int max_iters) {
  const std::size_t d = z0.size();
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, sigma = 0.5;

  std::vector<std::vector<double>> pts(d + 1, z0);
  std::vector<double> vals(d + 1);
  for (std::size_t i = 0; i < d; ++i) pts[i + 1][i] += 0.75;
  for (std::size_t i = 0; i <= d; ++i) vals[i] = f(pts[i]);

  std::vector<std::size_t> order(d + 1);
  for (int iter = 0; iter < max_iters; ++iter) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                       return vals[a] < vals[b];
                     });
    const std::size_t best = order.front(), worst = order.back();
    if (vals[worst] - vals[best] <
        1e-11 * (1.0 + std::abs(vals[best]))) {
      break;
    }

    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == worst) continue;
      for (std::size_t j = 0; j < d; ++j) centroid[j] += pts[i][j];
    }
    for (double& c : centroid) c /= static_cast<double>(d);

    auto blend = [&](double coef) {
      std::vector<double> p(d);
      for (std::size_t j = 0; j < d; ++j) {
        p[j] = centroid[j] + coef * (centroid[j] - pts[worst][j]);
      }
      return p;
    };

    const auto reflected = blend(alpha);
    const double fr = f(reflected);
    if (fr < vals[order[0]]) {
      const auto expanded = blend(gamma);
      const double fe = f(expanded);
      if (fe < fr) {
        pts[worst] = expanded;
        vals[worst] = fe;
      } else {
        pts[worst] = reflected;
        vals[worst] = fr;
      }
      continue;
    }
    if (fr < vals[order[d - 1]]) {
      pts[worst] = reflected;
      vals[worst] = fr;
      continue;
    }
    const auto contracted = blend(fr < vals[worst] ? rho : -rho);
    const double fc = f(contracted);
    if (fc < std::min(fr, vals[worst])) {
      pts[worst] = contracted;
      vals[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == best) continue;
      for (std::size_t j = 0; j < d; ++j) {
        pts[i][j] = pts[best][j] + sigma * (pts[i][j] - pts[best][j]);
      }
      vals[i] = f(pts[i]);
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= d; ++i) {
    if (vals[i] < vals[best]) best = i;
  }
  return {pts[best], vals[best]};
}

OptResult optimize_expectation(bool maximize, const PriorSet& prior_set,
                               const Channel& channel,
                               const ManifestDataset& data,
                               const CountVector& counts,
                               const QuadratureConfig& qcfg,
                               const OptimizerConfig& ocfg) {
  const std::size_t k = prior_set.k;
  if (counts.k() != k || num_states(channel) != k) {
    throw InvalidArgumentError(
        "prior set, channel and counts must agree on k");
  }
  const double gap = prior_set.boundary_gap;
  if (static_cast<double>(k) * gap >= 1.0) {
    throw InvalidArgumentError("boundary_gap too large for this k");
  }

  const auto objective = [&](const std::vector<double>& t) {
    const DirichletSpec spec(prior_set.s, t);
    return posterior_expectation(spec, channel, data, counts, qcfg).value;
  };
  const double sign = maximize ? -1.0 : 1.0;

  // Coarse pass over the clipped lattice.
  const auto grid = simplex_grid(k, ocfg.coarse_grid_per_dim);
  std::vector<std::vector<double>> points;
  points.reserve(grid.size());
  std::vector<double> signed_vals;
  signed_vals.reserve(grid.size());
  for (const auto& t : grid) {
    points.push_back(clip_to_gap(t, gap));
    signed_vals.push_back(sign * objective(points.back()));
  }
  std::vector<std::size_t> order(points.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) {
                     return signed_vals[a] < signed_vals[b];
                   });

  std::vector<double> best_t = points[order.front()];
  double best_signed = signed_vals[order.front()];

  // Local refinement from the three best grid points.
  const auto refine_objective = [&](const std::vector<double>& z) {
    return sign * objective(clip_to_gap(logistic_to_simplex(z), gap));
  };
  const std::size_t restarts = std::min<std::size_t>(3, order.size());
  for (std::size_t r = 0; r < restarts; ++r) {
    const auto z0 = simplex_to_logistic(points[order[r]]);
    const auto [z_best, v_best] =
        nelder_mead(refine_objective, z0, ocfg.refine_iters);
    if (v_best < best_signed) {
      best_signed = v_best;
      best_t = clip_to_gap(logistic_to_simplex(z_best), gap);
    }
  }

  const DirichletSpec best_spec(prior_set.s, best_t);
  Estimate est =
      posterior_expectation(best_spec, channel, data, counts, qcfg);
  return OptResult{est, best_t};
}

ManifestDataset empty_dataset_like(const Channel& channel) {
  return channel_kind(channel) == DataKind::discrete
             ? ManifestDataset::discrete({})
             : ManifestDataset::continuous({});
}

// Point on the boundary of Theta_delta along the segment from the argmax f'
// toward vertex e^j, located by bisection on the monomial level.
Chances superlevel_boundary_point(const CountVector& counts,
                                  const RelativeFrequencies& argmax,
                                  double delta, std::size_t j) {
  const std::size_t k = counts.k();
  const double log_thr_max = log_monomial_max(counts);
  const double log_thr = monomial_max(counts) - delta > 0.0
                             ? std::log(monomial_max(counts) - delta)
                             : kNegInf;
  const auto point_at = [&](double lam) {
    std::vector<double> v(k);
    for (std::size_t i = 0; i < k; ++i) {
      v[i] = (1.0 - lam) * argmax.freqs[i] + (i == j ? lam : 0.0);
    }
    return Chances(v);
  };
  (void)log_thr_max;
  if (log_thr == kNegInf ||
      log_monomial(counts, point_at(1.0)) >= log_thr) {
    return point_at(1.0);
  }
  double bl = 0.0, bh = 1.0;
  for (int i = 0; i < 100; ++i) {
    const double mid = 0.5 * (bl + bh);
    (log_monomial(counts, point_at(mid)) >= log_thr ? bl : bh) = mid;
  }
  return point_at(0.5 * (bl + bh));
}

}  // namespace

OptResult upper_expectation(const PriorSet& prior_set, const Channel& channel,
                            const ManifestDataset& data,
                            const CountVector& counts,
                            const QuadratureConfig& qcfg,
                            const OptimizerConfig& ocfg) {
  return optimize_expectation(true, prior_set, channel, data, counts, qcfg,
                              ocfg);
}

OptResult lower_expectation(const PriorSet& prior_set, const Channel& channel,
                            const ManifestDataset& data,
                            const CountVector& counts,
                            const QuadratureConfig& qcfg,
                            const OptimizerConfig& ocfg) {
  return optimize_expectation(false, prior_set, channel, data, counts, qcfg,
                              ocfg);
}

BoundPair idm_bounds(const CountVector& observed, double s,
                     std::size_t next_outcome) {
  if (!(s > 0.0)) {
    throw InvalidArgumentError("IDM strength s must be positive");
  }
  if (next_outcome >= observed.k()) {
    throw InvalidArgumentError("next_outcome index out of range");
  }
  const double n_i = static_cast<double>(observed[next_outcome]);
  const double n = static_cast<double>(observed.total());
  const Estimate lower{n_i / (n + s), 0.0, Method::closed_form, 0, false};
  const Estimate upper{(n_i + s) / (n + s), 0.0, Method::closed_form, 0,
                       false};
  return make_bound_pair(lower, upper);
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::vacuous_confirmed: return "vacuous_confirmed";
    case Verdict::learning_possible: return "learning_possible";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

VacuityReport vacuity_check(const PriorSet& prior_set, const Channel& channel,
                            const ManifestDataset& data,
                            const CountVector& counts,
                            const QuadratureConfig& qcfg,
                            const OptimizerConfig& ocfg) {
  if (counts.total() < 1) {
    throw InvalidArgumentError("vacuity_check requires a non-empty monomial");
  }
  for (std::size_t i = 1; i < ocfg.boundary_ladder.size(); ++i) {
    if (!(ocfg.boundary_ladder[i] < ocfg.boundary_ladder[i - 1]) ||
        !(ocfg.boundary_ladder[i] > 0.0)) {
      throw InvalidArgumentError("boundary_ladder must be strictly "
                                 "decreasing and positive");
    }
  }

  VacuityReport report;
  report.argmax_point = frequencies(counts);
  report.monomial_max_value = monomial_max(counts);
  report.positivity = strict_positivity_report(channel, data);
  report.likelihood_at_argmax = std::exp(
      log_likelihood_dataset(channel, data, report.argmax_point.to_chances()));
  report.hypothesis_holds = report.likelihood_at_argmax > 0.0;

  for (const double delta : {1e-2, 1e-3, 1e-4}) {
    double min_l = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < counts.k(); ++j) {
      const Chances point =
          superlevel_boundary_point(counts, report.argmax_point, delta, j);
      min_l = std::min(
          min_l, std::exp(log_likelihood_dataset(channel, data, point)));
    }
    report.liminf_probes.push_back(LiminfProbe{delta, min_l});
  }

  const ManifestDataset empty = empty_dataset_like(channel);
  const OptResult prior_lo =
      lower_expectation(prior_set, channel, empty, counts, qcfg, ocfg);
  const OptResult prior_hi =
      upper_expectation(prior_set, channel, empty, counts, qcfg, ocfg);
  report.prior_bounds = make_bound_pair(prior_lo.estimate, prior_hi.estimate);

  const OptResult post_lo =
      lower_expectation(prior_set, channel, data, counts, qcfg, ocfg);
  const OptResult post_hi =
      upper_expectation(prior_set, channel, data, counts, qcfg, ocfg);
  report.posterior_bounds =
      make_bound_pair(post_lo.estimate, post_hi.estimate);

  const double fmax = report.monomial_max_value;
  const auto band = [](const Estimate& e) { return 3.0 * e.std_error; };
  const bool prior_upper_vacuous =
      prior_hi.estimate.value >=
      fmax - (ocfg.tol + band(prior_hi.estimate));

  if (report.hypothesis_holds && prior_upper_vacuous) {
    for (const double gap : ocfg.boundary_ladder) {
      const PriorSet rung(prior_set.s, prior_set.k, gap);
      const OptResult up =
          upper_expectation(rung, channel, data, counts, qcfg, ocfg);
      report.ladder_values.push_back(LadderPoint{gap, up.estimate});
    }
    bool monotone = true;
    for (std::size_t i = 1; i < report.ladder_values.size(); ++i) {
      const Estimate& prev = report.ladder_values[i - 1].upper;
      const Estimate& cur = report.ladder_values[i].upper;
      if (cur.value < prev.value - (ocfg.tol + band(prev) + band(cur))) {
        monotone = false;
      }
    }
    const Estimate& last = report.ladder_values.back().upper;
    const bool converged =
        last.value >= fmax - (ocfg.tol + band(last));
    report.verdict = (monotone && converged) ? Verdict::vacuous_confirmed
                                             : Verdict::inconclusive;
  } else if (!report.hypothesis_holds) {
    const bool interior =
        post_lo.estimate.value - band(post_lo.estimate) >
            prior_lo.estimate.value + band(prior_lo.estimate) + ocfg.tol &&
        post_hi.estimate.value + band(post_hi.estimate) <
            prior_hi.estimate.value - band(prior_hi.estimate) - ocfg.tol;
    report.verdict =
        interior ? Verdict::learning_possible : Verdict::inconclusive;
  } else {
    report.verdict = Verdict::inconclusive;
  }
  return report;
}

DirichletSpec concentrating_spec(const CountVector& monomial,
                                 std::int64_t n) {
  if (n < 1) {
    throw InvalidArgumentError("sequence index n must be >= 1");
  }
  if (monomial.total() == 0) {
    throw InvalidArgumentError("monomial must have a positive total");
  }
  const std::size_t k = monomial.k();
  std::size_t dominant = 0;
  for (std::size_t i = 1; i < k; ++i) {
    if (monomial[i] > monomial[dominant]) dominant = i;
  }
  const double s =
      static_cast<double>(n) + static_cast<double>(k) - 1.0;
  std::vector<double> t(k);
  for (std::size_t i = 0; i < k; ++i) {
    t[i] = (i == dominant ? static_cast<double>(n) : 1.0) / s;
  }
  return DirichletSpec(s, std::move(t));
}

std::vector<ConcentrationPoint> concentration_experiment(
    const std::vector<std::int64_t>& n_list, const CountVector& monomial,
    double delta, const QuadratureConfig& cfg) {
  if (n_list.empty()) {
    throw InvalidArgumentError("n_list must be non-empty");
  }
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) {
      throw InvalidArgumentError("n_list must be strictly increasing");
    }
  }
  if (!(delta > 0.0)) {
    throw InvalidArgumentError("delta must be positive");
  }
  std::vector<ConcentrationPoint> out;
  out.reserve(n_list.size());
  for (const std::int64_t n : n_list) {
    const DirichletSpec spec = concentrating_spec(monomial, n);
    ConcentrationPoint p;
    p.n = n;
    p.expectation = moment(spec, monomial);
    p.superlevel_mass = mass_of_superlevel_set(spec, monomial, delta, cfg);
    out.push_back(p);
  }
  return out;
}

std::vector<RatioPoint> ratio_experiment(
    const std::vector<std::int64_t>& n_list, const CountVector& monomial,
    const Channel& channel, const ManifestDataset& data,
    const QuadratureConfig& cfg) {
  if (n_list.empty()) {
    throw InvalidArgumentError("n_list must be non-empty");
  }
  for (std::size_t i = 1; i < n_list.size(); ++i) {
    if (n_list[i] <= n_list[i - 1]) {
      throw InvalidArgumentError("n_list must be strictly increasing");
    }
  }
  const RelativeFrequencies argmax = frequencies(monomial);
  const double log_l =
      log_likelihood_dataset(channel, data, argmax.to_chances());
  if (log_l == kNegInf) {
    throw DegenerateLError(
        "likelihood vanishes at the argmax of the monomial; the "
        "concentration-ratio limit does not hold");
  }
  std::vector<RatioPoint> out;
  out.reserve(n_list.size());
  for (const std::int64_t n : n_list) {
    const DirichletSpec spec = concentrating_spec(monomial, n);
    RatioPoint p;
    p.n = n;
    p.ratio = posterior_expectation(spec, channel, data, monomial, cfg);
    out.push_back(p);
  }
  return out;
}

}  // namespace credal
