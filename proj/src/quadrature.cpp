#include "credal/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>

#include "credal/rng.hpp"

namespace credal {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Octave panels stop here; the remaining stub is handled by the power
// substitution, which needs the integrand factor G to be flat on the stub.
constexpr double kStubEdge = 1e-14;

struct GlRule {
  std::vector<double> nodes;    // on [0, 1]
  std::vector<double> weights;
};

GlRule compute_gauss_legendre(int n) {
  GlRule r;
  r.nodes.resize(n);
  r.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Newton iteration on the Legendre recurrence, cosine initial guess.
    double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (z * p0 - p1) / (z * z - 1.0);
      const double dz = p0 / pp;
      z -= dz;
      if (std::abs(dz) < 1e-15) break;
    }
    r.nodes[i] = 0.5 * (1.0 - z);
    r.nodes[n - 1 - i] = 0.5 * (1.0 + z);
    r.weights[i] = r.weights[n - 1 - i] = 1.0 / ((1.0 - z * z) * pp * pp);
  }
  return r;
}

const GlRule& gauss_rule(int n) {
  static std::mutex mu;
  static std::map<int, GlRule> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) {
    it = cache.emplace(n, compute_gauss_legendre(n)).first;
  }
  return it->second;
}

// Collects log-space terms of a positive sum; value() = log of the sum.
class LogSum {
 public:
  void add(double log_term) {
    if (std::isnan(log_term)) {
      throw NonFiniteError("integrand evaluated to NaN");
    }
    if (log_term == kNegInf) return;
    terms_.push_back(log_term);
  }

  double value() const {
    if (terms_.empty()) return kNegInf;
    const double m = *std::max_element(terms_.begin(), terms_.end());
    if (m == kNegInf || std::isinf(m)) return m;
    double sum = 0.0, comp = 0.0;  // Kahan
    for (double t : terms_) {
      const double y = std::exp(t - m) - comp;
      const double s = sum + y;
      comp = (s - sum) - y;
      sum = s;
    }
    return m + std::log(sum);
  }

  std::size_t count() const { return terms_.size(); }

 private:
  std::vector<double> terms_;
};

struct ExponentPair {
  double A;
  double B;
};

struct Workspace {
  std::vector<ExponentPair> exps;
  std::vector<LogSum> sums;
  const std::function<double(double)>* logG;
  int nodes;
  double clip;
};

// One Gauss-Legendre panel over [p, q] in theta, shared G evaluations.
void add_panel(Workspace& ws, double p, double q) {
  if (!(q > p)) return;
  const GlRule& rule = gauss_rule(ws.nodes);
  const double width = q - p;
  for (int i = 0; i < ws.nodes; ++i) {
    const double theta = p + width * rule.nodes[i];
    const double tc =
        std::clamp(theta, ws.clip, 1.0 - ws.clip);
    const double g = (*ws.logG)(tc);
    const double base = std::log(rule.weights[i]) + std::log(width);
    const double lt = std::log(theta);
    const double l1t = std::log1p(-theta);
    for (std::size_t j = 0; j < ws.exps.size(); ++j) {
      ws.sums[j].add(base + (ws.exps[j].A - 1.0) * lt +
                     (ws.exps[j].B - 1.0) * l1t + g);
    }
  }
}

// Stub [0, edge] via theta = edge * u^m with m = ceil(3 / A): the
// transformed integrand carries u^(mA-1) with mA in [3, 4), so the
// density singularity is absorbed exactly.
void add_left_stub(Workspace& ws, std::size_t j, double edge) {
  const GlRule& rule = gauss_rule(ws.nodes);
  const double A = ws.exps[j].A;
  const double B = ws.exps[j].B;
  const double m = A >= 3.0 ? 1.0 : std::ceil(3.0 / A);
  const double shift = A * std::log(edge) + std::log(m);
  for (int i = 0; i < ws.nodes; ++i) {
    const double lu = std::log(rule.nodes[i]);
    const double theta = edge * std::exp(m * lu);
    const double tc = std::clamp(theta, ws.clip, 1.0 - ws.clip);
    ws.sums[j].add(std::log(rule.weights[i]) + (m * A - 1.0) * lu +
                   (B - 1.0) * std::log1p(-theta) + (*ws.logG)(tc) + shift);
  }
}

void add_right_stub(Workspace& ws, std::size_t j, double edge) {
  const GlRule& rule = gauss_rule(ws.nodes);
  const double A = ws.exps[j].A;
  const double B = ws.exps[j].B;
  const double m = B >= 3.0 ? 1.0 : std::ceil(3.0 / B);
  const double shift = B * std::log(edge) + std::log(m);
  for (int i = 0; i < ws.nodes; ++i) {
    const double lv = std::log(rule.nodes[i]);
    const double xi = edge * std::exp(m * lv);  // xi = 1 - theta
    const double theta = 1.0 - xi;
    const double tc = std::clamp(theta, ws.clip, 1.0 - ws.clip);
    ws.sums[j].add(std::log(rule.weights[i]) + (m * B - 1.0) * lv +
                   (A - 1.0) * std::log(tc) + (*ws.logG)(tc) + shift);
  }
}

// Panels over [lo, hi] with hi <= 1/2, refined in octaves toward 0.
void cover_left(Workspace& ws, double lo, double hi) {
  if (!(hi > lo)) return;
  const double floor_edge = std::max(lo, kStubEdge);
  double q = hi;
  while (q > floor_edge * (1.0 + 1e-12) && q > floor_edge) {
    const double p = std::max(floor_edge, q * 0.5);
    add_panel(ws, p, q);
    q = p;
  }
  if (lo == 0.0) {
    const double edge = std::min(hi, kStubEdge);
    for (std::size_t j = 0; j < ws.exps.size(); ++j) {
      add_left_stub(ws, j, edge);
    }
  } else if (lo < floor_edge) {
    add_panel(ws, lo, floor_edge);
  }
}

// Mirror image: panels over [lo, hi] with lo >= 1/2, refined toward 1.
void cover_right(Workspace& ws, double lo, double hi) {
  if (!(hi > lo)) return;
  const double xi_lo = 1.0 - hi;  // distance of hi from 1
  const double xi_hi = 1.0 - lo;
  const double floor_edge = std::max(xi_lo, kStubEdge);
  double q = xi_hi;
  while (q > floor_edge * (1.0 + 1e-12) && q > floor_edge) {
    const double p = std::max(floor_edge, q * 0.5);
    add_panel(ws, 1.0 - q, 1.0 - p);
    q = p;
  }
  if (xi_lo == 0.0) {
    const double edge = std::min(xi_hi, kStubEdge);
    for (std::size_t j = 0; j < ws.exps.size(); ++j) {
      add_right_stub(ws, j, edge);
    }
  } else if (xi_lo < floor_edge) {
    add_panel(ws, 1.0 - floor_edge, 1.0 - xi_lo);
  }
}

struct IntervalResult {
  std::vector<double> log_values;
  std::size_t evaluations = 0;
};

IntervalResult beta_weighted_intervals(
    const std::vector<ExponentPair>& exps, double lo, double hi,
    const std::function<double(double)>& logG, int nodes, double clip) {
  if (!(lo >= 0.0 && hi <= 1.0 && lo <= hi)) {
    throw InvalidArgumentError("integration interval must satisfy 0 <= lo <= hi <= 1");
  }
  if (nodes < 4) {
    throw InvalidArgumentError("quadrature rule needs at least 4 nodes");
  }
  for (const auto& e : exps) {
    if (!(e.A > 0.0) || !(e.B > 0.0)) {
      throw InvalidArgumentError("beta exponents must be positive");
    }
  }
  Workspace ws;
  ws.exps = exps;
  ws.sums.assign(exps.size(), LogSum{});
  ws.logG = &logG;
  ws.nodes = nodes;
  ws.clip = clip;
  cover_left(ws, lo, std::min(hi, 0.5));
  cover_right(ws, std::max(lo, 0.5), hi);
  IntervalResult out;
  for (auto& s : ws.sums) {
    out.log_values.push_back(s.value());
    out.evaluations += s.count();
  }
  return out;
}

void check_quadrature_config(const QuadratureConfig& cfg) {
  if (cfg.gauss_nodes < 16) {
    throw InvalidArgumentError("gauss_nodes must be >= 16");
  }
  if (cfg.mc_samples < 1000) {
    throw InvalidArgumentError("mc_samples must be >= 1000");
  }
  if (!(cfg.interior_clip > 0.0) || cfg.interior_clip >= 0.5) {
    throw InvalidArgumentError("interior_clip must lie in (0, 0.5)");
  }
}

void check_dimensions(const DirichletSpec& spec, const Channel& channel,
                      const CountVector& counts) {
  if (spec.k() != counts.k() || spec.k() != num_states(channel)) {
    throw InvalidArgumentError(
        "spec, channel and counts must agree on the number of categories");
  }
}

struct Kahan {
  double sum = 0.0;
  double comp = 0.0;

  void add(double x) {
    const double y = x - comp;
    const double s = sum + y;
    comp = (s - sum) - y;
    sum = s;
  }
};

}  // namespace

void gauss_legendre_01(int n, std::vector<double>& nodes,
                       std::vector<double>& weights) {
  if (n < 1) throw InvalidArgumentError("rule size must be positive");
  const GlRule& r = gauss_rule(n);
  nodes = r.nodes;
  weights = r.weights;
}

double log_beta_weighted_interval(double A, double B, double lo, double hi,
                                  const std::function<double(double)>& logG,
                                  int nodes, double clip) {
  return beta_weighted_intervals({{A, B}}, lo, hi, logG, nodes, clip)
      .log_values.front();
}

Estimate prior_expectation(const DirichletSpec& spec,
                           const CountVector& counts) {
  return Estimate{moment(spec, counts), 0.0, Method::closed_form, 0, false};
}

Estimate posterior_expectation_gauss(const DirichletSpec& spec,
                                     const Channel& channel,
                                     const ManifestDataset& data,
                                     const CountVector& counts,
                                     const QuadratureConfig& cfg) {
  check_quadrature_config(cfg);
  check_dimensions(spec, channel, counts);
  if (spec.k() != 2) {
    throw InvalidArgumentError("gauss path requires k = 2");
  }
  const LikelihoodModel lik(channel, data);
  // theta is the chance of state 0; theta -> 0 approaches the vertex e^1.
  const int ord0 = lik.vanishing_order(1);
  const int ord1 = lik.vanishing_order(0);
  const double a = spec.alpha(0);
  const double b = spec.alpha(1);
  const auto n0 = static_cast<double>(counts[0]);
  const auto n1 = static_cast<double>(counts[1]);
  const std::function<double(double)> logG = [&](double th) {
    return lik.log_likelihood2(th) - ord0 * std::log(th) -
           ord1 * std::log1p(-th);
  };
  const std::vector<ExponentPair> exps = {
      {a + ord0 + n0, b + ord1 + n1},  // numerator: prior x f x L
      {a + ord0, b + ord1},            // denominator: prior x L
  };
  const auto res = beta_weighted_intervals(exps, 0.0, 1.0, logG,
                                           cfg.gauss_nodes, cfg.interior_clip);
  const double log_num = res.log_values[0];
  const double log_den = res.log_values[1];
  if (log_den == kNegInf) {
    throw ZeroEvidenceError("normalizing integral is numerically zero");
  }
  return Estimate{std::exp(log_num - log_den), 0.0, Method::gauss_1d,
                  static_cast<std::int64_t>(res.evaluations), false};
}

Estimate posterior_expectation_importance(const DirichletSpec& spec,
                                          const Channel& channel,
                                          const ManifestDataset& data,
                                          const CountVector& counts,
                                          const QuadratureConfig& cfg) {
  check_quadrature_config(cfg);
  check_dimensions(spec, channel, counts);
  const LikelihoodModel lik(channel, data);
  const int n = cfg.mc_samples;
  constexpr int kBatch = 4096;

  std::vector<double> log_lik(n);
  std::vector<double> log_f(n);
  int produced = 0;
  for (std::uint64_t batch = 0; produced < n; ++batch) {
    Rng rng(derive_seed(cfg.seed, batch));
    const int want = std::min(kBatch, n - produced);
    const auto draws = sample(spec, rng, static_cast<std::size_t>(want));
    for (const Chances& theta : draws) {
      const double ll = lik.log_likelihood(theta);
      if (std::isnan(ll)) {
        throw NonFiniteError("likelihood evaluated to NaN");
      }
      log_lik[produced] = ll;
      log_f[produced] = log_monomial(counts, theta);
      ++produced;
    }
  }

  const double max_ll = *std::max_element(log_lik.begin(), log_lik.end());
  if (max_ll == kNegInf) {
    throw ZeroEvidenceError("likelihood vanished at every proposal draw");
  }

  Kahan den, num, w2, w2f, w2f2;
  for (int i = 0; i < n; ++i) {
    const double w = std::exp(log_lik[i] - max_ll);
    const double f = std::exp(log_f[i]);
    den.add(w);
    num.add(w * f);
    w2.add(w * w);
    w2f.add(w * w * f);
    w2f2.add(w * w * f * f);
  }
  if (!(den.sum > 0.0)) {
    throw ZeroEvidenceError("importance weights sum to zero");
  }
  const double r = num.sum / den.sum;
  const double var =
      (w2f2.sum - 2.0 * r * w2f.sum + r * r * w2.sum) / (den.sum * den.sum);
  const double se = std::sqrt(std::max(var, 0.0));
  const double ess = den.sum * den.sum / w2.sum;
  return Estimate{r, se, Method::mc_importance, n,
                  ess < 0.01 * static_cast<double>(n)};
}

Estimate posterior_expectation(const DirichletSpec& spec,
                               const Channel& channel,
                               const ManifestDataset& data,
                               const CountVector& counts,
                               const QuadratureConfig& cfg) {
  check_dimensions(spec, channel, counts);
  if (data.empty()) {
    return prior_expectation(spec, counts);
  }
  if (spec.k() == 2) {
    return posterior_expectation_gauss(spec, channel, data, counts, cfg);
  }
  return posterior_expectation_importance(spec, channel, data, counts, cfg);
}

Estimate mass_of_superlevel_set(const DirichletSpec& spec,
                                const CountVector& monomial, double delta,
                                const QuadratureConfig& cfg) {
  check_quadrature_config(cfg);
  if (spec.k() != monomial.k()) {
    throw InvalidArgumentError("dimension mismatch in mass_of_superlevel_set");
  }
  if (!(delta > 0.0)) {
    throw InvalidArgumentError("delta must be positive");
  }
  if (monomial.total() == 0) {
    // f is constant 1, so every theta qualifies.
    return Estimate{1.0, 0.0, Method::closed_form, 0, false};
  }
  const double fmax = monomial_max(monomial);
  if (delta >= fmax) {
    return Estimate{1.0, 0.0, Method::closed_form, 0, false};
  }
  const double log_thr = std::log(fmax - delta);

  if (spec.k() == 2) {
    const auto n0 = static_cast<double>(monomial[0]);
    const auto n1 = static_cast<double>(monomial[1]);
    const double mode = n0 / static_cast<double>(monomial.total());
    const auto log_f = [&](double th) {
      double acc = 0.0;
      if (n0 > 0.0) acc += n0 * std::log(th);
      if (n1 > 0.0) acc += n1 * std::log1p(-th);
      return acc;
    };
    // The superlevel set of the unimodal monomial is an interval around the
    // mode; locate each end by bisection on the monotone flank.
    double lo = 0.0;
    if (monomial[0] > 0) {
      double bl = 0.0, bh = mode;
      for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (bl + bh);
        (log_f(mid) >= log_thr ? bh : bl) = mid;
      }
      lo = 0.5 * (bl + bh);
    }
    double hi = 1.0;
    if (monomial[1] > 0) {
      double bl = mode, bh = 1.0;
      for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (bl + bh);
        (log_f(mid) >= log_thr ? bl : bh) = mid;
      }
      hi = 0.5 * (bl + bh);
    }

    const double a = spec.alpha(0);
    const double b = spec.alpha(1);
    const double log_beta =
        std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
    const std::function<double(double)> unit = [](double) { return 0.0; };
    std::size_t evals = 0;
    double tail0 = 0.0, tail1 = 0.0;
    if (lo > 0.0) {
      const auto res = beta_weighted_intervals({{a, b}}, 0.0, lo, unit,
                                               cfg.gauss_nodes,
                                               cfg.interior_clip);
      tail0 = std::exp(res.log_values.front() - log_beta);
      evals += res.evaluations;
    }
    if (hi < 1.0) {
      const auto res = beta_weighted_intervals({{a, b}}, hi, 1.0, unit,
                                               cfg.gauss_nodes,
                                               cfg.interior_clip);
      tail1 = std::exp(res.log_values.front() - log_beta);
      evals += res.evaluations;
    }
    double mass = 1.0 - tail0 - tail1;
    if (mass < 0.25) {
      // Cancellation regime: the interval is narrow, integrate it directly.
      const auto res = beta_weighted_intervals({{a, b}}, lo, hi, unit,
                                               cfg.gauss_nodes,
                                               cfg.interior_clip);
      mass = std::exp(res.log_values.front() - log_beta);
      evals += res.evaluations;
    }
    mass = std::clamp(mass, 0.0, 1.0);
    return Estimate{mass, 0.0, Method::gauss_1d,
                    static_cast<std::int64_t>(evals), false};
  }

  // k >= 3: Monte Carlo indicator average under the given density.
  const int n = cfg.mc_samples;
  constexpr int kBatch = 4096;
  std::int64_t hits = 0;
  int produced = 0;
  for (std::uint64_t batch = 0; produced < n; ++batch) {
    Rng rng(derive_seed(cfg.seed, batch));
    const int want = std::min(kBatch, n - produced);
    const auto draws = sample(spec, rng, static_cast<std::size_t>(want));
    for (const Chances& theta : draws) {
      if (log_monomial(monomial, theta) >= log_thr) ++hits;
      ++produced;
    }
  }
  const double p = static_cast<double>(hits) / static_cast<double>(n);
  const double se = std::sqrt(std::max(p * (1.0 - p), 0.0) /
                              static_cast<double>(n));
  return Estimate{p, se, Method::mc_importance, n, false};
}

}  // namespace credal
