#include "credal/dirichlet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace credal {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

}  // namespace

DirichletSpec::DirichletSpec(double s_in, std::vector<double> t_in)
    : s(s_in), t(std::move(t_in)) {
  if (!(s > 0.0)) {
    throw InvalidArgumentError("Dirichlet strength s must be positive");
  }
  if (t.size() < 2) {
    throw InvalidArgumentError("DirichletSpec requires k >= 2");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!(t[i] > 0.0)) {
      throw InvalidArgumentError("t[" + std::to_string(i) +
                                 "] must lie in the open simplex");
    }
    sum += t[i];
  }
  if (std::abs(sum - 1.0) > kSimplexInputTolerance) {
    throw SumNotOneError("t entries sum to " + std::to_string(sum));
  }
  for (double& v : t) v /= sum;
}

PriorSet::PriorSet(double s_in, std::size_t k_in, double boundary_gap_in)
    : s(s_in), k(k_in), boundary_gap(boundary_gap_in) {
  if (!(s > 0.0)) {
    throw InvalidArgumentError("PriorSet strength s must be positive");
  }
  if (k < 2) {
    throw InvalidArgumentError("PriorSet requires k >= 2");
  }
  if (!(boundary_gap > 0.0) || boundary_gap >= 0.5) {
    throw InvalidArgumentError("boundary_gap must lie in (0, 0.5)");
  }
}

double log_density(const DirichletSpec& spec, const Chances& theta) {
  if (spec.k() != theta.k()) {
    throw InvalidArgumentError("dimension mismatch in log_density");
  }
  double acc = std::lgamma(spec.s);
  for (std::size_t i = 0; i < spec.k(); ++i) {
    const double a = spec.alpha(i);
    acc -= std::lgamma(a);
    if (theta[i] == 0.0) {
      if (a < 1.0) {
        throw BoundaryDivergenceError(
            "density diverges at theta_" + std::to_string(i) +
            " = 0 with s*t = " + std::to_string(a));
      }
      if (a > 1.0) return kNegInf;
      // a == 1: the coordinate contributes a constant factor.
      continue;
    }
    acc += (a - 1.0) * std::log(theta[i]);
  }
  return acc;
}

double log_moment(const DirichletSpec& spec, const CountVector& counts) {
  if (spec.k() != counts.k()) {
    throw InvalidArgumentError("dimension mismatch in moment");
  }
  const double n = static_cast<double>(counts.total());
  double acc = std::lgamma(spec.s) - std::lgamma(spec.s + n);
  for (std::size_t i = 0; i < spec.k(); ++i) {
    if (counts[i] == 0) continue;
    const double a = spec.alpha(i);
    acc += std::lgamma(a + static_cast<double>(counts[i])) - std::lgamma(a);
  }
  return acc;
}

double moment(const DirichletSpec& spec, const CountVector& counts) {
  return std::exp(log_moment(spec, counts));
}

DirichletSpec posterior_update(const DirichletSpec& spec,
                               const CountVector& counts) {
  if (spec.k() != counts.k()) {
    throw InvalidArgumentError("dimension mismatch in posterior_update");
  }
  const double sn = spec.s + static_cast<double>(counts.total());
  std::vector<double> t(spec.k());
  for (std::size_t i = 0; i < spec.k(); ++i) {
    t[i] = (spec.alpha(i) + static_cast<double>(counts[i])) / sn;
  }
  return DirichletSpec(sn, std::move(t));
}

std::vector<Chances> sample(const DirichletSpec& spec, Rng& rng,
                            std::size_t n) {
  if (n == 0) {
    throw InvalidArgumentError("sample requires n >= 1");
  }
  std::vector<Chances> draws;
  draws.reserve(n);
  std::vector<double> logs(spec.k());
  for (std::size_t d = 0; d < n; ++d) {
    for (std::size_t i = 0; i < spec.k(); ++i) {
      logs[i] = rng.log_gamma_draw(spec.alpha(i));
    }
    const double m = *std::max_element(logs.begin(), logs.end());
    double sum = 0.0;
    for (double lg : logs) sum += std::exp(lg - m);
    const double lse = m + std::log(sum);
    std::vector<double> theta(spec.k());
    for (std::size_t i = 0; i < spec.k(); ++i) {
      theta[i] = std::exp(logs[i] - lse);
    }
    draws.emplace_back(std::move(theta));
  }
  return draws;
}

}  // namespace credal
