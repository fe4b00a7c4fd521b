#pragma once

#include <cstddef>
#include <optional>
#include <variant>
#include <vector>

#include "credal/core.hpp"

namespace credal {

/// Known conditional law P(S | X) for discrete manifest variables: a
/// row-stochastic k x m emission matrix, row j = distribution of S given
/// X = x_j. Rows may deviate from sum 1 by up to 1e-9 and are renormalized;
/// exact zeros are preserved.
class DiscreteChannel {
 public:
  explicit DiscreteChannel(std::vector<std::vector<double>> emission);

  std::size_t num_states() const { return emission_.size(); }
  std::size_t num_symbols() const { return emission_.front().size(); }
  double emission(std::size_t state, std::size_t symbol) const {
    return emission_[state][symbol];
  }
  const std::vector<std::vector<double>>& rows() const { return emission_; }

 private:
  std::vector<std::vector<double>> emission_;
};

/// Per-state Gaussian emission densities N(mu_j, sigma_j^2).
class GaussianChannel {
 public:
  struct Component {
    double mu = 0.0;
    double sigma = 1.0;
  };

  explicit GaussianChannel(std::vector<Component> components);

  std::size_t num_states() const { return components_.size(); }
  const std::vector<Component>& components() const { return components_; }
  double log_pdf(std::size_t state, double x) const;

 private:
  std::vector<Component> components_;
};

/// The S_i = X_i case: emission matrix is the k x k identity.
struct IdentityChannel {
  std::size_t k = 2;

  DiscreteChannel to_discrete() const;
};

using Channel = std::variant<DiscreteChannel, GaussianChannel>;

/// One manifest observation: a symbol id for discrete channels, a real for
/// Gaussian channels.
using Observation = std::variant<int, double>;

DiscreteChannel identity_channel(std::size_t k);

/// Example-2 diagnostic test channel. States (Ill, Healthy), symbols (+, -):
/// P(+|Ill) = 1-eps2, P(-|Ill) = eps2, P(+|Healthy) = eps1,
/// P(-|Healthy) = 1-eps1.
DiscreteChannel binary_test_channel(double eps1, double eps2);

std::size_t num_states(const Channel& channel);
DataKind channel_kind(const Channel& channel);

/// Mixture coefficient lambda_j(obs) = P(obs | X = x_j) (a density value for
/// Gaussian channels).
double observation_weight(const Channel& channel, const Observation& obs,
                          std::size_t state);

/// P(obs | theta) = sum_j lambda_j(obs) theta_j.
double likelihood_point(const Channel& channel, const Observation& obs,
                        const Chances& theta);

/// Sum of log likelihood_point over the dataset; -inf if any factor is 0.
double log_likelihood_dataset(const Channel& channel,
                              const ManifestDataset& data,
                              const Chances& theta);

struct PositivityReport {
  bool strictly_positive = true;
  /// A vertex where the likelihood vanishes, present when not positive.
  std::optional<Chances> witness;
};

/// True iff P(s | theta) > 0 on the whole closed simplex: for discrete
/// channels every observed symbol must have positive emission in every state;
/// Gaussian channels are always strictly positive.
PositivityReport strict_positivity_report(const Channel& channel,
                                          const ManifestDataset& data);

/// Likelihood of one fixed dataset, prepared for repeated evaluation across
/// theta (symbol counts for discrete data, cached log pdfs for continuous).
class LikelihoodModel {
 public:
  LikelihoodModel(const Channel& channel, const ManifestDataset& data);

  std::size_t k() const { return k_; }
  double log_likelihood(const Chances& theta) const;
  /// k = 2 fast path, theta = (theta1, 1 - theta1).
  double log_likelihood2(double theta1) const;

  /// Exact order of the polynomial zero of L at the vertex e^state
  /// (0 when L is positive there, as for Gaussian channels).
  int vanishing_order(std::size_t state) const { return vanish_[state]; }

 private:
  std::size_t k_;
  bool discrete_;
  std::vector<std::int64_t> symbol_counts_;          // discrete
  std::vector<std::vector<double>> emission_;        // discrete, [state][sym]
  std::vector<std::vector<double>> log_pdf_;         // continuous, [obs][state]
  std::vector<int> vanish_;
};

}  // namespace credal
