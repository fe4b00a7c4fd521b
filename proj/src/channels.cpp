#include "credal/channels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

namespace credal {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double log_sum_exp(const std::vector<double>& terms) {
  double m = kNegInf;
  for (double t : terms) m = std::max(m, t);
  if (m == kNegInf) return kNegInf;
  double sum = 0.0;
  for (double t : terms) sum += std::exp(t - m);
  return m + std::log(sum);
}

std::vector<std::int64_t> count_symbols(const ManifestDataset& data,
                                        std::size_t num_symbols) {
  std::vector<std::int64_t> counts(num_symbols, 0);
  for (int s : data.symbols()) {
    if (s < 0 || static_cast<std::size_t>(s) >= num_symbols) {
      throw UnknownSymbolError("symbol id " + std::to_string(s) +
                               " outside alphabet of size " +
                               std::to_string(num_symbols));
    }
    ++counts[static_cast<std::size_t>(s)];
  }
  return counts;
}

void check_kind(const Channel& channel, const ManifestDataset& data) {
  if (channel_kind(channel) != data.kind()) {
    throw InvalidArgumentError("dataset kind does not match channel kind");
  }
}

}  // namespace

DiscreteChannel::DiscreteChannel(std::vector<std::vector<double>> emission)
    : emission_(std::move(emission)) {
  if (emission_.size() < 2) {
    throw InvalidArgumentError("DiscreteChannel requires k >= 2 states");
  }
  const std::size_t m = emission_.front().size();
  if (m == 0) {
    throw InvalidArgumentError("DiscreteChannel requires m >= 1 symbols");
  }
  for (std::size_t j = 0; j < emission_.size(); ++j) {
    auto& row = emission_[j];
    if (row.size() != m) {
      throw InvalidArgumentError("emission rows have inconsistent lengths");
    }
    double sum = 0.0;
    for (double p : row) {
      if (p < 0.0) {
        throw NegativeEntryError("emission row " + std::to_string(j) +
                                 " has a negative entry");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > kSimplexInputTolerance) {
      throw SumNotOneError("emission row " + std::to_string(j) + " sums to " +
                           std::to_string(sum));
    }
    for (double& p : row) p /= sum;
  }
}

GaussianChannel::GaussianChannel(std::vector<Component> components)
    : components_(std::move(components)) {
  if (components_.size() < 2) {
    throw InvalidArgumentError("GaussianChannel requires k >= 2 states");
  }
  for (const auto& c : components_) {
    if (!(c.sigma > 0.0)) {
      throw InvalidArgumentError("Gaussian sigma must be positive");
    }
  }
}

double GaussianChannel::log_pdf(std::size_t state, double x) const {
  const auto& c = components_[state];
  const double z = (x - c.mu) / c.sigma;
  return -0.5 * std::log(2.0 * std::numbers::pi) - std::log(c.sigma) -
         0.5 * z * z;
}

DiscreteChannel IdentityChannel::to_discrete() const {
  return identity_channel(k);
}

DiscreteChannel identity_channel(std::size_t k) {
  std::vector<std::vector<double>> rows(k, std::vector<double>(k, 0.0));
  for (std::size_t j = 0; j < k; ++j) rows[j][j] = 1.0;
  return DiscreteChannel(std::move(rows));
}

DiscreteChannel binary_test_channel(double eps1, double eps2) {
  if (!(eps1 >= 0.0 && eps1 < 1.0) || !(eps2 >= 0.0 && eps2 < 1.0)) {
    throw OutOfRangeError("test error rates must lie in [0, 1)");
  }
  return DiscreteChannel({{1.0 - eps2, eps2}, {eps1, 1.0 - eps1}});
}

std::size_t num_states(const Channel& channel) {
  return std::visit([](const auto& c) { return c.num_states(); }, channel);
}

DataKind channel_kind(const Channel& channel) {
  return std::holds_alternative<DiscreteChannel>(channel)
             ? DataKind::discrete
             : DataKind::continuous;
}

double observation_weight(const Channel& channel, const Observation& obs,
                          std::size_t state) {
  if (const auto* dc = std::get_if<DiscreteChannel>(&channel)) {
    const int* sym = std::get_if<int>(&obs);
    if (sym == nullptr) {
      throw InvalidArgumentError("discrete channel expects a symbol id");
    }
    if (*sym < 0 || static_cast<std::size_t>(*sym) >= dc->num_symbols()) {
      throw UnknownSymbolError("symbol id " + std::to_string(*sym) +
                               " outside alphabet of size " +
                               std::to_string(dc->num_symbols()));
    }
    return dc->emission(state, static_cast<std::size_t>(*sym));
  }
  const auto& gc = std::get<GaussianChannel>(channel);
  const double* x = std::get_if<double>(&obs);
  if (x == nullptr) {
    throw InvalidArgumentError("Gaussian channel expects a real observation");
  }
  return std::exp(gc.log_pdf(state, *x));
}

double likelihood_point(const Channel& channel, const Observation& obs,
                        const Chances& theta) {
  if (num_states(channel) != theta.k()) {
    throw InvalidArgumentError("dimension mismatch in likelihood_point");
  }
  double acc = 0.0;
  for (std::size_t j = 0; j < theta.k(); ++j) {
    acc += observation_weight(channel, obs, j) * theta[j];
  }
  return acc;
}

double log_likelihood_dataset(const Channel& channel,
                              const ManifestDataset& data,
                              const Chances& theta) {
  return LikelihoodModel(channel, data).log_likelihood(theta);
}

PositivityReport strict_positivity_report(const Channel& channel,
                                          const ManifestDataset& data) {
  if (std::holds_alternative<GaussianChannel>(channel)) {
    check_kind(channel, data);
    return PositivityReport{true, std::nullopt};
  }
  const auto& dc = std::get<DiscreteChannel>(channel);
  check_kind(channel, data);
  const auto counts = count_symbols(data, dc.num_symbols());
  for (std::size_t j = 0; j < dc.num_states(); ++j) {
    for (std::size_t o = 0; o < counts.size(); ++o) {
      if (counts[o] > 0 && dc.emission(j, o) == 0.0) {
        return PositivityReport{false,
                                Chances::vertex(j, dc.num_states())};
      }
    }
  }
  return PositivityReport{true, std::nullopt};
}

LikelihoodModel::LikelihoodModel(const Channel& channel,
                                 const ManifestDataset& data)
    : k_(num_states(channel)),
      discrete_(std::holds_alternative<DiscreteChannel>(channel)) {
  check_kind(channel, data);
  vanish_.assign(k_, 0);
  if (discrete_) {
    const auto& dc = std::get<DiscreteChannel>(channel);
    emission_ = dc.rows();
    symbol_counts_ = count_symbols(data, dc.num_symbols());
    for (std::size_t j = 0; j < k_; ++j) {
      for (std::size_t o = 0; o < symbol_counts_.size(); ++o) {
        if (symbol_counts_[o] > 0 && emission_[j][o] == 0.0) {
          vanish_[j] += static_cast<int>(symbol_counts_[o]);
        }
      }
    }
  } else {
    const auto& gc = std::get<GaussianChannel>(channel);
    log_pdf_.reserve(data.size());
    for (double x : data.reals()) {
      if (std::isnan(x)) {
        throw NonFiniteError("dataset contains a NaN observation");
      }
      std::vector<double> row(k_);
      for (std::size_t j = 0; j < k_; ++j) row[j] = gc.log_pdf(j, x);
      log_pdf_.push_back(std::move(row));
    }
  }
}

double LikelihoodModel::log_likelihood(const Chances& theta) const {
  if (theta.k() != k_) {
    throw InvalidArgumentError("dimension mismatch in log_likelihood");
  }
  double acc = 0.0;
  if (discrete_) {
    for (std::size_t o = 0; o < symbol_counts_.size(); ++o) {
      if (symbol_counts_[o] == 0) continue;
      double mix = 0.0;
      for (std::size_t j = 0; j < k_; ++j) mix += emission_[j][o] * theta[j];
      if (mix <= 0.0) return kNegInf;
      acc += static_cast<double>(symbol_counts_[o]) * std::log(mix);
    }
    return acc;
  }
  std::vector<double> terms(k_);
  for (const auto& row : log_pdf_) {
    for (std::size_t j = 0; j < k_; ++j) {
      terms[j] = theta[j] > 0.0 ? row[j] + std::log(theta[j]) : kNegInf;
    }
    const double lp = log_sum_exp(terms);
    if (lp == kNegInf) return kNegInf;
    acc += lp;
  }
  return acc;
}

double LikelihoodModel::log_likelihood2(double theta1) const {
  if (k_ != 2) {
    throw InvalidArgumentError("log_likelihood2 requires k = 2");
  }
  const double theta2 = 1.0 - theta1;
  double acc = 0.0;
  if (discrete_) {
    for (std::size_t o = 0; o < symbol_counts_.size(); ++o) {
      if (symbol_counts_[o] == 0) continue;
      const double mix = emission_[0][o] * theta1 + emission_[1][o] * theta2;
      if (mix <= 0.0) return kNegInf;
      acc += static_cast<double>(symbol_counts_[o]) * std::log(mix);
    }
    return acc;
  }
  std::vector<double> terms(2);
  for (const auto& row : log_pdf_) {
    terms[0] = theta1 > 0.0 ? row[0] + std::log(theta1) : kNegInf;
    terms[1] = theta2 > 0.0 ? row[1] + std::log(theta2) : kNegInf;
    const double lp = log_sum_exp(terms);
    if (lp == kNegInf) return kNegInf;
    acc += lp;
  }
  return acc;
}

}  // namespace credal
