#include "credal/core.hpp"

#include <cmath>
#include <string>

namespace credal {

Chances::Chances(std::vector<double> values) : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw InvalidArgumentError("Chances requires k >= 2, got k = " +
                               std::to_string(values_.size()));
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (values_[i] < 0.0) {
      throw NegativeEntryError("Chances entry " + std::to_string(i) +
                               " is negative: " + std::to_string(values_[i]));
    }
    sum += values_[i];
  }
  if (std::abs(sum - 1.0) > kSimplexInputTolerance) {
    throw SumNotOneError("Chances entries sum to " + std::to_string(sum) +
                         ", expected 1");
  }
  for (double& v : values_) v /= sum;
}

Chances Chances::vertex(std::size_t index, std::size_t k) {
  if (index >= k) {
    throw InvalidArgumentError("vertex index " + std::to_string(index) +
                               " out of range for k = " + std::to_string(k));
  }
  std::vector<double> v(k, 0.0);
  v[index] = 1.0;
  return Chances(std::move(v));
}

Chances validate_chances(const std::vector<double>& raw) {
  return Chances(raw);
}

CountVector::CountVector(std::vector<std::int64_t> counts)
    : counts_(std::move(counts)) {
  if (counts_.size() < 2) {
    throw InvalidArgumentError("CountVector requires k >= 2, got k = " +
                               std::to_string(counts_.size()));
  }
  for (std::size_t i = 0; i < counts_.size(); ++i) {
    if (counts_[i] < 0) {
      throw NegativeEntryError("count " + std::to_string(i) + " is negative");
    }
    total_ += counts_[i];
  }
}

CountVector uniform_outcome_counts(std::size_t index, std::size_t k,
                                   std::int64_t total) {
  if (index >= k) {
    throw InvalidArgumentError("outcome index out of range");
  }
  std::vector<std::int64_t> c(k, 0);
  c[index] = total;
  return CountVector(std::move(c));
}

RelativeFrequencies frequencies(const CountVector& counts) {
  if (counts.total() == 0) {
    throw EmptyDatasetError("frequencies of an empty count vector");
  }
  std::vector<double> f(counts.k());
  const double n = static_cast<double>(counts.total());
  for (std::size_t i = 0; i < counts.k(); ++i) {
    f[i] = static_cast<double>(counts[i]) / n;
  }
  return RelativeFrequencies{std::move(f)};
}

double log_monomial(const CountVector& exponents, const Chances& theta) {
  if (exponents.k() != theta.k()) {
    throw InvalidArgumentError("dimension mismatch in log_monomial");
  }
  double acc = 0.0;
  for (std::size_t i = 0; i < exponents.k(); ++i) {
    if (exponents[i] == 0) continue;  // 0^0 = 1
    acc += static_cast<double>(exponents[i]) * std::log(theta[i]);
  }
  return acc;
}

double log_monomial_max(const CountVector& counts) {
  if (counts.total() == 0) {
    throw EmptyDatasetError("monomial_max of an empty count vector");
  }
  const double logn = std::log(static_cast<double>(counts.total()));
  double acc = 0.0;
  for (std::size_t i = 0; i < counts.k(); ++i) {
    if (counts[i] == 0) continue;
    const double ni = static_cast<double>(counts[i]);
    acc += ni * (std::log(ni) - logn);
  }
  return acc;
}

double monomial_max(const CountVector& counts) {
  return std::exp(log_monomial_max(counts));
}

ManifestDataset ManifestDataset::discrete(std::vector<int> symbols) {
  ManifestDataset d(DataKind::discrete);
  d.symbols_ = std::move(symbols);
  return d;
}

ManifestDataset ManifestDataset::continuous(std::vector<double> values) {
  ManifestDataset d(DataKind::continuous);
  d.reals_ = std::move(values);
  return d;
}

std::size_t ManifestDataset::size() const {
  return kind_ == DataKind::discrete ? symbols_.size() : reals_.size();
}

const std::vector<int>& ManifestDataset::symbols() const {
  if (kind_ != DataKind::discrete) {
    throw InvalidArgumentError("dataset is not discrete");
  }
  return symbols_;
}

const std::vector<double>& ManifestDataset::reals() const {
  if (kind_ != DataKind::continuous) {
    throw InvalidArgumentError("dataset is not continuous");
  }
  return reals_;
}

const char* method_name(Method m) {
  switch (m) {
    case Method::closed_form: return "closed_form";
    case Method::gauss_1d: return "gauss_1d";
    case Method::mc_importance: return "mc_importance";
  }
  return "unknown";
}

BoundPair make_bound_pair(const Estimate& lower, const Estimate& upper) {
  const double band =
      3.0 * lower.std_error + 3.0 * upper.std_error + 1e-9;
  if (lower.value > upper.value + band) {
    throw Error("BoundPair ordering violated: lower " +
                std::to_string(lower.value) + " > upper " +
                std::to_string(upper.value));
  }
  return BoundPair{lower.value, upper.value, lower, upper};
}

}  // namespace credal
