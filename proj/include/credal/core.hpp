#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "credal/errors.hpp"

namespace credal {

/// Tolerance accepted on probability vectors before renormalization.
inline constexpr double kSimplexInputTolerance = 1e-9;

/// A point in the closed probability simplex: entries >= 0, sum 1.
/// Construction accepts deviations up to 1e-9 and renormalizes to exact sum 1.
class Chances {
 public:
  explicit Chances(std::vector<double> values);

  /// The vertex e^index of the k-simplex (theta_index = 1, rest 0).
  static Chances vertex(std::size_t index, std::size_t k);

  std::size_t k() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }
  const std::vector<double>& values() const { return values_; }

 private:
  std::vector<double> values_;
};

/// Throws NegativeEntryError or SumNotOneError on invalid input.
Chances validate_chances(const std::vector<double>& raw);

struct SimplexVertex {
  std::size_t index = 0;

  Chances to_chances(std::size_t k) const { return Chances::vertex(index, k); }
};

/// Outcome counts n = (n_1, ..., n_k) of a categorical dataset.
class CountVector {
 public:
  explicit CountVector(std::vector<std::int64_t> counts);

  std::size_t k() const { return counts_.size(); }
  std::int64_t total() const { return total_; }
  std::int64_t operator[](std::size_t i) const { return counts_[i]; }
  const std::vector<std::int64_t>& counts() const { return counts_; }

 private:
  std::vector<std::int64_t> counts_;
  std::int64_t total_ = 0;
};

/// The dataset d^i: all `total` outcomes equal to category `index`.
CountVector uniform_outcome_counts(std::size_t index, std::size_t k,
                                   std::int64_t total);

/// Relative frequencies f' = n / N of a non-empty count vector.
struct RelativeFrequencies {
  std::vector<double> freqs;

  Chances to_chances() const { return Chances(freqs); }
};

RelativeFrequencies frequencies(const CountVector& counts);

/// log prod_i theta_i^{n_i} with the convention 0^0 = 1.
double log_monomial(const CountVector& exponents, const Chances& theta);

/// log of max over the simplex of prod theta_i^{n_i}, attained at f'.
double log_monomial_max(const CountVector& counts);
double monomial_max(const CountVector& counts);

enum class DataKind { discrete, continuous };

/// Observed realizations of the manifest variables S_1..S_N.
class ManifestDataset {
 public:
  static ManifestDataset discrete(std::vector<int> symbols);
  static ManifestDataset continuous(std::vector<double> values);

  DataKind kind() const { return kind_; }
  std::size_t size() const;
  bool empty() const { return size() == 0; }
  const std::vector<int>& symbols() const;
  const std::vector<double>& reals() const;

 private:
  explicit ManifestDataset(DataKind kind) : kind_(kind) {}

  DataKind kind_;
  std::vector<int> symbols_;
  std::vector<double> reals_;
};

enum class Method { closed_form, gauss_1d, mc_importance };

const char* method_name(Method m);

/// A numerical expectation with its error metadata.
struct Estimate {
  double value = 0.0;
  double std_error = 0.0;  // 0 for closed_form and gauss_1d
  Method method = Method::closed_form;
  std::int64_t n_samples_or_nodes = 0;
  bool low_ess = false;  // importance sampling ESS fell below 1% of samples
};

struct BoundPair {
  double lower = 0.0;
  double upper = 0.0;
  Estimate lower_meta;
  Estimate upper_meta;
};

/// Builds a BoundPair, checking lower <= upper within the combined error band.
BoundPair make_bound_pair(const Estimate& lower, const Estimate& upper);

}  // namespace credal
