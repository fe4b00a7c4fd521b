#pragma once

#include <cstdint>
#include <random>

namespace credal {

/// Deterministic random source. All variates are derived from the standard
/// mt19937_64 stream with fixed consumption, so a seed pins the sequence
/// across platforms and runs.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform draw in the open interval (0, 1).
  double uniform();

  /// Standard normal via Box-Muller (two uniforms per call, no caching).
  double normal();

  /// Gamma(shape, 1) draw, shape > 0.
  double gamma(double shape);

  /// log of a Gamma(shape, 1) draw; stays finite for shapes down to ~1e-8
  /// where the linear-space draw would underflow.
  double log_gamma_draw(double shape);

 private:
  std::mt19937_64 engine_;
};

/// Stream-splitting mix so parallel batches get independent seeds.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace credal
