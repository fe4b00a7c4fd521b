#include "credal/rng.hpp"

#include <cmath>
#include <numbers>

#include "credal/errors.hpp"

namespace credal {

double Rng::uniform() {
  // 53-bit mantissa, offset by half an ulp so 0 and 1 are excluded.
  const std::uint64_t bits = engine_() >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

double Rng::normal() {
  const double u1 = uniform();
  const double u2 = uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

double Rng::gamma(double shape) {
  if (shape < 1.0) return std::exp(log_gamma_draw(shape));

  // Marsaglia-Tsang squeeze method.
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = normal();
    double v = 1.0 + c * x;
    if (v <= 0.0) continue;
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double Rng::log_gamma_draw(double shape) {
  if (shape <= 0.0) {
    throw InvalidArgumentError("gamma shape must be positive");
  }
  if (shape >= 1.0) return std::log(gamma(shape));
  // Boosting identity: Gamma(a) = Gamma(a+1) * U^{1/a}.
  return std::log(gamma(shape + 1.0)) + std::log(uniform()) / shape;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the (seed, stream) pair.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace credal
