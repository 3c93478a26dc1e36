#include "ccalc/random.hpp"

#include <cmath>
#include <numbers>

namespace ccalc {

double Rng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

std::complex<double> Rng::complex_normal() {
  const double u1 = 1.0 - uniform();  // (0, 1]
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return std::complex<double>(r * std::cos(theta), r * std::sin(theta)) * std::numbers::sqrt2 * 0.5;
}

std::complex<double> Rng::unit_box() {
  const double re = 2.0 * uniform() - 1.0;
  const double im = 2.0 * uniform() - 1.0;
  return {re, im};
}

std::complex<double> Rng::unimodular() {
  return std::polar(1.0, 2.0 * std::numbers::pi * uniform());
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace ccalc
