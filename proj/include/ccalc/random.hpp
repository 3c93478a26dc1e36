#pragma once

#include <complex>
#include <cstdint>
#include <random>

namespace ccalc {

// Portable random source. The engine is std::mt19937_64, whose output
// sequence is fixed by the C++ standard; the conversions below are written
// out by hand (std's distributions are implementation-defined), so any
// reimplementation can reproduce instances from seeds:
//
//   uniform()         = (x >> 11) * 2^-53               in [0, 1)
//   normal pair       = Box-Muller on u1 = 1 - uniform(), u2 = uniform():
//                       r = sqrt(-2 ln u1), (r cos 2 pi u2, r sin 2 pi u2)
//   complex_normal()  = (a + i b) / sqrt(2) for one normal pair (a, b)
//   unit_box()        = (2 uniform() - 1) + i (2 uniform() - 1)
//   unimodular()      = exp(2 pi i uniform())
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  std::complex<double> complex_normal();
  std::complex<double> unit_box();
  std::complex<double> unimodular();

 private:
  std::mt19937_64 engine_;
};

// SplitMix64 finalizer; used to derive independent per-trial seeds.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace ccalc
