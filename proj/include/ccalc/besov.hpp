#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ccalc/poly.hpp"

namespace ccalc {

// The C^infinity Littlewood-Paley profile w:
//   h(x) = exp(-1/x) for x > 0, else 0
//   sigma(t) = h(t - 1/2) / (h(t - 1/2) + h(1 - t))    on [1/2, 1]
//   w(s) = sigma(s) on [1/2, 1], 1 - sigma(s/2) on [1, 2], 0 elsewhere.
// w >= 0, supp w in [1/2, 2], and w(s) + w(s/2) = 1 on [1, 2].
class SmoothBump {
 public:
  double operator()(double s) const;
  // The transition sigma on [1/2, 1] (clamped outside).
  static double transition(double t);
};

double bump(double s);

// W_n multiplier at the lattice point j (|j| Euclidean): w(|j| / 2^n) for
// n >= 1, and [|j| <= 1] for n = 0.
double wn_multiplier(std::size_t n, std::span<const int> j);
double wn_multiplier(std::size_t n, int j1, int j2);
double wn_multiplier(std::size_t n, int j);

// Multiplier actually used for block 0 by lp_blocks:
//   1 - sum_{n>=1} w(|j| / 2^n).
// It agrees with wn_multiplier(0, .) wherever |j| <= 1 or |j| >= 2. On T^2
// the single analytic lattice point with 1 < |j| < 2, namely (1, 1), would
// otherwise be covered only by w(|j|/2) < 1, and the blocks would not add
// back up to f.
double lp_block0_multiplier(std::span<const int> j);

template <typename Poly>
struct LPBlock {
  std::size_t n;
  Poly poly;
};

template <typename Poly>
struct LPDecomposition {
  std::vector<LPBlock<Poly>> blocks;  // nonzero blocks only, n ascending
  SmoothBump bump;

  Poly sum() const;
};

template <>
BiPoly LPDecomposition<BiPoly>::sum() const;
template <>
UniPoly LPDecomposition<UniPoly>::sum() const;

LPDecomposition<BiPoly> lp_blocks(const BiPoly& f);
LPDecomposition<UniPoly> lp_blocks(const UniPoly& f);

struct BlockNorm {
  std::size_t n;
  double sup_norm;
};

// sum_n 2^n ||f_n||_inf with grid-estimated sup norms.
double besov_norm_1_inf_1(const BiPoly& f);
double besov_norm_1_inf_1(const UniPoly& f);
// Per-block sup norms, for reporting.
std::vector<BlockNorm> besov_block_norms(const BiPoly& f);

// sum_j sup_w |sum_k f^(j,k) w^k|, the projective tensor bound of f.
double projective_bound(const BiPoly& f);

}  // namespace ccalc
