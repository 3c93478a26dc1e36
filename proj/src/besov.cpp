#include "ccalc/besov.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "ccalc/grid_sup.hpp"

namespace ccalc {

namespace {

double h(double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; }

double lattice_norm(std::span<const int> j) {
  double acc = 0.0;
  for (int v : j) acc += static_cast<double>(v) * static_cast<double>(v);
  return std::sqrt(acc);
}

// Smallest N with w(r / 2^n) = 0 for all n > N, i.e. 2^{N-1} >= r.
std::size_t last_block(double r) {
  std::size_t n = 0;
  while (std::ldexp(1.0, static_cast<int>(n) - 1) < r) ++n;
  return n;
}

}  // namespace

double SmoothBump::transition(double t) {
  if (t <= 0.5) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = h(t - 0.5);
  const double b = h(1.0 - t);
  return a / (a + b);
}

double SmoothBump::operator()(double s) const {
  if (s <= 0.5 || s >= 2.0) return 0.0;
  if (s <= 1.0) return transition(s);
  // 1 - transition(s / 2), as the complementary quotient
  const double t = 0.5 * s;
  const double a = h(t - 0.5);
  const double b = h(1.0 - t);
  return b / (a + b);
}

double bump(double s) { return SmoothBump{}(s); }

double wn_multiplier(std::size_t n, std::span<const int> j) {
  const double r = lattice_norm(j);
  if (n == 0) return r <= 1.0 ? 1.0 : 0.0;
  return bump(std::ldexp(r, -static_cast<int>(n)));
}

double wn_multiplier(std::size_t n, int j1, int j2) {
  const std::array<int, 2> j{j1, j2};
  return wn_multiplier(n, j);
}

double wn_multiplier(std::size_t n, int j) {
  const std::array<int, 1> jj{j};
  return wn_multiplier(n, jj);
}

double lp_block0_multiplier(std::span<const int> j) {
  // 1 - sum_{n>=1} w(r/2^n) written without the cancellation: for r >= 2
  // the sum telescopes to exactly 1, and for r < 2 only n = 1 contributes.
  const double r = lattice_norm(j);
  if (r >= 2.0) return 0.0;
  return 1.0 - bump(0.5 * r);
}

template <>
BiPoly LPDecomposition<BiPoly>::sum() const {
  BiPoly acc = BiPoly::constant(0.0);
  for (const auto& b : blocks) acc = acc + b.poly;
  return acc;
}

template <>
UniPoly LPDecomposition<UniPoly>::sum() const {
  std::vector<Complex> acc;
  for (const auto& b : blocks) {
    const auto& c = b.poly.coeffs();
    if (acc.size() < c.size()) acc.resize(c.size());
    for (std::size_t s = 0; s < c.size(); ++s) acc[s] += c[s];
  }
  return UniPoly(std::move(acc));
}

LPDecomposition<BiPoly> lp_blocks(const BiPoly& f) {
  LPDecomposition<BiPoly> out;
  const auto& c = f.coeffs();
  const int d1 = f.degree_first();
  const int d2 = f.degree_second();
  if (d1 < 0) return out;
  const std::size_t top = last_block(std::hypot(d1, d2));
  for (std::size_t n = 0; n <= top; ++n) {
    ComplexMatrix block = ComplexMatrix::Zero(d1 + 1, d2 + 1);
    bool nonzero = false;
    for (int j = 0; j <= d1; ++j) {
      for (int k = 0; k <= d2; ++k) {
        const std::array<int, 2> idx{j, k};
        const double mult = n == 0 ? lp_block0_multiplier(idx) : wn_multiplier(n, idx);
        if (mult == 0.0 || c(j, k) == Complex{}) continue;
        block(j, k) = mult * c(j, k);
        nonzero = true;
      }
    }
    if (nonzero) out.blocks.push_back({n, BiPoly(std::move(block))});
  }
  return out;
}

LPDecomposition<UniPoly> lp_blocks(const UniPoly& f) {
  LPDecomposition<UniPoly> out;
  const int d = f.degree();
  if (d < 0) return out;
  const std::size_t top = last_block(d);
  for (std::size_t n = 0; n <= top; ++n) {
    std::vector<Complex> block(d + 1);
    bool nonzero = false;
    for (int j = 0; j <= d; ++j) {
      const std::array<int, 1> idx{j};
      const double mult = n == 0 ? lp_block0_multiplier(idx) : wn_multiplier(n, idx);
      if (mult == 0.0 || f.coeffs()[j] == Complex{}) continue;
      block[j] = mult * f.coeffs()[j];
      nonzero = true;
    }
    if (nonzero) out.blocks.push_back({n, UniPoly(std::move(block))});
  }
  return out;
}

std::vector<BlockNorm> besov_block_norms(const BiPoly& f) {
  std::vector<BlockNorm> out;
  for (const auto& b : lp_blocks(f).blocks) out.push_back({b.n, sup_norm(b.poly)});
  return out;
}

double besov_norm_1_inf_1(const BiPoly& f) {
  double acc = 0.0;
  for (const auto& b : besov_block_norms(f)) acc += std::ldexp(b.sup_norm, static_cast<int>(b.n));
  return acc;
}

double besov_norm_1_inf_1(const UniPoly& f) {
  double acc = 0.0;
  for (const auto& b : lp_blocks(f).blocks)
    acc += std::ldexp(sup_norm(b.poly), static_cast<int>(b.n));
  return acc;
}

double projective_bound(const BiPoly& f) {
  const int d = f.max_degree();
  if (d < 0) return 0.0;
  // Rows are sampled on the same grid that sup_norm(f) uses, so the bound
  // against (1 + N) ||f||_inf also holds between the two grid estimates.
  const std::size_t n = oversampled_grid_size(d);
  double acc = 0.0;
  for (int j = 0; j <= f.degree_first(); ++j) {
    const UniPoly row = f.second_variable_slice(static_cast<std::size_t>(j));
    if (row.is_zero()) continue;
    double top = 0.0;
    for (const Complex& v : grid_values(row, n)) top = std::max(top, std::abs(v));
    acc += top;
  }
  return acc;
}

}  // namespace ccalc
