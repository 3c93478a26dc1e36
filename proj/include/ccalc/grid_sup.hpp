#pragma once

#include <cstddef>

#include "ccalc/poly.hpp"

namespace ccalc {

// Sup norms on T and T^2 are estimated as the maximum modulus over an
// oversampled roots-of-unity grid with max(256, 8 (degree + 1)) points per
// variable. The estimate is a lower bound for the true sup; at this
// oversampling the gap is below 2% in the worst case and negligible for
// typical inputs, so inequality checks that involve it carry a 1e-9 slack.
//
// `align` rounds the grid size up to a multiple of `align`, for callers
// that need a coarser grid such as Pi_m to be contained in the sample set.
std::size_t oversampled_grid_size(int degree, std::size_t align = 1);

double sup_norm(const UniPoly& f, std::size_t align = 1);
double sup_norm(const BiPoly& f, std::size_t align = 1);

// Values of f on Pi_n x Pi_n (row = first variable). n must exceed both
// degrees.
ComplexMatrix grid_values(const BiPoly& f, std::size_t n);
std::vector<Complex> grid_values(const UniPoly& f, std::size_t n);

}  // namespace ccalc
