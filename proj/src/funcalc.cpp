#include "ccalc/funcalc.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ccalc/error.hpp"
#include "ccalc/grid_sup.hpp"

namespace ccalc {

namespace {

void require_same_square(std::initializer_list<const ComplexMatrix*> ms) {
  const ComplexMatrix* first = *ms.begin();
  require_square(*first, "operator");
  for (const ComplexMatrix* M : ms) {
    require_square(*M, "operator");
    if (M->rows() != first->rows()) throw InvalidInput("operators have mismatched dimensions");
  }
}

void require_degree_at_most(const BiPoly& f, std::size_t m) {
  if (f.max_degree() > static_cast<int>(m)) {
    throw PreconditionViolation("polynomial degree " + std::to_string(f.max_degree()) +
                                " exceeds m = " + std::to_string(m));
  }
  if (m == 0) throw InvalidInput("m must be at least 1");
}

ComplexMatrix apply_with_powers(const UniPoly& phi, std::span<const ComplexMatrix> powers) {
  ComplexMatrix acc = ComplexMatrix::Zero(powers[0].rows(), powers[0].cols());
  for (std::size_t s = 0; s < phi.coeffs().size(); ++s) acc += phi.coeffs()[s] * powers[s];
  return acc;
}

std::size_t max_power_count(std::initializer_list<const std::vector<UniPoly>*> families) {
  int d = 0;
  for (const auto* fam : families)
    for (const auto& p : *fam) d = std::max(d, p.degree());
  return static_cast<std::size_t>(d) + 1;
}

std::size_t max_power_count(const std::vector<std::vector<UniPoly>>& grid) {
  int d = 0;
  for (const auto& row : grid)
    for (const auto& p : row) d = std::max(d, p.degree());
  return static_cast<std::size_t>(d) + 1;
}

// sum_{xi,eta} Upsilon_m(conj(xi) A) D Upsilon_m(conj(eta) B) (d^[1] f)(xi, eta, R)
ComplexMatrix first_variable_sum(const BiPoly& f, const ComplexMatrix& A, const ComplexMatrix& D,
                                 const ComplexMatrix& B, const ComplexMatrix& R, std::size_t m) {
  const RootsGrid grid(m);
  const auto powA = matrix_powers(A, m);
  const auto powB = matrix_powers(B, m);
  const auto powR = matrix_powers(R, f.d2() + 1);
  std::vector<ComplexMatrix> right(m);
  for (std::size_t b = 0; b < m; ++b) right[b] = upsilon_of(m, std::conj(grid[b]), powB);

  const auto n = A.rows();
  ComplexMatrix total = ComplexMatrix::Zero(n, n);
  ComplexMatrix inner_sum(n, n);
  for (std::size_t a = 0; a < m; ++a) {
    inner_sum.setZero();
    for (std::size_t b = 0; b < m; ++b) {
      const UniPoly c = divided_diff_1_in_last(f, grid[a], grid[b]);
      if (c.is_zero()) continue;
      inner_sum.noalias() += right[b] * apply_with_powers(c, powR);
    }
    const ComplexMatrix left = upsilon_of(m, std::conj(grid[a]), powA);
    total.noalias() += left * D * inner_sum;
  }
  return total;
}

// sum_{xi,eta} (d^[2] f)(T, xi, eta) Upsilon_m(conj(xi) A) D Upsilon_m(conj(eta) B)
ComplexMatrix second_variable_sum(const BiPoly& f, const ComplexMatrix& T, const ComplexMatrix& A,
                                  const ComplexMatrix& D, const ComplexMatrix& B, std::size_t m) {
  const RootsGrid grid(m);
  const auto powT = matrix_powers(T, f.d1() + 1);
  const auto powA = matrix_powers(A, m);
  const auto powB = matrix_powers(B, m);
  std::vector<ComplexMatrix> right(m);
  for (std::size_t b = 0; b < m; ++b) right[b] = upsilon_of(m, std::conj(grid[b]), powB);

  const auto n = T.rows();
  ComplexMatrix total = ComplexMatrix::Zero(n, n);
  for (std::size_t a = 0; a < m; ++a) {
    const ComplexMatrix middle = upsilon_of(m, std::conj(grid[a]), powA) * D;
    for (std::size_t b = 0; b < m; ++b) {
      const UniPoly c = divided_diff_2_in_first(f, grid[a], grid[b]);
      if (c.is_zero()) continue;
      total.noalias() += apply_with_powers(c, powT) * middle * right[b];
    }
  }
  return total;
}

// max over a grid on T of (sum_j |p_j|^2)^{1/2}
double column_family_sup(const std::vector<UniPoly>& family) {
  int d = 0;
  for (const auto& p : family) d = std::max(d, p.degree());
  const std::size_t n = oversampled_grid_size(d);
  std::vector<double> acc(n, 0.0);
  for (const auto& p : family) {
    if (p.is_zero()) continue;
    const auto v = grid_values(p, n);
    for (std::size_t t = 0; t < n; ++t) acc[t] += std::norm(v[t]);
  }
  return std::sqrt(*std::max_element(acc.begin(), acc.end()));
}

// max over a grid on T of the operator norm of {p_jk}
double matrix_family_sup(const std::vector<std::vector<UniPoly>>& family) {
  if (family.empty() || family.front().empty()) return 0.0;
  const std::size_t rows = family.size();
  const std::size_t cols = family.front().size();
  int d = 0;
  for (const auto& row : family) {
    if (row.size() != cols) throw InvalidInput("ragged matrix family");
    for (const auto& p : row) d = std::max(d, p.degree());
  }
  const std::size_t n = oversampled_grid_size(d);
  std::vector<std::vector<std::vector<Complex>>> values(rows, std::vector<std::vector<Complex>>(cols));
  for (std::size_t j = 0; j < rows; ++j)
    for (std::size_t k = 0; k < cols; ++k)
      values[j][k] = family[j][k].is_zero() ? std::vector<Complex>(n) : grid_values(family[j][k], n);
  double top = 0.0;
  ComplexMatrix M(rows, cols);
  for (std::size_t t = 0; t < n; ++t) {
    for (std::size_t j = 0; j < rows; ++j)
      for (std::size_t k = 0; k < cols; ++k) M(j, k) = values[j][k][t];
    top = std::max(top, singular_values(M).front());
  }
  return top;
}

}  // namespace

ContractionPair::ContractionPair(ComplexMatrix T, ComplexMatrix R) : T_(std::move(T)), R_(std::move(R)) {
  require_same_square({&T_, &R_});
  if (!is_contraction(T_, kTolerance)) throw InvalidInput("T is not a contraction");
  if (!is_contraction(R_, kTolerance)) throw InvalidInput("R is not a contraction");
}

std::vector<ComplexMatrix> matrix_powers(const ComplexMatrix& A, std::size_t count) {
  require_square(A, "operator");
  std::vector<ComplexMatrix> out;
  out.reserve(count);
  if (count == 0) return out;
  out.push_back(ComplexMatrix::Identity(A.rows(), A.cols()));
  for (std::size_t s = 1; s < count; ++s) out.push_back(A * out.back());
  return out;
}

ComplexMatrix poly_calc(const UniPoly& phi, const ComplexMatrix& T) {
  require_square(T, "operator");
  const auto powers = matrix_powers(T, std::max<std::size_t>(1, phi.coeffs().size()));
  return apply_with_powers(phi, powers);
}

ComplexMatrix f_of_pair(const BiPoly& f, const ContractionPair& pair) {
  const auto& c = f.coeffs();
  const auto powT = matrix_powers(pair.T(), f.d1() + 1);
  const auto powR = matrix_powers(pair.R(), f.d2() + 1);
  const auto n = static_cast<Eigen::Index>(pair.dim());
  ComplexMatrix total = ComplexMatrix::Zero(n, n);
  ComplexMatrix row(n, n);
  for (Eigen::Index j = 0; j < c.rows(); ++j) {
    row.setZero();
    bool any = false;
    for (Eigen::Index k = 0; k < c.cols(); ++k) {
      if (c(j, k) == Complex{}) continue;
      row += c(j, k) * powR[k];
      any = true;
    }
    if (any) total.noalias() += powT[j] * row;
  }
  return total;
}

ComplexMatrix f_of_pair(const LPDecomposition<BiPoly>& f, const ContractionPair& pair) {
  const auto n = static_cast<Eigen::Index>(pair.dim());
  ComplexMatrix total = ComplexMatrix::Zero(n, n);
  for (const auto& block : f.blocks) total += f_of_pair(block.poly, pair);
  return total;
}

ComplexMatrix triple_sum(const FiniteTripleSum& ts, const ComplexMatrix& T1, const ComplexMatrix& T2,
                         const ComplexMatrix& T3, const ComplexMatrix& X, const ComplexMatrix& Y) {
  require_same_square({&T1, &T2, &T3, &X, &Y});
  const auto n = T1.rows();
  ComplexMatrix total = ComplexMatrix::Zero(n, n);

  if (const auto* s = std::get_if<FirstKindSum>(&ts)) {
    if (s->gamma.size() != s->alpha.size()) throw InvalidInput("gamma rows must match alpha");
    for (const auto& row : s->gamma)
      if (row.size() != s->beta.size()) throw InvalidInput("gamma columns must match beta");
    const auto p1 = matrix_powers(T1, max_power_count({&s->alpha}));
    const auto p2 = matrix_powers(T2, max_power_count({&s->beta}));
    const auto p3 = matrix_powers(T3, max_power_count(s->gamma));
    std::vector<ComplexMatrix> betaY;
    for (const auto& b : s->beta) betaY.push_back(apply_with_powers(b, p2) * Y);
    for (std::size_t j = 0; j < s->alpha.size(); ++j) {
      ComplexMatrix right = ComplexMatrix::Zero(n, n);
      for (std::size_t k = 0; k < s->beta.size(); ++k)
        right.noalias() += betaY[k] * apply_with_powers(s->gamma[j][k], p3);
      total.noalias() += apply_with_powers(s->alpha[j], p1) * X * right;
    }
    return total;
  }

  const auto& s = std::get<SecondKindSum>(ts);
  if (s.alpha.size() != s.beta.size()) throw InvalidInput("alpha rows must match beta");
  for (const auto& row : s.alpha)
    if (row.size() != s.gamma.size()) throw InvalidInput("alpha columns must match gamma");
  const auto p1 = matrix_powers(T1, max_power_count(s.alpha));
  const auto p2 = matrix_powers(T2, max_power_count({&s.beta}));
  const auto p3 = matrix_powers(T3, max_power_count({&s.gamma}));
  std::vector<ComplexMatrix> Ygamma;
  for (const auto& g : s.gamma) Ygamma.push_back(Y * apply_with_powers(g, p3));
  for (std::size_t j = 0; j < s.beta.size(); ++j) {
    const ComplexMatrix XbY = X * apply_with_powers(s.beta[j], p2);
    for (std::size_t k = 0; k < s.gamma.size(); ++k)
      total.noalias() += apply_with_powers(s.alpha[j][k], p1) * XbY * Ygamma[k];
  }
  return total;
}

double triple_sum_bound(const FiniteTripleSum& ts) {
  if (const auto* s = std::get_if<FirstKindSum>(&ts)) {
    return column_family_sup(s->alpha) * column_family_sup(s->beta) * matrix_family_sup(s->gamma);
  }
  const auto& s = std::get<SecondKindSum>(ts);
  return matrix_family_sup(s.alpha) * column_family_sup(s.beta) * column_family_sup(s.gamma);
}

ComplexMatrix diff_first(const BiPoly& f, const ComplexMatrix& T0, const ComplexMatrix& T1,
                         const ComplexMatrix& R1, std::size_t m) {
  require_same_square({&T0, &T1, &R1});
  require_degree_at_most(f, m);
  return first_variable_sum(f, T1, T1 - T0, T0, R1, m);
}

ComplexMatrix diff_second(const BiPoly& f, const ComplexMatrix& T0, const ComplexMatrix& R0,
                          const ComplexMatrix& R1, std::size_t m) {
  require_same_square({&T0, &R0, &R1});
  require_degree_at_most(f, m);
  return second_variable_sum(f, T0, R1, R1 - R0, R0, m);
}

ComplexMatrix full_difference(const BiPoly& f, const ContractionPair& pair0,
                              const ContractionPair& pair1, std::size_t m) {
  if (pair0.dim() != pair1.dim()) throw InvalidInput("pairs have mismatched dimensions");
  return diff_first(f, pair0.T(), pair1.T(), pair1.R(), m) +
         diff_second(f, pair0.T(), pair0.R(), pair1.R(), m);
}

ComplexMatrix path_derivative(const BiPoly& f, const PathSample& at, std::size_t m) {
  require_same_square({&at.T, &at.dT, &at.R, &at.dR});
  require_degree_at_most(f, m);
  return first_variable_sum(f, at.T, at.dT, at.T, at.R, m) +
         second_variable_sum(f, at.T, at.R, at.dR, at.R, m);
}

}  // namespace ccalc
