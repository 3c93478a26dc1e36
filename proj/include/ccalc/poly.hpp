#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ccalc/linalg.hpp"
#include "ccalc/random.hpp"

namespace ccalc {

// Analytic polynomial sum_s a_s z^s. Trailing zero coefficients are dropped,
// so the zero polynomial has no coefficients and degree() == -1.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Complex> coeffs);

  static UniPoly constant(Complex c);
  static UniPoly monomial(std::size_t power, Complex c = 1.0);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  const std::vector<Complex>& coeffs() const { return coeffs_; }
  // Zero beyond the stored range.
  Complex coeff(std::size_t s) const { return s < coeffs_.size() ? coeffs_[s] : Complex{}; }

  Complex operator()(Complex z) const;
  UniPoly derivative() const;

 private:
  std::vector<Complex> coeffs_;
};

// Analytic polynomial sum_{j,k} c(j,k) z^j w^k on a (d1+1) x (d2+1)
// coefficient grid; row index = power of the first variable. The grid is
// kept as given (no trimming); degree_first()/degree_second() report the
// effective degrees.
class BiPoly {
 public:
  BiPoly() : coeffs_(ComplexMatrix::Zero(1, 1)) {}
  explicit BiPoly(ComplexMatrix coeffs);

  static BiPoly constant(Complex c);
  static BiPoly monomial(std::size_t j, std::size_t k, Complex c = 1.0);

  std::size_t d1() const { return static_cast<std::size_t>(coeffs_.rows()) - 1; }
  std::size_t d2() const { return static_cast<std::size_t>(coeffs_.cols()) - 1; }
  // Highest power actually present; -1 for the zero polynomial.
  int degree_first() const;
  int degree_second() const;
  int max_degree() const;

  const ComplexMatrix& coeffs() const { return coeffs_; }
  Complex coeff(std::size_t j, std::size_t k) const;

  Complex operator()(Complex z, Complex w) const;

  // Column k as a polynomial in the first variable, and row j as a
  // polynomial in the second.
  UniPoly first_variable_slice(std::size_t k) const;
  UniPoly second_variable_slice(std::size_t j) const;

  // z^a w^b f(z, w).
  BiPoly shifted(std::size_t a, std::size_t b) const;
  BiPoly scaled(Complex c) const;

 private:
  ComplexMatrix coeffs_;
};

BiPoly operator+(const BiPoly& a, const BiPoly& b);

// Pi_m = { exp(2 pi i t / m) : t = 0..m-1 }, in that order.
class RootsGrid {
 public:
  explicit RootsGrid(std::size_t m);

  std::size_t size() const { return points_.size(); }
  Complex operator[](std::size_t t) const { return points_[t]; }
  const std::vector<Complex>& points() const { return points_; }

  // V(t, j) = xi_t^j for j < columns.
  ComplexMatrix vandermonde(std::size_t columns) const;

 private:
  std::vector<Complex> points_;
};

Complex eval_uni(const UniPoly& phi, Complex z);
Complex eval_bi(const BiPoly& f, Complex z, Complex w);

// (1/m) sum_{k<m} z^k, always in sum form.
Complex upsilon(std::size_t m, Complex z);

// The matrix polynomial Upsilon_m(c A) = (1/m) sum_{k<m} c^k A^k, given the
// powers A^0..A^{m-1}.
ComplexMatrix upsilon_of(std::size_t m, Complex c, std::span<const ComplexMatrix> powers);

// (1/m) sum_{xi in Pi_m} f(xi) conj(g(xi)); deg f, deg g < m.
Complex quadrature_1d(const UniPoly& f, const UniPoly& g, std::size_t m);
// (1/m^2) sum_{xi,eta} f(xi,eta) conj(g(xi,eta)); all degrees < m.
Complex quadrature_2d(const BiPoly& f, const BiPoly& g, std::size_t m);

// Coefficient-space inner products sum f^(s) conj(g^(s)).
Complex coefficient_inner(const UniPoly& f, const UniPoly& g);
Complex coefficient_inner(const BiPoly& f, const BiPoly& g);

// (f(z) - f(w)) / (z - w), f'(z) on the diagonal.
Complex divided_diff(const UniPoly& f, Complex z, Complex w);
// Divided difference in the first variable with the second frozen at w.
Complex divided_diff_1(const BiPoly& f, Complex z1, Complex z2, Complex w);
// Divided difference in the second variable with the first frozen at z.
Complex divided_diff_2(const BiPoly& f, Complex z, Complex w1, Complex w2);

// Coefficients of (z, w) -> (d f)(z, w): entry (j, k) = a_{j+k+1}. The
// result is a deg f x deg f grid (1x1 zero for constant f).
BiPoly divided_difference_poly(const UniPoly& f);

// w -> (d^[1] f)(z1, z2, w) as a polynomial in w.
UniPoly divided_diff_1_in_last(const BiPoly& f, Complex z1, Complex z2);
// z -> (d^[2] f)(z, w1, w2) as a polynomial in z.
UniPoly divided_diff_2_in_first(const BiPoly& f, Complex w1, Complex w2);

// f(z,w) = sum_{xi,eta} a(xi,eta) Upsilon_m^2(z conj xi) Upsilon_m^2(w conj eta),
// degree 2m-2 in each variable, with f = a on Pi_m x Pi_m. Rows of `values`
// follow the first variable in RootsGrid order.
BiPoly interpolate(const ComplexMatrix& values, std::size_t m);

// {K(xi, eta)}_{xi, eta in Pi_m}; all degrees of K < m.
ComplexMatrix kernel_matrix(const BiPoly& K, std::size_t m);

// {g^(j+k+1)}_{j,k < deg g}: the coefficient matrix of the divided
// difference of g. 1x1 zero for constant g.
ComplexMatrix hankel_matrix(const UniPoly& g);

// Random polynomials with coefficients uniform in the unit box
// [-1,1] x [-1,1] i.
UniPoly random_unipoly(std::size_t degree, Rng& rng);
BiPoly random_bipoly(std::size_t d1, std::size_t d2, Rng& rng);

}  // namespace ccalc
