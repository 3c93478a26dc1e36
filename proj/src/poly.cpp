#include "ccalc/poly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "ccalc/error.hpp"

namespace ccalc {

namespace {

void require_finite(const std::vector<Complex>& c) {
  for (const Complex& z : c) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw InvalidInput("polynomial has non-finite coefficients");
    }
  }
}

void require_degree_below(int degree, std::size_t m, const char* what) {
  if (degree >= static_cast<int>(m)) {
    throw PreconditionViolation(std::string(what) + ": degree " + std::to_string(degree) +
                                " is not below m = " + std::to_string(m));
  }
}

void require_m(std::size_t m) {
  if (m == 0) throw InvalidInput("grid size m must be at least 1");
}

// sum_s a_s h_{s-1}(z, w), where h_n(z, w) = sum_{j+k=n} z^j w^k is the
// divided difference of z^{n+1}. Uses h_n = z h_{n-1} + w^n, so no
// subtraction of nearly equal values occurs when z is close to w.
Complex divided_diff_coeffs(std::span<const Complex> a, Complex z, Complex w) {
  if (a.size() < 2) return 0.0;
  Complex h = 1.0;      // h_0
  Complex w_pow = 1.0;  // w^0
  Complex acc = a[1];
  for (std::size_t s = 2; s < a.size(); ++s) {
    w_pow *= w;
    h = z * h + w_pow;
    acc += a[s] * h;
  }
  return acc;
}

Complex derivative_coeffs(std::span<const Complex> a, Complex z) {
  Complex acc = 0.0;
  for (std::size_t s = a.size(); s-- > 1;) acc = acc * z + static_cast<double>(s) * a[s];
  return acc;
}

Complex horner(std::span<const Complex> a, Complex z) {
  Complex acc = 0.0;
  for (std::size_t s = a.size(); s-- > 0;) acc = acc * z + a[s];
  return acc;
}

Complex divided_diff_raw(std::span<const Complex> a, Complex z, Complex w) {
  if (z == w) return derivative_coeffs(a, z);
  return divided_diff_coeffs(a, z, w);
}

}  // namespace

// --- UniPoly ---------------------------------------------------------------

UniPoly::UniPoly(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  require_finite(coeffs_);
  while (!coeffs_.empty() && coeffs_.back() == Complex{}) coeffs_.pop_back();
}

UniPoly UniPoly::constant(Complex c) { return UniPoly(std::vector<Complex>{c}); }

UniPoly UniPoly::monomial(std::size_t power, Complex c) {
  std::vector<Complex> a(power + 1);
  a[power] = c;
  return UniPoly(std::move(a));
}

Complex UniPoly::operator()(Complex z) const { return horner(coeffs_, z); }

UniPoly UniPoly::derivative() const {
  if (coeffs_.size() < 2) return {};
  std::vector<Complex> d(coeffs_.size() - 1);
  for (std::size_t s = 1; s < coeffs_.size(); ++s) d[s - 1] = static_cast<double>(s) * coeffs_[s];
  return UniPoly(std::move(d));
}

// --- BiPoly ----------------------------------------------------------------

BiPoly::BiPoly(ComplexMatrix coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.rows() == 0 || coeffs_.cols() == 0) {
    throw InvalidInput("coefficient grid must be at least 1x1");
  }
  if (!coeffs_.allFinite()) throw InvalidInput("polynomial has non-finite coefficients");
}

BiPoly BiPoly::constant(Complex c) {
  ComplexMatrix g(1, 1);
  g(0, 0) = c;
  return BiPoly(std::move(g));
}

BiPoly BiPoly::monomial(std::size_t j, std::size_t k, Complex c) {
  ComplexMatrix g = ComplexMatrix::Zero(j + 1, k + 1);
  g(j, k) = c;
  return BiPoly(std::move(g));
}

int BiPoly::degree_first() const {
  for (Eigen::Index j = coeffs_.rows(); j-- > 0;)
    if ((coeffs_.row(j).array() != Complex{}).any()) return static_cast<int>(j);
  return -1;
}

int BiPoly::degree_second() const {
  for (Eigen::Index k = coeffs_.cols(); k-- > 0;)
    if ((coeffs_.col(k).array() != Complex{}).any()) return static_cast<int>(k);
  return -1;
}

int BiPoly::max_degree() const { return std::max(degree_first(), degree_second()); }

Complex BiPoly::coeff(std::size_t j, std::size_t k) const {
  if (j > d1() || k > d2()) return 0.0;
  return coeffs_(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k));
}

Complex BiPoly::operator()(Complex z, Complex w) const {
  // Horner in z over row polynomials in w.
  Complex acc = 0.0;
  for (Eigen::Index j = coeffs_.rows(); j-- > 0;) {
    Complex row = 0.0;
    for (Eigen::Index k = coeffs_.cols(); k-- > 0;) row = row * w + coeffs_(j, k);
    acc = acc * z + row;
  }
  return acc;
}

UniPoly BiPoly::first_variable_slice(std::size_t k) const {
  if (k > d2()) return {};
  const auto col = coeffs_.col(static_cast<Eigen::Index>(k));
  return UniPoly(std::vector<Complex>(col.data(), col.data() + col.size()));
}

UniPoly BiPoly::second_variable_slice(std::size_t j) const {
  if (j > d1()) return {};
  std::vector<Complex> a(coeffs_.cols());
  for (Eigen::Index k = 0; k < coeffs_.cols(); ++k) a[k] = coeffs_(static_cast<Eigen::Index>(j), k);
  return UniPoly(std::move(a));
}

BiPoly BiPoly::shifted(std::size_t a, std::size_t b) const {
  ComplexMatrix g = ComplexMatrix::Zero(coeffs_.rows() + a, coeffs_.cols() + b);
  g.bottomRightCorner(coeffs_.rows(), coeffs_.cols()) = coeffs_;
  return BiPoly(std::move(g));
}

BiPoly BiPoly::scaled(Complex c) const { return BiPoly(coeffs_ * c); }

BiPoly operator+(const BiPoly& a, const BiPoly& b) {
  const auto rows = std::max(a.coeffs().rows(), b.coeffs().rows());
  const auto cols = std::max(a.coeffs().cols(), b.coeffs().cols());
  ComplexMatrix g = ComplexMatrix::Zero(rows, cols);
  g.topLeftCorner(a.coeffs().rows(), a.coeffs().cols()) += a.coeffs();
  g.topLeftCorner(b.coeffs().rows(), b.coeffs().cols()) += b.coeffs();
  return BiPoly(std::move(g));
}

// --- RootsGrid -------------------------------------------------------------

RootsGrid::RootsGrid(std::size_t m) {
  require_m(m);
  points_.reserve(m);
  for (std::size_t t = 0; t < m; ++t) {
    points_.push_back(std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(t) /
                                          static_cast<double>(m)));
  }
}

ComplexMatrix RootsGrid::vandermonde(std::size_t columns) const {
  const std::size_t m = points_.size();
  ComplexMatrix V(m, columns);
  for (std::size_t t = 0; t < m; ++t) {
    // xi_t^j = xi_{(t j) mod m}: exact table lookup instead of repeated products.
    for (std::size_t j = 0; j < columns; ++j) V(t, j) = points_[(t * j) % m];
  }
  return V;
}

// --- free functions --------------------------------------------------------

Complex eval_uni(const UniPoly& phi, Complex z) { return phi(z); }
Complex eval_bi(const BiPoly& f, Complex z, Complex w) { return f(z, w); }

Complex upsilon(std::size_t m, Complex z) {
  require_m(m);
  Complex acc = 0.0;
  for (std::size_t k = 0; k < m; ++k) acc = acc * z + 1.0;
  return acc / static_cast<double>(m);
}

ComplexMatrix upsilon_of(std::size_t m, Complex c, std::span<const ComplexMatrix> powers) {
  require_m(m);
  if (powers.size() < m) throw InvalidInput("upsilon_of needs the powers A^0..A^{m-1}");
  ComplexMatrix acc = powers[0];
  Complex ck = 1.0;
  for (std::size_t k = 1; k < m; ++k) {
    ck *= c;
    acc += ck * powers[k];
  }
  return acc / static_cast<double>(m);
}

Complex quadrature_1d(const UniPoly& f, const UniPoly& g, std::size_t m) {
  require_m(m);
  require_degree_below(f.degree(), m, "quadrature_1d");
  require_degree_below(g.degree(), m, "quadrature_1d");
  const RootsGrid grid(m);
  Complex acc = 0.0;
  for (Complex xi : grid.points()) acc += f(xi) * std::conj(g(xi));
  return acc / static_cast<double>(m);
}

Complex quadrature_2d(const BiPoly& f, const BiPoly& g, std::size_t m) {
  require_m(m);
  require_degree_below(f.max_degree(), m, "quadrature_2d");
  require_degree_below(g.max_degree(), m, "quadrature_2d");
  const RootsGrid grid(m);
  const auto values = [&](const BiPoly& p) -> ComplexMatrix {
    return grid.vandermonde(p.d1() + 1) * p.coeffs() * grid.vandermonde(p.d2() + 1).transpose();
  };
  const ComplexMatrix F = values(f);
  const ComplexMatrix G = values(g);
  return F.cwiseProduct(G.conjugate()).sum() / static_cast<double>(m * m);
}

Complex coefficient_inner(const UniPoly& f, const UniPoly& g) {
  Complex acc = 0.0;
  const std::size_t n = std::min(f.coeffs().size(), g.coeffs().size());
  for (std::size_t s = 0; s < n; ++s) acc += f.coeffs()[s] * std::conj(g.coeffs()[s]);
  return acc;
}

Complex coefficient_inner(const BiPoly& f, const BiPoly& g) {
  const auto rows = std::min(f.coeffs().rows(), g.coeffs().rows());
  const auto cols = std::min(f.coeffs().cols(), g.coeffs().cols());
  Complex acc = 0.0;
  for (Eigen::Index j = 0; j < rows; ++j)
    for (Eigen::Index k = 0; k < cols; ++k) acc += f.coeffs()(j, k) * std::conj(g.coeffs()(j, k));
  return acc;
}

Complex divided_diff(const UniPoly& f, Complex z, Complex w) {
  return divided_diff_raw(f.coeffs(), z, w);
}

Complex divided_diff_1(const BiPoly& f, Complex z1, Complex z2, Complex w) {
  return divided_diff_1_in_last(f, z1, z2)(w);
}

Complex divided_diff_2(const BiPoly& f, Complex z, Complex w1, Complex w2) {
  return divided_diff_2_in_first(f, w1, w2)(z);
}

BiPoly divided_difference_poly(const UniPoly& f) {
  const int d = f.degree();
  if (d < 1) return BiPoly::constant(0.0);
  ComplexMatrix g = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < d; ++j)
    for (int k = 0; j + k < d; ++k) g(j, k) = f.coeff(static_cast<std::size_t>(j + k + 1));
  return BiPoly(std::move(g));
}

UniPoly divided_diff_1_in_last(const BiPoly& f, Complex z1, Complex z2) {
  const auto& c = f.coeffs();
  std::vector<Complex> out(c.cols());
  std::vector<Complex> column(c.rows());
  for (Eigen::Index k = 0; k < c.cols(); ++k) {
    for (Eigen::Index j = 0; j < c.rows(); ++j) column[j] = c(j, k);
    out[k] = divided_diff_raw(column, z1, z2);
  }
  return UniPoly(std::move(out));
}

UniPoly divided_diff_2_in_first(const BiPoly& f, Complex w1, Complex w2) {
  const auto& c = f.coeffs();
  std::vector<Complex> out(c.rows());
  std::vector<Complex> row(c.cols());
  for (Eigen::Index j = 0; j < c.rows(); ++j) {
    for (Eigen::Index k = 0; k < c.cols(); ++k) row[k] = c(j, k);
    out[j] = divided_diff_raw(row, w1, w2);
  }
  return UniPoly(std::move(out));
}

BiPoly interpolate(const ComplexMatrix& values, std::size_t m) {
  require_m(m);
  if (values.rows() != static_cast<Eigen::Index>(m) || values.cols() != static_cast<Eigen::Index>(m)) {
    throw InvalidInput("interpolate: values must be an m x m grid over Pi_m x Pi_m");
  }
  if (!values.allFinite()) throw InvalidInput("interpolate: non-finite values");
  // Upsilon_m(z conj xi)^2 = m^-2 sum_{s=0}^{2m-2} c_s conj(xi)^s z^s with
  // c_s = #{(k, l) : k + l = s, 0 <= k, l < m} = min(s + 1, 2m - 1 - s).
  const std::size_t width = 2 * m - 1;
  const RootsGrid grid(m);
  const ComplexMatrix V = grid.vandermonde(width);  // V(t, s) = xi_t^s
  Eigen::VectorXd c(width);
  for (std::size_t s = 0; s < width; ++s)
    c(s) = static_cast<double>(std::min(s + 1, 2 * m - 1 - s));
  const double m2 = static_cast<double>(m) * static_cast<double>(m);
  ComplexMatrix coeffs = V.adjoint() * values * V.conjugate();
  coeffs = (c.asDiagonal() * coeffs * c.asDiagonal()) / (m2 * m2);
  return BiPoly(std::move(coeffs));
}

ComplexMatrix kernel_matrix(const BiPoly& K, std::size_t m) {
  require_m(m);
  require_degree_below(K.max_degree(), m, "kernel_matrix");
  const RootsGrid grid(m);
  return grid.vandermonde(K.d1() + 1) * K.coeffs() * grid.vandermonde(K.d2() + 1).transpose();
}

ComplexMatrix hankel_matrix(const UniPoly& g) {
  return divided_difference_poly(g).coeffs();
}

UniPoly random_unipoly(std::size_t degree, Rng& rng) {
  std::vector<Complex> a(degree + 1);
  for (auto& z : a) z = rng.unit_box();
  return UniPoly(std::move(a));
}

BiPoly random_bipoly(std::size_t d1, std::size_t d2, Rng& rng) {
  ComplexMatrix g(d1 + 1, d2 + 1);
  for (std::size_t j = 0; j <= d1; ++j)
    for (std::size_t k = 0; k <= d2; ++k) g(j, k) = rng.unit_box();
  return BiPoly(std::move(g));
}

}  // namespace ccalc
