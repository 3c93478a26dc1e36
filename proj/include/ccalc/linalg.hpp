#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ccalc {

using Complex = std::complex<double>;

// Dense complex matrix, column-major (Eigen). Every operator in the library
// is one of these; the library rejects empty or non-finite matrices at its
// boundaries rather than encoding the invariant in the type.
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// p in [1, inf]. p = inf is the operator norm.
class SchattenIndex {
 public:
  explicit SchattenIndex(double p);

  static SchattenIndex infinity();
  // Accepts a decimal number or "inf".
  static SchattenIndex parse(const std::string& token);

  bool is_infinite() const { return infinite_; }
  // Only meaningful when !is_infinite().
  double value() const { return p_; }
  // 1/p, with 1/inf = 0.
  double reciprocal() const { return infinite_ ? 0.0 : 1.0 / p_; }

  std::string to_string() const;

  friend bool operator==(const SchattenIndex&, const SchattenIndex&) = default;

 private:
  SchattenIndex() = default;
  double p_ = 1.0;
  bool infinite_ = false;
};

// Throws InvalidInput if A is empty or has a NaN/Inf entry.
void require_valid(const ComplexMatrix& A, const char* what = "matrix");
void require_square(const ComplexMatrix& A, const char* what = "matrix");

// min(rows, cols) singular values, nonincreasing.
std::vector<double> singular_values(const ComplexMatrix& A);

double schatten_norm(const ComplexMatrix& A, const SchattenIndex& p);
// Same as above; the index is validated on the way in.
double schatten_norm(const ComplexMatrix& A, double p);
// Schatten norm of an already computed singular-value list.
double schatten_norm_from_values(const std::vector<double>& sigma, const SchattenIndex& p);

bool is_contraction(const ComplexMatrix& A, double tol);

// Number of singular values > tol * sigma_max; 0 for the zero matrix.
std::size_t numerical_rank(const ComplexMatrix& A, double tol);

// i.i.d. complex standard normal entries scaled by 1/max(1, sigma_max).
ComplexMatrix random_contraction(std::size_t n, std::uint64_t seed);

// Q factor of a complex Gaussian matrix with the phases of R's diagonal
// moved into Q, which makes the factorization unique.
ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed);

ComplexMatrix identity(std::size_t n);

}  // namespace ccalc
