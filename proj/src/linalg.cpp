#include "ccalc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/SVD>

#include "ccalc/error.hpp"
#include "ccalc/random.hpp"

namespace ccalc {

SchattenIndex::SchattenIndex(double p) : p_(p) {
  if (std::isnan(p) || p < 1.0) {
    throw InvalidIndex("Schatten index must satisfy p >= 1, got " + std::to_string(p));
  }
  if (std::isinf(p)) {
    infinite_ = true;
    p_ = std::numeric_limits<double>::infinity();
  }
}

SchattenIndex SchattenIndex::infinity() {
  SchattenIndex p;
  p.p_ = std::numeric_limits<double>::infinity();
  p.infinite_ = true;
  return p;
}

SchattenIndex SchattenIndex::parse(const std::string& token) {
  if (token == "inf" || token == "Inf" || token == "INF" || token == "infinity") {
    return infinity();
  }
  std::size_t used = 0;
  double p = 0.0;
  try {
    p = std::stod(token, &used);
  } catch (const std::exception&) {
    throw InvalidIndex("cannot parse Schatten index '" + token + "'");
  }
  if (used != token.size()) {
    throw InvalidIndex("cannot parse Schatten index '" + token + "'");
  }
  return SchattenIndex(p);
}

std::string SchattenIndex::to_string() const {
  if (infinite_) return "inf";
  std::ostringstream os;
  os << p_;
  return os.str();
}

void require_valid(const ComplexMatrix& A, const char* what) {
  if (A.rows() == 0 || A.cols() == 0) {
    throw InvalidInput(std::string(what) + " is empty");
  }
  if (!A.allFinite()) {
    throw InvalidInput(std::string(what) + " has non-finite entries");
  }
}

void require_square(const ComplexMatrix& A, const char* what) {
  require_valid(A, what);
  if (A.rows() != A.cols()) {
    throw InvalidInput(std::string(what) + " is not square");
  }
}

std::vector<double> singular_values(const ComplexMatrix& A) {
  require_valid(A);
  Eigen::VectorXd s;
  if (std::min(A.rows(), A.cols()) <= 16) {
    s = Eigen::JacobiSVD<ComplexMatrix>(A).singularValues();
  } else {
    s = Eigen::BDCSVD<ComplexMatrix>(A).singularValues();
  }
  std::vector<double> out(s.data(), s.data() + s.size());
  std::sort(out.begin(), out.end(), std::greater<>());
  for (double& v : out) v = std::max(v, 0.0);
  return out;
}

double schatten_norm_from_values(const std::vector<double>& sigma, const SchattenIndex& p) {
  if (sigma.empty()) return 0.0;
  const double top = *std::max_element(sigma.begin(), sigma.end());
  if (p.is_infinite() || top == 0.0) return top;
  // Scale by the largest value so large p cannot overflow.
  double acc = 0.0;
  for (double s : sigma) acc += std::pow(s / top, p.value());
  return top * std::pow(acc, 1.0 / p.value());
}

double schatten_norm(const ComplexMatrix& A, const SchattenIndex& p) {
  return schatten_norm_from_values(singular_values(A), p);
}

double schatten_norm(const ComplexMatrix& A, double p) {
  return schatten_norm(A, SchattenIndex(p));
}

bool is_contraction(const ComplexMatrix& A, double tol) {
  if (!(tol >= 0.0)) throw InvalidInput("tolerance must be nonnegative");
  return singular_values(A).front() <= 1.0 + tol;
}

std::size_t numerical_rank(const ComplexMatrix& A, double tol) {
  if (!(tol > 0.0)) throw InvalidInput("rank tolerance must be positive");
  const auto sigma = singular_values(A);
  const double top = sigma.front();
  if (top == 0.0) return 0;
  return static_cast<std::size_t>(
      std::count_if(sigma.begin(), sigma.end(), [&](double s) { return s > tol * top; }));
}

namespace {

ComplexMatrix gaussian(std::size_t n, std::uint64_t seed) {
  if (n == 0) throw InvalidDimension("dimension must be at least 1");
  Rng rng(seed);
  ComplexMatrix G(n, n);
  // Row-major draw order, independent of the storage order.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) G(i, j) = rng.complex_normal();
  return G;
}

}  // namespace

ComplexMatrix random_contraction(std::size_t n, std::uint64_t seed) {
  ComplexMatrix G = gaussian(n, seed);
  const double top = singular_values(G).front();
  if (top > 1.0) G /= top;
  return G;
}

ComplexMatrix random_unitary(std::size_t n, std::uint64_t seed) {
  const ComplexMatrix G = gaussian(n, seed);
  Eigen::HouseholderQR<ComplexMatrix> qr(G);
  ComplexMatrix Q = qr.householderQ();
  const ComplexMatrix R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t k = 0; k < n; ++k) {
    const Complex d = R(k, k);
    const double a = std::abs(d);
    if (a > 0.0) Q.col(k) *= d / a;
  }
  return Q;
}

ComplexMatrix identity(std::size_t n) {
  if (n == 0) throw InvalidDimension("dimension must be at least 1");
  return ComplexMatrix::Identity(n, n);
}

}  // namespace ccalc
