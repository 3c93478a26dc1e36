#pragma once

#include <cstddef>
#include <variant>
#include <vector>

#include "ccalc/besov.hpp"
#include "ccalc/linalg.hpp"
#include "ccalc/poly.hpp"

namespace ccalc {

// Two square contractions of the same size. They need not commute.
class ContractionPair {
 public:
  static constexpr double kTolerance = 1e-10;

  ContractionPair(ComplexMatrix T, ComplexMatrix R);

  const ComplexMatrix& T() const { return T_; }
  const ComplexMatrix& R() const { return R_; }
  std::size_t dim() const { return static_cast<std::size_t>(T_.rows()); }

 private:
  ComplexMatrix T_;
  ComplexMatrix R_;
};

// A^0, A^1, ..., A^count-1, each computed from the previous one.
std::vector<ComplexMatrix> matrix_powers(const ComplexMatrix& A, std::size_t count);

// sum_s a_s T^s.
ComplexMatrix poly_calc(const UniPoly& phi, const ComplexMatrix& T);

// f(T, R) = sum_{j,k} f^(j,k) T^j R^k. Powers of T always stand to the
// left of powers of R; for noncommuting T and R this is part of the
// definition, not a convention that can be flipped.
ComplexMatrix f_of_pair(const BiPoly& f, const ContractionPair& pair);
// Block-wise: sum_n f_n(T, R).
ComplexMatrix f_of_pair(const LPDecomposition<BiPoly>& f, const ContractionPair& pair);

// sum_{j in F1} sum_{k in F2} alpha_j(T1) X beta_k(T2) Y gamma_jk(T3)
struct FirstKindSum {
  std::vector<UniPoly> alpha;               // |F1|
  std::vector<UniPoly> beta;                // |F2|
  std::vector<std::vector<UniPoly>> gamma;  // |F1| x |F2|
};

// sum_{j in F1} sum_{k in F2} alpha_jk(T1) X beta_j(T2) Y gamma_k(T3)
struct SecondKindSum {
  std::vector<std::vector<UniPoly>> alpha;  // |F1| x |F2|
  std::vector<UniPoly> beta;                // |F1|
  std::vector<UniPoly> gamma;               // |F2|
};

using FiniteTripleSum = std::variant<FirstKindSum, SecondKindSum>;

ComplexMatrix triple_sum(const FiniteTripleSum& ts, const ComplexMatrix& T1,
                         const ComplexMatrix& T2, const ComplexMatrix& T3,
                         const ComplexMatrix& X, const ComplexMatrix& Y);

// Product of the three family norms that bounds ||triple_sum||_{S_r}
// by bound * ||X||_{S_p} ||Y||_{S_q}: for the first kind
//   sup (sum_j |alpha_j|^2)^{1/2} * sup (sum_k |beta_k|^2)^{1/2}
//     * sup ||{gamma_jk}||_B,
// and the analogous product for the second kind. Sups are taken over an
// oversampled grid on T.
double triple_sum_bound(const FiniteTripleSum& ts);

// sum_{xi,eta in Pi_m} Upsilon_m(conj(xi) T1) (T1 - T0) Upsilon_m(conj(eta) T0)
//                      (d^[1] f)(xi, eta, R1)
// which equals f(T1, R1) - f(T0, R1) whenever deg f <= m in each variable.
ComplexMatrix diff_first(const BiPoly& f, const ComplexMatrix& T0, const ComplexMatrix& T1,
                         const ComplexMatrix& R1, std::size_t m);

// sum_{xi,eta in Pi_m} (d^[2] f)(T0, xi, eta) Upsilon_m(conj(xi) R1) (R1 - R0)
//                      Upsilon_m(conj(eta) R0)
// which equals f(T0, R1) - f(T0, R0).
ComplexMatrix diff_second(const BiPoly& f, const ComplexMatrix& T0, const ComplexMatrix& R0,
                          const ComplexMatrix& R1, std::size_t m);

// diff_first + diff_second, telescoping through (T0, R1):
// f(T1, R1) - f(T0, R0).
ComplexMatrix full_difference(const BiPoly& f, const ContractionPair& pair0,
                              const ContractionPair& pair1, std::size_t m);

// T(s), T'(s), R(s), R'(s) at one point of a pair of operator paths.
struct PathSample {
  ComplexMatrix T;
  ComplexMatrix dT;
  ComplexMatrix R;
  ComplexMatrix dR;
};

// d/ds f(T(s), R(s)) from the finite-sum formula.
ComplexMatrix path_derivative(const BiPoly& f, const PathSample& at, std::size_t m);

}  // namespace ccalc
