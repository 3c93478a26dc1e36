#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ccalc/linalg.hpp"
#include "ccalc/poly.hpp"

namespace ccalc {

struct TrialRecord {
  std::uint64_t seed = 0;
  std::size_t m = 0;
  std::size_t dim = 0;
  SchattenIndex p = SchattenIndex::infinity();
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;
};

struct SweepSummary {
  double max_ratio = 0.0;
  std::size_t violations = 0;
  // Ratio above which a trial counts as a violation (1 + slack); empty
  // for measurement-only sweeps.
  std::optional<double> threshold;
};

struct SweepReport {
  std::vector<TrialRecord> trials;
  SweepSummary summary;
};

// Builds the summary of `trials` against `threshold`. Order independent.
SweepReport make_report(std::vector<TrialRecord> trials, std::optional<double> threshold);

// Runs body(i) for i in [0, count) on up to `jobs` threads (0 = hardware
// concurrency). Each index is visited exactly once.
void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body);

// Per-trial seed derived from the sweep seed.
std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial);

// ---------------------------------------------------------------------------
// The p > 2 counterexample on C^m.
//
// C^m is identified with analytic polynomials of degree < m through the
// monomial basis, so h_eta = z^k (eta = exp(2 pi i k / m)) is the k-th
// coordinate vector and g_xi = sqrt(m) Upsilon_m(z conj xi) has
// coordinates conj(xi)^k / sqrt(m). U1 = sum xi P_xi with P_xi the
// projection onto g_xi, V = sum eta Q_eta with Q_eta onto h_eta, and
// U2 = exp(i pi / m) U1. f interpolates sqrt(m) (g_xi, h_eta) on
// Pi_m x Pi_m and 0 on the rest of Pi_2m x Pi_2m.
struct CounterexampleInstance {
  std::size_t m = 0;
  ComplexMatrix U1;
  ComplexMatrix U2;
  ComplexMatrix V;
  BiPoly f;
  ComplexMatrix g_basis;  // column t = g_{xi_t}
  ComplexMatrix h_basis;  // column t = h_{eta_t}
};

// Inner product (x, y) = sum x_k conj(y_k).
Complex inner(const ComplexVector& x, const ComplexVector& y);

CounterexampleInstance build_counterexample(std::size_t m);

// Grid size used for the counterexample's sup norms; aligned so that the
// interpolation nodes are sampled.
double counterexample_sup_norm(const BiPoly& f, std::size_t m);

struct CounterexampleCheck {
  std::size_t m = 0;
  SchattenIndex p = SchattenIndex::infinity();
  double f_u2_norm = 0.0;        // ||f(U2, V)||_inf, claim (a)
  std::size_t rank = 0;          // rank f(U1, V), claim (b)
  double f_u1_norm = 0.0;        // ||f(U1, V)||_{S_p}, claim (c)
  double unitary_gap = 0.0;      // ||U1 - U2||_{S_p}, claim (d)
  double unitary_gap_closed = 0.0;
  double f_sup = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  double ratio = 0.0;            // claim (e): > 1

  TrialRecord record() const;
};

// Verifies all claims; throws ClaimFailure naming the first that fails.
CounterexampleCheck check_counterexample(const CounterexampleInstance& inst, const SchattenIndex& p);

// Checks the structural invariants of an instance (unitarity, the U2/U1
// relation, |(g_xi, h_eta)| = m^{-1/2}, sup f in [1 - 1e-6, 1 + 1e-9]).
void check_instance_invariants(const CounterexampleInstance& inst);

// ---------------------------------------------------------------------------
// Lipschitz estimates for p in [1, 2].

struct PerturbedPairs {
  ComplexMatrix T0, T1, R0, R1;
};

// Random contractions; T1, R1 are either independent draws or perturbations
// of T0, R0 at a random scale in [1e-3, 1].
PerturbedPairs random_perturbed_pairs(std::size_t dim, Rng& rng);

// lhs = ||f(T1,R1) - f(T0,R0)||_{S_p},
// rhs = 2 m ||f||_inf max(||T1 - T0||_{S_p}, ||R1 - R0||_{S_p}).
TrialRecord lipschitz_trial(const BiPoly& f, const PerturbedPairs& ops, std::size_t m,
                            const SchattenIndex& p);

// Throws PreconditionViolation unless 1 <= p <= 2.
SweepReport lipschitz_sweep(std::size_t trials, std::size_t dim, std::size_t m,
                            const SchattenIndex& p, std::uint64_t seed, double slack = 1e-9,
                            std::size_t jobs = 0);

// ratio = ||f(T1,R1) - f(T0,R0)||_{S_p} / (||f||_B max(...)),
// rhs = ||f||_B max(...): an empirical Lipschitz constant.
TrialRecord besov_lipschitz_trial(const BiPoly& f, const PerturbedPairs& ops, std::size_t m,
                                  const SchattenIndex& p);

// Measurement only (no threshold). Trials cycle through m_list.
SweepReport besov_lipschitz_sweep(std::size_t trials, std::size_t dim, const SchattenIndex& p,
                                  std::uint64_t seed,
                                  const std::vector<std::size_t>& m_list = {2, 4, 8, 16},
                                  std::size_t jobs = 0);

// Maximum ratio per m, in ascending m.
std::vector<std::pair<std::size_t, double>> max_ratio_by_m(const SweepReport& report);

// ---------------------------------------------------------------------------
// Derivative along operator paths, checked by central differences.

// t -> (1/2) exp(i theta t) (A + sin(t) B). Contractive for every t when A
// and B are contractions.
struct OperatorPath {
  ComplexMatrix A;
  ComplexMatrix B;
  double theta = 0.0;

  ComplexMatrix value(double t) const;
  ComplexMatrix derivative(double t) const;
};

OperatorPath random_path(std::size_t dim, Rng& rng);

struct DerivativeCheck {
  double derivative_norm = 0.0;   // ||F'(s)||_inf from the finite-sum formula
  double error_coarse = 0.0;      // ||D(h_coarse) - F'(s)||_inf
  double error_fine = 0.0;        // ||D(h_fine) - F'(s)||_inf
  double order = 0.0;             // log(error_coarse / error_fine) / log(h_coarse / h_fine)
  double extrapolated_error = 0.0;  // Richardson-extrapolated difference vs F'(s)
};

// D(h) = (F(s + h) - F(s - h)) / (2h) with F(t) = f(T(t), R(t)).
DerivativeCheck derivative_check(const BiPoly& f, const OperatorPath& T, const OperatorPath& R,
                                 double s, std::size_t m, double h_coarse = 1e-3,
                                 double h_fine = 1e-4);

// ---------------------------------------------------------------------------
// p > 2 blow-up for the shifted polynomial g = z^{4m-2} w^{4m-2} f.

struct BlowupRow {
  std::size_t m = 0;
  SchattenIndex p = SchattenIndex::infinity();
  double lhs = 0.0;          // ||g(U1,V) - g(U2,V)||_{S_p}
  double besov_norm = 0.0;   // ||g||_{B^1_{inf,1}}
  double g_sup = 0.0;        // ||g||_inf
  double unitary_gap = 0.0;  // ||U1 - U2||_{S_p}
  double g_u1_s2 = 0.0;      // ||g(U1,V)||_{S_2}
  double ratio = 0.0;        // lhs / (besov_norm * unitary_gap)
};

BiPoly blowup_polynomial(const CounterexampleInstance& inst);

// Throws PreconditionViolation for any p <= 2.
std::vector<BlowupRow> p_gt_2_blowup_table(const std::vector<std::size_t>& m_list,
                                           const std::vector<SchattenIndex>& p_list);

}  // namespace ccalc
