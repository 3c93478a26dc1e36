#include <gtest/gtest.h>

#include <atomic>
#include <cmath>
#include <numbers>

#include "ccalc/error.hpp"
#include "ccalc/grid_sup.hpp"
#include "ccalc/verify.hpp"
#include "oracles.hpp"

using namespace ccalc;

namespace {

bool same_records(const SweepReport& a, const SweepReport& b) {
  if (a.trials.size() != b.trials.size()) return false;
  for (std::size_t i = 0; i < a.trials.size(); ++i) {
    const auto &x = a.trials[i], &y = b.trials[i];
    if (x.seed != y.seed || x.m != y.m || x.dim != y.dim || !(x.p == y.p) || x.lhs != y.lhs ||
        x.rhs != y.rhs || x.ratio != y.ratio)
      return false;
  }
  return a.summary.max_ratio == b.summary.max_ratio && a.summary.violations == b.summary.violations;
}

}  // namespace

TEST(MakeReport, CountsViolationsAgainstThreshold) {
  std::vector<TrialRecord> r(3);
  r[0].ratio = 0.5;
  r[1].ratio = 1.0 + 2e-9;
  r[2].ratio = std::nan("");
  const SweepReport rep = make_report(r, 1.0 + 1e-9);
  EXPECT_EQ(rep.summary.violations, 2u);
  EXPECT_EQ(make_report(r, std::nullopt).summary.violations, 0u);
  EXPECT_EQ(make_report({}, 1.0).summary.max_ratio, 0.0);
}

TEST(ParallelFor, CoversEveryIndexAndRethrows) {
  for (std::size_t jobs : {0u, 1u, 3u, 8u}) {
    std::vector<std::atomic<int>> hits(57);
    parallel_for(57, jobs, [&](std::size_t i) { hits[i]++; });
    for (auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
  EXPECT_THROW(parallel_for(10, 2, [](std::size_t i) { if (i == 7) throw InvalidInput("x"); }), InvalidInput);
  parallel_for(0, 4, [](std::size_t) { FAIL(); });
}

TEST(Counterexample, MEqualsOne) {
  const auto inst = build_counterexample(1);
  EXPECT_NEAR(std::abs(inst.U1(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(inst.U2(0, 0) + 1.0), 0.0, 1e-15);
  EXPECT_NEAR(std::abs(inst.V(0, 0) - 1.0), 0.0, 1e-15);
  EXPECT_NO_THROW(check_instance_invariants(inst));
  const auto c = check_counterexample(inst, SchattenIndex(2.0));
  EXPECT_NEAR(c.f_u1_norm, 1.0, 1e-12);
  EXPECT_NEAR(c.unitary_gap, 2.0, 1e-12);
  EXPECT_NEAR(c.ratio, std::numbers::pi / 2.0, 1e-9);
  EXPECT_THROW(build_counterexample(0), InvalidDimension);
}

TEST(Counterexample, InstanceInvariants) {
  for (std::size_t m : {2u, 3u, 5u, 8u}) {
    const auto inst = build_counterexample(m);
    const auto I = ComplexMatrix::Identity(m, m);
    for (const ComplexMatrix* U : {&inst.U1, &inst.U2, &inst.V})
      EXPECT_LE(oracle::operator_norm(U->adjoint() * *U - I), 1e-10);
    EXPECT_LE(oracle::operator_norm(inst.U2 - std::polar(1.0, std::numbers::pi / m) * inst.U1), 1e-12);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        EXPECT_NEAR(std::abs(inst.h_basis.col(b).dot(inst.g_basis.col(a))), 1.0 / std::sqrt(m), 1e-10);
    EXPECT_LE(inst.f.max_degree(), static_cast<int>(4 * m - 2));
  }
}

TEST(Counterexample, InterpolationValuesAndSup) {
  for (std::size_t m : {2u, 4u, 7u}) {
    const auto inst = build_counterexample(m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        const Complex want = std::sqrt(static_cast<double>(m)) * inner(inst.g_basis.col(a), inst.h_basis.col(b));
        EXPECT_LE(std::abs(oracle::eval(inst.f.coeffs(), oracle::root(a, m), oracle::root(b, m)) - want), 1e-10);
      }
    const double sup = counterexample_sup_norm(inst.f, m);
    EXPECT_GE(sup, 1.0 - 1e-6);
    EXPECT_LE(sup, 1.0 + 1e-9);
  }
}

TEST(Counterexample, MatrixEntriesInBases) {
  for (std::size_t m : {3u, 6u}) {
    const auto inst = build_counterexample(m);
    const ComplexMatrix F = oracle::f_of(inst.f.coeffs(), inst.U1, inst.V);
    const ComplexMatrix E = inst.g_basis.adjoint() * F * inst.h_basis;
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) EXPECT_LE(std::abs(E(a, b) - 1.0 / std::sqrt(m)), 1e-10);
    EXPECT_LE(oracle::operator_norm(oracle::f_of(inst.f.coeffs(), inst.U2, inst.V)), 1e-8);
  }
}

TEST(Counterexample, ClaimsForSeveralIndices) {
  const auto inst = build_counterexample(4);
  const auto c = check_counterexample(inst, SchattenIndex::infinity());
  EXPECT_NEAR(c.f_u1_norm, 2.0, 1e-8);
  EXPECT_GT(c.ratio, 1.0);
  EXPECT_EQ(c.rank, 1u);
  for (double p : {2.5, 3.0, 4.0, 8.0}) {
    const auto d = check_counterexample(inst, SchattenIndex(p));
    EXPECT_NEAR(d.unitary_gap, std::abs(1.0 - std::polar(1.0, std::numbers::pi / 4)) * std::pow(4.0, 1.0 / p), 1e-10);
    EXPECT_NEAR(d.f_u1_norm, 2.0, 1e-8);
    EXPECT_GT(d.ratio, 1.0);
    const auto rec = d.record();
    EXPECT_EQ(rec.m, 4u);
    EXPECT_DOUBLE_EQ(rec.ratio, d.ratio);
  }
  const auto e = check_counterexample(build_counterexample(16), SchattenIndex(4.0));
  const double closed = std::pow(16.0, 1.25) / std::numbers::pi;
  EXPECT_GT(e.lhs / e.unitary_gap, closed * e.f_sup);
}

TEST(Counterexample, BrokenInstanceNamesClaim) {
  auto inst = build_counterexample(3);
  inst.U2 = inst.U1;
  try {
    check_counterexample(inst, SchattenIndex::infinity());
    FAIL() << "expected a claim failure";
  } catch (const ClaimFailure& e) {
    EXPECT_NE(std::string(e.what()).find("U2"), std::string::npos);
  }
}

TEST(Lipschitz, TrivialCases) {
  Rng rng(1);
  const PerturbedPairs ops = random_perturbed_pairs(4, rng);
  const auto c = lipschitz_trial(BiPoly::constant(2.0), ops, 3, SchattenIndex(2.0));
  EXPECT_LE(c.lhs, 1e-14);
  EXPECT_LE(c.ratio, 1e-14);
  PerturbedPairs same = ops;
  same.T1 = same.T0;
  same.R1 = same.R0;
  const auto d = lipschitz_trial(random_bipoly(3, 3, rng), same, 3, SchattenIndex(1.0));
  EXPECT_EQ(d.lhs, 0.0);
  EXPECT_EQ(d.ratio, 0.0);
}

TEST(Lipschitz, PerturbedPairsAreContractions) {
  Rng rng(2);
  for (int i = 0; i < 50; ++i) {
    const auto ops = random_perturbed_pairs(5, rng);
    for (const ComplexMatrix* M : {&ops.T0, &ops.T1, &ops.R0, &ops.R1})
      EXPECT_LE(oracle::operator_norm(*M), 1.0 + 1e-12);
  }
}

TEST(Lipschitz, SweepHasNoViolations) {
  const auto rep = lipschitz_sweep(500, 8, 4, SchattenIndex(2.0), 7, 1e-9);
  EXPECT_EQ(rep.trials.size(), 500u);
  EXPECT_EQ(rep.summary.violations, 0u);
  EXPECT_LE(rep.summary.max_ratio, 1.0 + 1e-9);
  ASSERT_TRUE(rep.summary.threshold.has_value());
  for (const auto& t : rep.trials) EXPECT_EQ(t.dim, 8u);
}

TEST(Lipschitz, RejectsIndicesAboveTwo) {
  EXPECT_THROW(lipschitz_sweep(1, 4, 2, SchattenIndex(2.5), 1), PreconditionViolation);
  EXPECT_THROW(lipschitz_sweep(1, 4, 2, SchattenIndex::infinity(), 1), PreconditionViolation);
  EXPECT_THROW(besov_lipschitz_sweep(1, 4, SchattenIndex(3.0), 1), PreconditionViolation);
}

TEST(Lipschitz, DeterministicAcrossJobCounts) {
  const auto a = lipschitz_sweep(40, 6, 3, SchattenIndex(1.5), 99, 1e-9, 1);
  const auto b = lipschitz_sweep(40, 6, 3, SchattenIndex(1.5), 99, 1e-9, 4);
  EXPECT_TRUE(same_records(a, b));
  const auto c = lipschitz_sweep(40, 6, 3, SchattenIndex(1.5), 100, 1e-9, 1);
  EXPECT_FALSE(same_records(a, c));
}

TEST(BesovSweep, ConstantAndHomogeneity) {
  Rng rng(3);
  const auto ops = random_perturbed_pairs(5, rng);
  EXPECT_LE(besov_lipschitz_trial(BiPoly::constant(1.0), ops, 2, SchattenIndex(2.0)).ratio, 1e-14);
  const BiPoly f = random_bipoly(6, 6, rng);
  const double r1 = besov_lipschitz_trial(f, ops, 6, SchattenIndex(1.5)).ratio;
  const double r2 = besov_lipschitz_trial(f.scaled(Complex(-3.0, 4.0)), ops, 6, SchattenIndex(1.5)).ratio;
  EXPECT_NEAR(r1, r2, 1e-12 * r1);
}

TEST(BesovSweep, ConstantsFiniteAndBounded) {
  const auto rep = besov_lipschitz_sweep(200, 8, SchattenIndex(2.0), 5, {2, 4, 8, 16});
  EXPECT_FALSE(rep.summary.threshold.has_value());
  const auto by_m = max_ratio_by_m(rep);
  ASSERT_EQ(by_m.size(), 4u);
  for (const auto& [m, r] : by_m) {
    EXPECT_TRUE(std::isfinite(r));
    // The B-norm dominates the sup norm, so the 2m sup-norm bound caps the ratio.
    EXPECT_LE(r, 2.0 * m);
  }
}

TEST(Derivative, PathAndDerivativeConsistent) {
  Rng rng(4);
  const OperatorPath P = random_path(4, rng);
  for (double t : {-0.7, 0.0, 1.3}) {
    EXPECT_LE(oracle::operator_norm(P.value(t)), 1.0 + 1e-12);
    const double h = 1e-5;
    const ComplexMatrix fd = (P.value(t + h) - P.value(t - h)) / (2 * h);
    EXPECT_LE(oracle::operator_norm(fd - P.derivative(t)), 1e-8);
  }
}

TEST(Derivative, SecondOrderConvergence) {
  Rng rng(5);
  for (int i = 0; i < 5; ++i) {
    const BiPoly f = random_bipoly(4, 4, rng);
    const OperatorPath T = random_path(6, rng), R = random_path(6, rng);
    const auto c = derivative_check(f, T, R, rng.uniform(-1, 1), 4);
    EXPECT_NEAR(c.order, 2.0, 0.2);
    EXPECT_LE(c.extrapolated_error, 1e-6);
    EXPECT_LT(c.error_fine, c.error_coarse);
  }
}

TEST(Blowup, TableBasics) {
  EXPECT_THROW(p_gt_2_blowup_table({4}, {SchattenIndex(2.0)}), PreconditionViolation);
  const auto rows = p_gt_2_blowup_table({4, 8}, {SchattenIndex(4.0), SchattenIndex::infinity()});
  ASSERT_EQ(rows.size(), 4u);
  for (const auto& r : rows) {
    EXPECT_NEAR(r.g_u1_s2, std::sqrt(static_cast<double>(r.m)), 1e-8 * std::sqrt(r.m));
    EXPECT_GT(r.besov_norm, r.g_sup);
    EXPECT_GT(r.ratio, 0.0);
  }
  EXPECT_NEAR(rows[0].unitary_gap, std::abs(1.0 - std::polar(1.0, std::numbers::pi / 4)) * std::pow(4.0, 0.25), 1e-12);
  EXPECT_LT(rows[0].ratio, rows[2].ratio);
  EXPECT_LT(rows[1].ratio, rows[3].ratio);
}

TEST(Blowup, PolynomialIsShiftedCopy) {
  const auto inst = build_counterexample(3);
  const BiPoly g = blowup_polynomial(inst);
  EXPECT_EQ(g.coeff(10, 10), inst.f.coeff(0, 0));
  EXPECT_NEAR(sup_norm(g, 6), sup_norm(inst.f, 6), 1e-12);
}
