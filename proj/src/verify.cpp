#include "ccalc/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <sstream>
#include <thread>

#include "ccalc/besov.hpp"
#include "ccalc/error.hpp"
#include "ccalc/funcalc.hpp"
#include "ccalc/grid_sup.hpp"

namespace ccalc {

namespace {

double ratio_of(double lhs, double rhs) {
  if (rhs > 0.0) return lhs / rhs;
  return lhs == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
}

double max_abs_deviation_from_identity(const ComplexMatrix& U) {
  const ComplexMatrix D = U.adjoint() * U - ComplexMatrix::Identity(U.rows(), U.cols());
  return D.cwiseAbs().maxCoeff();
}

ComplexMatrix renormalize(const ComplexMatrix& A) {
  const double top = singular_values(A).front();
  return top > 1.0 ? ComplexMatrix(A / top) : A;
}

void require_lipschitz_range(const SchattenIndex& p) {
  if (p.is_infinite() || p.value() > 2.0) {
    throw PreconditionViolation("the Lipschitz estimate is claimed only for 1 <= p <= 2, got p = " +
                                p.to_string());
  }
}

[[noreturn]] void fail_claim(const std::string& claim, std::size_t m, const SchattenIndex& p,
                             double value) {
  std::ostringstream os;
  os.precision(17);
  os << "counterexample claim failed: " << claim << " (m = " << m << ", p = " << p.to_string()
     << ", value = " << value << ")";
  throw ClaimFailure(os.str());
}

}  // namespace

SweepReport make_report(std::vector<TrialRecord> trials, std::optional<double> threshold) {
  SweepReport r;
  r.summary.threshold = threshold;
  for (const auto& t : trials) {
    r.summary.max_ratio = std::max(r.summary.max_ratio, t.ratio);
    if (threshold && !(t.ratio <= *threshold)) ++r.summary.violations;
  }
  r.trials = std::move(trials);
  return r;
}

void parallel_for(std::size_t count, std::size_t jobs, const std::function<void(std::size_t)>& body) {
  if (jobs == 0) jobs = std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min(jobs, count);
  if (jobs <= 1) {
    for (std::size_t i = 0; i < count; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> workers;
  workers.reserve(jobs);
  for (std::size_t w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          body(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : workers) t.join();
  if (error) std::rethrow_exception(error);
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t trial) { return mix_seed(seed, trial); }

// --- counterexample --------------------------------------------------------

Complex inner(const ComplexVector& x, const ComplexVector& y) { return y.dot(x); }

CounterexampleInstance build_counterexample(std::size_t m) {
  if (m == 0) throw InvalidDimension("counterexample needs m >= 1");
  const RootsGrid grid(m);
  const double sqrt_m = std::sqrt(static_cast<double>(m));

  CounterexampleInstance inst;
  inst.m = m;
  // g_basis(k, t) = conj(xi_t)^k / sqrt(m)
  inst.g_basis = grid.vandermonde(m).adjoint() / sqrt_m;
  inst.h_basis = ComplexMatrix::Identity(m, m);

  ComplexVector xi(m);
  for (std::size_t t = 0; t < m; ++t) xi(t) = grid[t];
  inst.U1 = inst.g_basis * xi.asDiagonal() * inst.g_basis.adjoint();
  inst.U2 = std::polar(1.0, std::numbers::pi / static_cast<double>(m)) * inst.U1;
  inst.V = ComplexMatrix(xi.asDiagonal());

  // Pi_m sits at the even positions of Pi_2m.
  ComplexMatrix values = ComplexMatrix::Zero(2 * m, 2 * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      values(2 * a, 2 * b) = sqrt_m * inner(inst.g_basis.col(a), inst.h_basis.col(b));
  inst.f = interpolate(values, 2 * m);
  return inst;
}

double counterexample_sup_norm(const BiPoly& f, std::size_t m) { return sup_norm(f, 2 * m); }

void check_instance_invariants(const CounterexampleInstance& inst) {
  const std::size_t m = inst.m;
  const auto p = SchattenIndex::infinity();
  if (max_abs_deviation_from_identity(inst.U1) > 1e-10) fail_claim("U1 unitary", m, p, 0);
  if (max_abs_deviation_from_identity(inst.U2) > 1e-10) fail_claim("U2 unitary", m, p, 0);
  if (max_abs_deviation_from_identity(inst.V) > 1e-10) fail_claim("V unitary", m, p, 0);
  const Complex phase = std::polar(1.0, std::numbers::pi / static_cast<double>(m));
  const double rel = (inst.U2 - phase * inst.U1).cwiseAbs().maxCoeff();
  if (rel > 1e-10) fail_claim("U2 = exp(i pi/m) U1", m, p, rel);
  const double target = 1.0 / std::sqrt(static_cast<double>(m));
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = 0; b < m; ++b) {
      const double v = std::abs(inner(inst.g_basis.col(a), inst.h_basis.col(b)));
      if (std::abs(v - target) > 1e-10) fail_claim("|(g_xi, h_eta)| = m^-1/2", m, p, v);
    }
  }
  if (inst.f.degree_first() > static_cast<int>(4 * m - 2) ||
      inst.f.degree_second() > static_cast<int>(4 * m - 2)) {
    fail_claim("deg f <= 4m - 2", m, p, inst.f.max_degree());
  }
  const double sup = counterexample_sup_norm(inst.f, m);
  if (sup < 1.0 - 1e-6 || sup > 1.0 + 1e-9) fail_claim("||f||_inf = 1", m, p, sup);
}

TrialRecord CounterexampleCheck::record() const {
  TrialRecord r;
  r.m = m;
  r.dim = m;
  r.p = p;
  r.lhs = lhs;
  r.rhs = rhs;
  r.ratio = ratio;
  return r;
}

CounterexampleCheck check_counterexample(const CounterexampleInstance& inst, const SchattenIndex& p) {
  check_instance_invariants(inst);
  const std::size_t m = inst.m;
  const double md = static_cast<double>(m);
  const ContractionPair pair1(inst.U1, inst.V);
  const ContractionPair pair2(inst.U2, inst.V);
  const ComplexMatrix F1 = f_of_pair(inst.f, pair1);
  const ComplexMatrix F2 = f_of_pair(inst.f, pair2);

  CounterexampleCheck c;
  c.m = m;
  c.p = p;

  c.f_u2_norm = schatten_norm(F2, SchattenIndex::infinity());
  if (c.f_u2_norm > 1e-8) fail_claim("(a) f(U2, V) = 0", m, p, c.f_u2_norm);

  c.rank = numerical_rank(F1, 1e-8);
  if (c.rank != 1) fail_claim("(b) rank f(U1, V) = 1", m, p, static_cast<double>(c.rank));

  c.f_u1_norm = schatten_norm(F1, p);
  if (std::abs(c.f_u1_norm - std::sqrt(md)) > 1e-8 * std::sqrt(md)) {
    fail_claim("(c) ||f(U1, V)||_{S_p} = sqrt(m)", m, p, c.f_u1_norm);
  }

  c.unitary_gap = schatten_norm(inst.U1 - inst.U2, p);
  c.unitary_gap_closed = std::abs(1.0 - std::polar(1.0, std::numbers::pi / md)) * std::pow(md, p.reciprocal());
  if (std::abs(c.unitary_gap - c.unitary_gap_closed) > 1e-10 * std::max(1.0, c.unitary_gap_closed)) {
    fail_claim("(d) ||U1 - U2||_{S_p} = |1 - exp(i pi/m)| m^{1/p}", m, p, c.unitary_gap);
  }

  c.f_sup = counterexample_sup_norm(inst.f, m);
  c.lhs = schatten_norm(F1 - F2, p);
  c.rhs = std::pow(md, 1.5 - p.reciprocal()) / std::numbers::pi * c.f_sup * c.unitary_gap;
  c.ratio = ratio_of(c.lhs, c.rhs);
  if (!(c.ratio > 1.0)) fail_claim("(e) lhs > pi^-1 m^{3/2-1/p} ||f||_inf ||U1 - U2||_{S_p}", m, p, c.ratio);
  return c;
}

// --- Lipschitz sweeps ------------------------------------------------------

PerturbedPairs random_perturbed_pairs(std::size_t dim, Rng& rng) {
  PerturbedPairs ops;
  ops.T0 = random_contraction(dim, rng.next_u64());
  ops.R0 = random_contraction(dim, rng.next_u64());
  auto partner = [&](const ComplexMatrix& base) -> ComplexMatrix {
    const ComplexMatrix other = random_contraction(dim, rng.next_u64());
    if (rng.uniform() < 0.5) return other;
    const double eps = std::pow(10.0, -3.0 * rng.uniform());
    return renormalize(base + eps * other);
  };
  ops.T1 = partner(ops.T0);
  ops.R1 = partner(ops.R0);
  return ops;
}

namespace {

struct DifferenceTerms {
  double lhs;
  double perturbation;
};

DifferenceTerms difference_terms(const BiPoly& f, const PerturbedPairs& ops, const SchattenIndex& p) {
  const ContractionPair pair0(ops.T0, ops.R0);
  const ContractionPair pair1(ops.T1, ops.R1);
  const ComplexMatrix diff = f_of_pair(f, pair1) - f_of_pair(f, pair0);
  const double dT = schatten_norm(ops.T1 - ops.T0, p);
  const double dR = schatten_norm(ops.R1 - ops.R0, p);
  return {schatten_norm(diff, p), std::max(dT, dR)};
}

}  // namespace

TrialRecord lipschitz_trial(const BiPoly& f, const PerturbedPairs& ops, std::size_t m,
                            const SchattenIndex& p) {
  const auto terms = difference_terms(f, ops, p);
  TrialRecord r;
  r.m = m;
  r.dim = static_cast<std::size_t>(ops.T0.rows());
  r.p = p;
  r.lhs = terms.lhs;
  r.rhs = 2.0 * static_cast<double>(m) * sup_norm(f) * terms.perturbation;
  r.ratio = ratio_of(r.lhs, r.rhs);
  return r;
}

SweepReport lipschitz_sweep(std::size_t trials, std::size_t dim, std::size_t m, const SchattenIndex& p,
                            std::uint64_t seed, double slack, std::size_t jobs) {
  require_lipschitz_range(p);
  if (dim == 0) throw InvalidDimension("dim must be at least 1");
  if (m == 0) throw InvalidInput("m must be at least 1");
  std::vector<TrialRecord> records(trials);
  parallel_for(trials, jobs, [&](std::size_t i) {
    const std::uint64_t s = trial_seed(seed, i);
    Rng rng(s);
    const BiPoly f = random_bipoly(m, m, rng);
    const PerturbedPairs ops = random_perturbed_pairs(dim, rng);
    records[i] = lipschitz_trial(f, ops, m, p);
    records[i].seed = s;
  });
  return make_report(std::move(records), 1.0 + slack);
}

TrialRecord besov_lipschitz_trial(const BiPoly& f, const PerturbedPairs& ops, std::size_t m,
                                  const SchattenIndex& p) {
  const auto terms = difference_terms(f, ops, p);
  TrialRecord r;
  r.m = m;
  r.dim = static_cast<std::size_t>(ops.T0.rows());
  r.p = p;
  r.lhs = terms.lhs;
  r.rhs = besov_norm_1_inf_1(f) * terms.perturbation;
  r.ratio = ratio_of(r.lhs, r.rhs);
  return r;
}

SweepReport besov_lipschitz_sweep(std::size_t trials, std::size_t dim, const SchattenIndex& p,
                                  std::uint64_t seed, const std::vector<std::size_t>& m_list,
                                  std::size_t jobs) {
  require_lipschitz_range(p);
  if (dim == 0) throw InvalidDimension("dim must be at least 1");
  if (m_list.empty()) throw InvalidInput("m_list must not be empty");
  std::vector<TrialRecord> records(trials);
  parallel_for(trials, jobs, [&](std::size_t i) {
    const std::uint64_t s = trial_seed(seed, i);
    const std::size_t m = m_list[i % m_list.size()];
    Rng rng(s);
    const BiPoly f = random_bipoly(m, m, rng);
    const PerturbedPairs ops = random_perturbed_pairs(dim, rng);
    records[i] = besov_lipschitz_trial(f, ops, m, p);
    records[i].seed = s;
  });
  return make_report(std::move(records), std::nullopt);
}

std::vector<std::pair<std::size_t, double>> max_ratio_by_m(const SweepReport& report) {
  std::map<std::size_t, double> by_m;
  for (const auto& t : report.trials) {
    auto [it, inserted] = by_m.try_emplace(t.m, t.ratio);
    if (!inserted) it->second = std::max(it->second, t.ratio);
  }
  return {by_m.begin(), by_m.end()};
}

// --- derivative along paths -----------------------------------------------

ComplexMatrix OperatorPath::value(double t) const {
  return 0.5 * std::polar(1.0, theta * t) * (A + std::sin(t) * B);
}

ComplexMatrix OperatorPath::derivative(double t) const {
  const Complex phase = std::polar(1.0, theta * t);
  return 0.5 * phase * (Complex(0.0, theta) * (A + std::sin(t) * B) + std::cos(t) * B);
}

OperatorPath random_path(std::size_t dim, Rng& rng) {
  OperatorPath path;
  path.A = random_contraction(dim, rng.next_u64());
  path.B = random_contraction(dim, rng.next_u64());
  path.theta = rng.uniform(-2.0, 2.0);
  return path;
}

DerivativeCheck derivative_check(const BiPoly& f, const OperatorPath& T, const OperatorPath& R,
                                 double s, std::size_t m, double h_coarse, double h_fine) {
  const auto F = [&](double t) { return f_of_pair(f, ContractionPair(T.value(t), R.value(t))); };
  const auto central = [&](double h) -> ComplexMatrix { return (F(s + h) - F(s - h)) / (2.0 * h); };
  const PathSample at{T.value(s), T.derivative(s), R.value(s), R.derivative(s)};
  const ComplexMatrix exact = path_derivative(f, at, m);
  const ComplexMatrix coarse = central(h_coarse);
  const ComplexMatrix fine = central(h_fine);
  const double r2 = (h_coarse / h_fine) * (h_coarse / h_fine);
  const ComplexMatrix extrapolated = (r2 * fine - coarse) / (r2 - 1.0);

  const auto inf = SchattenIndex::infinity();
  DerivativeCheck c;
  c.derivative_norm = schatten_norm(exact, inf);
  c.error_coarse = schatten_norm(coarse - exact, inf);
  c.error_fine = schatten_norm(fine - exact, inf);
  c.order = std::log(c.error_coarse / c.error_fine) / std::log(h_coarse / h_fine);
  c.extrapolated_error = schatten_norm(extrapolated - exact, inf);
  return c;
}

// --- blow-up ---------------------------------------------------------------

BiPoly blowup_polynomial(const CounterexampleInstance& inst) {
  const std::size_t shift = 4 * inst.m - 2;
  return inst.f.shifted(shift, shift);
}

std::vector<BlowupRow> p_gt_2_blowup_table(const std::vector<std::size_t>& m_list,
                                           const std::vector<SchattenIndex>& p_list) {
  for (const auto& p : p_list) {
    if (!p.is_infinite() && p.value() <= 2.0) {
      throw PreconditionViolation("the blow-up table is defined for p > 2, got p = " + p.to_string());
    }
  }
  std::vector<BlowupRow> rows;
  for (std::size_t m : m_list) {
    const CounterexampleInstance inst = build_counterexample(m);
    const BiPoly g = blowup_polynomial(inst);
    const ComplexMatrix G1 = f_of_pair(g, ContractionPair(inst.U1, inst.V));
    const ComplexMatrix G2 = f_of_pair(g, ContractionPair(inst.U2, inst.V));
    const double besov = besov_norm_1_inf_1(g);
    const double g_sup = counterexample_sup_norm(g, m);
    const double g_s2 = schatten_norm(G1, SchattenIndex(2.0));
    const auto sigma_diff = singular_values(G1 - G2);
    const auto sigma_gap = singular_values(inst.U1 - inst.U2);
    for (const auto& p : p_list) {
      BlowupRow row;
      row.m = m;
      row.p = p;
      row.lhs = schatten_norm_from_values(sigma_diff, p);
      row.besov_norm = besov;
      row.g_sup = g_sup;
      row.unitary_gap = schatten_norm_from_values(sigma_gap, p);
      row.g_u1_s2 = g_s2;
      row.ratio = ratio_of(row.lhs, besov * row.unitary_gap);
      rows.push_back(row);
    }
  }
  return rows;
}

}  // namespace ccalc
