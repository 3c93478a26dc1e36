#include "ccalc/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "ccalc/besov.hpp"
#include "ccalc/error.hpp"
#include "ccalc/funcalc.hpp"
#include "ccalc/grid_sup.hpp"
#include "ccalc/json_io.hpp"
#include "ccalc/verify.hpp"

namespace ccalc::cli {

namespace {

using nlohmann::json;

constexpr const char* kSeedEnv = "CONTRACTION_CALC_SEED";

struct RunConfig {
  std::size_t m = 4;
  std::size_t dim = 8;
  std::size_t trials = 20;
  std::uint64_t seed = 1;
  std::string p = "2";
  double tol = 1e-8;
  std::string format = "json";
  std::string output;
  std::size_t jobs = 0;
  bool deterministic = false;
  std::string input;
  std::string fixtures;
  std::vector<std::size_t> m_list;
  std::vector<std::string> p_list;
};

struct Outcome {
  json report;
  bool pass = true;
  std::optional<SweepReport> table;  // CSV source, when the command has one
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void add_format_options(CLI::App* sub, RunConfig& cfg, bool csv) {
  if (csv) {
    sub->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json", "csv"}));
  } else {
    sub->add_option("--format", cfg.format, "Report format")->check(CLI::IsMember({"json"}));
  }
  sub->add_option("--output", cfg.output, "Write the report to this file instead of stdout");
  sub->add_flag("--deterministic", cfg.deterministic, "Suppress the timestamp field");
}

void add_m(CLI::App* sub, RunConfig& cfg, const char* help) {
  sub->add_option("--m", cfg.m, help)->check(CLI::Range(1, 128));
}
void add_dim(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--dim", cfg.dim, "Matrix dimension")->check(CLI::Range(1, 64));
}
void add_trials(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--trials", cfg.trials, "Number of random trials")->check(CLI::Range(1, 100000));
}
void add_seed(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--seed", cfg.seed, std::string("Base seed (overridden by ") + kSeedEnv + ")");
}
void add_jobs(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--jobs", cfg.jobs, "Worker threads (0 = available parallelism)");
}
void add_p(CLI::App* sub, RunConfig& cfg, const char* help) {
  sub->add_option("--p", cfg.p, help);
}

SchattenIndex parse_index(const std::string& token) {
  try {
    return SchattenIndex::parse(token);
  } catch (const InvalidIndex& e) {
    throw UsageError(e.what());
  }
}

json base_config(const RunConfig& c) {
  return {{"m", c.m}, {"dim", c.dim}, {"trials", c.trials}, {"seed", c.seed}, {"tol", c.tol}};
}

// --- commands ----------------------------------------------------------------

struct IdentityCheck {
  std::string name;
  double max_error = 0.0;
  double tolerance = 0.0;
};

Outcome cmd_verify_identities(const RunConfig& c) {
  const std::size_t m = c.m;
  std::vector<IdentityCheck> checks = {
      {"quadrature_1d", 0.0, 1e-12},       {"quadrature_2d", 0.0, 1e-12},
      {"upsilon_partition", 0.0, 1e-12},   {"kernel_norm", 0.0, 1e-10},
      {"first_difference", 0.0, c.tol},    {"second_difference", 0.0, c.tol},
      {"full_difference", 0.0, c.tol},
  };
  std::vector<std::array<double, 7>> per_trial(c.trials);
  parallel_for(c.trials, c.jobs, [&](std::size_t i) {
    Rng rng(trial_seed(c.seed, i));
    auto& e = per_trial[i];
    const auto f1 = random_unipoly(m - 1, rng), g1 = random_unipoly(m - 1, rng);
    e[0] = std::abs(quadrature_1d(f1, g1, m) - coefficient_inner(f1, g1));
    const auto f2 = random_bipoly(m - 1, m - 1, rng), g2 = random_bipoly(m - 1, m - 1, rng);
    e[1] = std::abs(quadrature_2d(f2, g2, m) - coefficient_inner(f2, g2));
    const RootsGrid grid(m);
    const Complex zeta = rng.unimodular();
    double s = 0.0;
    for (Complex xi : grid.points()) s += std::norm(upsilon(m, zeta * std::conj(xi)));
    e[2] = std::abs(s - 1.0);
    const double kn = schatten_norm(kernel_matrix(f2, m), SchattenIndex::infinity());
    const double cn = static_cast<double>(m) * schatten_norm(f2.coeffs(), SchattenIndex::infinity());
    e[3] = std::abs(kn - cn) / cn;

    const BiPoly f = random_bipoly(m, m, rng);
    const PerturbedPairs ops = random_perturbed_pairs(c.dim, rng);
    const auto inf = SchattenIndex::infinity();
    const ContractionPair p00(ops.T0, ops.R0), p01(ops.T0, ops.R1), p11(ops.T1, ops.R1);
    const ComplexMatrix F00 = f_of_pair(f, p00), F01 = f_of_pair(f, p01), F11 = f_of_pair(f, p11);
    const auto rel = [&](const ComplexMatrix& sum, const ComplexMatrix& direct) {
      return schatten_norm(sum - direct, inf) / (1.0 + schatten_norm(direct, inf));
    };
    e[4] = rel(diff_first(f, ops.T0, ops.T1, ops.R1, m), F11 - F01);
    e[5] = rel(diff_second(f, ops.T0, ops.R0, ops.R1, m), F01 - F00);
    e[6] = rel(full_difference(f, p00, p11, m), F11 - F00);
  });
  for (const auto& e : per_trial)
    for (std::size_t k = 0; k < checks.size(); ++k) checks[k].max_error = std::max(checks[k].max_error, e[k]);

  Outcome out;
  json list = json::array();
  for (const auto& ch : checks) {
    const bool ok = ch.max_error <= ch.tolerance;
    out.pass = out.pass && ok;
    list.push_back({{"name", ch.name}, {"max_error", ch.max_error}, {"tolerance", ch.tolerance}, {"pass", ok}});
  }
  out.report = {{"checks", std::move(list)}};
  return out;
}

Outcome cmd_lipschitz_sweep(const RunConfig& c) {
  const SchattenIndex p = parse_index(c.p);
  Outcome out;
  SweepReport report = lipschitz_sweep(c.trials, c.dim, c.m, p, c.seed, c.tol, c.jobs);
  out.pass = report.summary.violations == 0;
  out.report = report_to_json(report);
  out.table = std::move(report);
  return out;
}

Outcome cmd_besov_sweep(const RunConfig& c) {
  const SchattenIndex p = parse_index(c.p);
  const std::vector<std::size_t> m_list = c.m_list.empty() ? std::vector<std::size_t>{2, 4, 8, 16} : c.m_list;
  SweepReport report = besov_lipschitz_sweep(c.trials, c.dim, p, c.seed, m_list, c.jobs);
  Outcome out;
  out.report = report_to_json(report);
  json by_m = json::array();
  for (const auto& [m, r] : max_ratio_by_m(report)) {
    by_m.push_back({{"m", m}, {"max_constant", r}});
    out.pass = out.pass && std::isfinite(r);
  }
  out.report["summary"]["max_constant_by_m"] = std::move(by_m);
  out.table = std::move(report);
  return out;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write " + path.string());
  f << j.dump(2) << '\n';
}

Outcome cmd_counterexample(const RunConfig& c) {
  const SchattenIndex p = parse_index(c.p);
  const CounterexampleInstance inst = build_counterexample(c.m);
  if (!c.fixtures.empty()) {
    const std::filesystem::path dir(c.fixtures);
    std::filesystem::create_directories(dir);
    write_json_file(dir / "U1.json", matrix_to_json(inst.U1));
    write_json_file(dir / "U2.json", matrix_to_json(inst.U2));
    write_json_file(dir / "V.json", matrix_to_json(inst.V));
    write_json_file(dir / "f.json", bipoly_to_json(inst.f));
  }
  const CounterexampleCheck chk = check_counterexample(inst, p);
  Outcome out;
  out.report = {{"m", chk.m},
                {"p", index_to_json(chk.p)},
                {"f_u2_norm", chk.f_u2_norm},
                {"rank_f_u1", chk.rank},
                {"f_u1_norm", chk.f_u1_norm},
                {"unitary_gap", chk.unitary_gap},
                {"unitary_gap_closed_form", chk.unitary_gap_closed},
                {"f_sup", chk.f_sup},
                {"lhs", chk.lhs},
                {"rhs", chk.rhs},
                {"ratio", chk.ratio}};
  out.pass = chk.ratio > 1.0;
  out.table = make_report({chk.record()}, std::nullopt);
  return out;
}

Outcome cmd_blowup_table(const RunConfig& c) {
  const std::vector<std::size_t> m_list = c.m_list.empty() ? std::vector<std::size_t>{4, 8, 16, 32} : c.m_list;
  for (std::size_t m : m_list) {
    if (m < 1 || m > 64) throw UsageError("blow-up table supports 1 <= m <= 64");
  }
  std::vector<SchattenIndex> p_list;
  for (const auto& tok : c.p_list.empty() ? std::vector<std::string>{"4", "inf"} : c.p_list)
    p_list.push_back(parse_index(tok));

  const auto rows = p_gt_2_blowup_table(m_list, p_list);
  Outcome out;
  json list = json::array();
  std::vector<TrialRecord> records;
  for (const auto& r : rows) {
    list.push_back({{"m", r.m},
                    {"p", index_to_json(r.p)},
                    {"lhs", r.lhs},
                    {"besov_norm", r.besov_norm},
                    {"g_sup", r.g_sup},
                    {"unitary_gap", r.unitary_gap},
                    {"g_u1_s2", r.g_u1_s2},
                    {"ratio", r.ratio}});
    const double root_m = std::sqrt(static_cast<double>(r.m));
    out.pass = out.pass && std::abs(r.g_u1_s2 - root_m) <= 1e-8 * root_m;
    records.push_back({0, r.m, r.m, r.p, r.lhs, r.besov_norm * r.unitary_gap, r.ratio});
  }
  // Ratios must increase strictly along m_list for each p.
  json monotone = json::array();
  for (const auto& p : p_list) {
    bool increasing = true;
    double prev = -1.0;
    for (const auto& r : rows) {
      if (!(r.p == p)) continue;
      increasing = increasing && r.ratio > prev;
      prev = r.ratio;
    }
    monotone.push_back({{"p", index_to_json(p)}, {"strictly_increasing", increasing}});
    out.pass = out.pass && increasing;
  }
  out.report = {{"rows", std::move(list)}, {"monotone", std::move(monotone)}};
  out.table = make_report(std::move(records), std::nullopt);
  return out;
}

Outcome cmd_besov_norm(const RunConfig& c) {
  json input;
  try {
    if (c.input == "-") {
      input = json::parse(std::cin);
    } else {
      std::ifstream f(c.input);
      if (!f) throw UsageError("cannot read " + c.input);
      input = json::parse(f);
    }
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("malformed polynomial JSON: ") + e.what());
  }
  const BiPoly f = bipoly_from_json(input);
  Outcome out;
  json blocks = json::array();
  for (const auto& b : besov_block_norms(f)) blocks.push_back({{"n", b.n}, {"sup_norm", b.sup_norm}});
  out.report = {{"besov_norm", besov_norm_1_inf_1(f)},
                {"projective_bound", projective_bound(f)},
                {"sup_norm", sup_norm(f)},
                {"blocks", std::move(blocks)}};
  return out;
}

Outcome cmd_derivative_check(const RunConfig& c) {
  std::vector<DerivativeCheck> results(c.trials);
  parallel_for(c.trials, c.jobs, [&](std::size_t i) {
    Rng rng(trial_seed(c.seed, i));
    const BiPoly f = random_bipoly(c.m, c.m, rng);
    const OperatorPath T = random_path(c.dim, rng);
    const OperatorPath R = random_path(c.dim, rng);
    const double s = rng.uniform(-1.0, 1.0);
    results[i] = derivative_check(f, T, R, s, c.m);
  });
  Outcome out;
  json list = json::array();
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    const bool ok = std::abs(r.order - 2.0) <= 0.2 && r.extrapolated_error <= 1e-6;
    out.pass = out.pass && ok;
    list.push_back({{"trial", i},
                    {"seed", trial_seed(c.seed, i)},
                    {"derivative_norm", r.derivative_norm},
                    {"error_coarse", r.error_coarse},
                    {"error_fine", r.error_fine},
                    {"order", r.order},
                    {"extrapolated_error", r.extrapolated_error},
                    {"pass", ok}});
  }
  out.report = {{"trials", std::move(list)}};
  return out;
}

std::string timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Functions of noncommuting contractions: finite-sum identities, Schatten-norm "
               "Lipschitz estimates and the p > 2 counterexample."};
  app.name(args.empty() ? "ccalc" : args.front());
  app.require_subcommand(1);

  struct Command {
    std::string name;
    CLI::App* app;
    RunConfig cfg;
    Outcome (*handler)(const RunConfig&);
  };
  std::vector<std::unique_ptr<Command>> commands;
  auto add = [&](const std::string& name, const std::string& help, Outcome (*handler)(const RunConfig&)) {
    auto cmd = std::make_unique<Command>();
    cmd->name = name;
    cmd->app = app.add_subcommand(name, help);
    cmd->handler = handler;
    commands.push_back(std::move(cmd));
    return commands.back().get();
  };

  {
    auto* c = add("verify-identities", "Check quadrature, kernel and operator-difference identities",
                  cmd_verify_identities);
    add_m(c->app, c->cfg, "Grid size m (polynomial degree <= m)");
    add_dim(c->app, c->cfg);
    add_trials(c->app, c->cfg);
    add_seed(c->app, c->cfg);
    add_jobs(c->app, c->cfg);
    c->app->add_option("--tol", c->cfg.tol, "Relative tolerance for operator identities");
    add_format_options(c->app, c->cfg, false);
  }
  {
    auto* c = add("lipschitz-sweep", "Sweep the S_p Lipschitz bound 2m||f||_inf for p in [1, 2]",
                  cmd_lipschitz_sweep);
    c->cfg.trials = 100;
    c->cfg.tol = 1e-9;
    add_m(c->app, c->cfg, "Polynomial degree m");
    add_dim(c->app, c->cfg);
    add_trials(c->app, c->cfg);
    add_seed(c->app, c->cfg);
    add_jobs(c->app, c->cfg);
    add_p(c->app, c->cfg, "Schatten index in [1, 2]");
    c->app->add_option("--tol", c->cfg.tol, "Slack: a trial violates when ratio > 1 + tol");
    add_format_options(c->app, c->cfg, true);
  }
  {
    auto* c = add("besov-sweep", "Measure empirical constants against the B^1_{inf,1} norm",
                  cmd_besov_sweep);
    c->cfg.trials = 100;
    add_dim(c->app, c->cfg);
    add_trials(c->app, c->cfg);
    add_seed(c->app, c->cfg);
    add_jobs(c->app, c->cfg);
    add_p(c->app, c->cfg, "Schatten index in [1, 2]");
    c->app->add_option("--m-list", c->cfg.m_list, "Degrees to cycle through")
        ->delimiter(',')
        ->check(CLI::Range(1, 128));
    add_format_options(c->app, c->cfg, true);
  }
  {
    auto* c = add("counterexample", "Build and check the p > 2 counterexample", cmd_counterexample);
    c->cfg.m = 8;
    c->cfg.p = "inf";
    add_m(c->app, c->cfg, "Dimension m of the construction");
    add_p(c->app, c->cfg, "Schatten index (decimal or inf)");
    c->app->add_option("--fixtures", c->cfg.fixtures, "Directory for U1/U2/V/f JSON fixtures");
    add_format_options(c->app, c->cfg, true);
  }
  {
    auto* c = add("blowup-table", "Besov-normalized ratios for p > 2 over a list of m", cmd_blowup_table);
    c->app->add_option("--m-list", c->cfg.m_list, "Values of m (default 4,8,16,32)")->delimiter(',');
    c->app->add_option("--p-list", c->cfg.p_list, "Schatten indices > 2 (default 4,inf)")->delimiter(',');
    add_format_options(c->app, c->cfg, true);
  }
  {
    auto* c = add("besov-norm", "Besov norm, projective bound and block sup norms of a polynomial",
                  cmd_besov_norm);
    c->app->add_option("--input", c->cfg.input, "Polynomial JSON file ('-' for stdin)")->required();
    add_format_options(c->app, c->cfg, false);
  }
  {
    auto* c = add("derivative-check", "Compare the path-derivative formula with central differences",
                  cmd_derivative_check);
    add_m(c->app, c->cfg, "Polynomial degree m");
    add_dim(c->app, c->cfg);
    add_trials(c->app, c->cfg);
    add_seed(c->app, c->cfg);
    add_jobs(c->app, c->cfg);
    add_format_options(c->app, c->cfg, false);
  }

  if (args.size() <= 1) {
    err << app.help();
    return kUsageError;
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kPass;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kPass;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n\n" << app.help();
    return kUsageError;
  }

  Command* chosen = nullptr;
  for (auto& cmd : commands)
    if (cmd->app->parsed()) chosen = cmd.get();
  RunConfig cfg = chosen->cfg;

  if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      cfg.seed = std::stoull(env, &used);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
    } catch (const std::exception&) {
      err << kSeedEnv << " must be an unsigned integer\n";
      return kUsageError;
    }
  }

  json doc = {{"command", chosen->name}};
  Outcome outcome;
  int code = kPass;
  try {
    outcome = chosen->handler(cfg);
    code = outcome.pass ? kPass : kAssertionFailure;
  } catch (const UsageError& e) {
    err << e.what() << '\n';
    return kUsageError;
  } catch (const ClaimFailure& e) {
    outcome.report = {{"error", e.what()}};
    outcome.pass = false;
    outcome.table.reset();
    code = kAssertionFailure;
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kUsageError;
  }

  std::string text;
  if (cfg.format == "csv" && outcome.table) {
    text = report_to_csv(*outcome.table);
  } else {
    json config = base_config(cfg);
    config["p"] = cfg.p;
    doc["config"] = std::move(config);
    doc["status"] = outcome.pass ? "pass" : "fail";
    doc["report"] = std::move(outcome.report);
    if (!cfg.deterministic) doc["generated_at"] = timestamp();
    text = doc.dump(2) + "\n";
  }

  if (cfg.output.empty()) {
    out << text;
  } else {
    std::ofstream f(cfg.output);
    if (!f) {
      err << "cannot write " << cfg.output << '\n';
      return kUsageError;
    }
    f << text;
  }
  return code;
}

}  // namespace ccalc::cli
