#include "ccalc/json_io.hpp"

#include <cmath>
#include <sstream>

#include "ccalc/error.hpp"

namespace ccalc {

using nlohmann::json;

namespace {

json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

Complex complex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw InvalidInput("complex entry must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

std::size_t positive_count(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_integer()) {
    throw InvalidInput(std::string("missing integer field '") + key + "'");
  }
  const auto v = j[key].get<long long>();
  if (v < 0) throw InvalidInput(std::string("field '") + key + "' must be nonnegative");
  return static_cast<std::size_t>(v);
}

std::string format_double(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

}  // namespace

json matrix_to_json(const ComplexMatrix& A) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < A.rows(); ++i)
    for (Eigen::Index k = 0; k < A.cols(); ++k) entries.push_back(complex_to_json(A(i, k)));
  return {{"rows", A.rows()}, {"cols", A.cols()}, {"entries", std::move(entries)}};
}

ComplexMatrix matrix_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("matrix must be a JSON object");
  const std::size_t rows = positive_count(j, "rows");
  const std::size_t cols = positive_count(j, "cols");
  if (rows == 0 || cols == 0) throw InvalidInput("matrix must have rows >= 1 and cols >= 1");
  if (!j.contains("entries") || !j["entries"].is_array() || j["entries"].size() != rows * cols) {
    throw InvalidInput("matrix entries must be an array of rows * cols [re, im] pairs");
  }
  ComplexMatrix A(rows, cols);
  const auto& e = j["entries"];
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k) A(i, k) = complex_from_json(e[i * cols + k]);
  require_valid(A);
  return A;
}

json bipoly_to_json(const BiPoly& f) {
  json rows = json::array();
  const auto& c = f.coeffs();
  for (Eigen::Index j = 0; j < c.rows(); ++j) {
    json row = json::array();
    for (Eigen::Index k = 0; k < c.cols(); ++k) row.push_back(complex_to_json(c(j, k)));
    rows.push_back(std::move(row));
  }
  return {{"d1", f.d1()}, {"d2", f.d2()}, {"coeffs", std::move(rows)}};
}

BiPoly bipoly_from_json(const json& j) {
  if (!j.is_object()) throw InvalidInput("polynomial must be a JSON object");
  const std::size_t d1 = positive_count(j, "d1");
  const std::size_t d2 = positive_count(j, "d2");
  if (!j.contains("coeffs") || !j["coeffs"].is_array() || j["coeffs"].size() != d1 + 1) {
    throw InvalidInput("coeffs must have d1 + 1 rows");
  }
  ComplexMatrix c(d1 + 1, d2 + 1);
  for (std::size_t r = 0; r <= d1; ++r) {
    const auto& row = j["coeffs"][r];
    if (!row.is_array() || row.size() != d2 + 1) throw InvalidInput("every coeffs row must have d2 + 1 entries");
    for (std::size_t k = 0; k <= d2; ++k) c(r, k) = complex_from_json(row[k]);
  }
  return BiPoly(std::move(c));
}

json index_to_json(const SchattenIndex& p) {
  if (p.is_infinite()) return "inf";
  return p.value();
}

namespace {

json finite_or_string(double x) {
  if (std::isfinite(x)) return x;
  return format_double(x);
}

}  // namespace

json record_to_json(const TrialRecord& r) {
  return {{"seed", r.seed},          {"m", r.m},
          {"dim", r.dim},            {"p", index_to_json(r.p)},
          {"lhs", finite_or_string(r.lhs)}, {"rhs", finite_or_string(r.rhs)},
          {"ratio", finite_or_string(r.ratio)}};
}

json report_to_json(const SweepReport& report) {
  json trials = json::array();
  for (const auto& t : report.trials) trials.push_back(record_to_json(t));
  json summary = {{"trials", report.trials.size()},
                  {"max_ratio", finite_or_string(report.summary.max_ratio)},
                  {"violations", report.summary.violations}};
  summary["threshold"] = report.summary.threshold ? json(*report.summary.threshold) : json(nullptr);
  return {{"trials", std::move(trials)}, {"summary", std::move(summary)}};
}

std::string report_to_csv(const SweepReport& report) {
  std::ostringstream os;
  os << "seed,m,dim,p,lhs,rhs,ratio\n";
  for (const auto& t : report.trials) {
    os << t.seed << ',' << t.m << ',' << t.dim << ',' << t.p.to_string() << ',' << format_double(t.lhs)
       << ',' << format_double(t.rhs) << ',' << format_double(t.ratio) << '\n';
  }
  return os.str();
}

}  // namespace ccalc
