#pragma once

#include <json.hpp>

#include "ccalc/linalg.hpp"
#include "ccalc/poly.hpp"
#include "ccalc/verify.hpp"

namespace ccalc {

// {rows, cols, entries: [[re, im], ...]} with entries row-major.
nlohmann::json matrix_to_json(const ComplexMatrix& A);
ComplexMatrix matrix_from_json(const nlohmann::json& j);

// {d1, d2, coeffs: [[[re, im], ...], ...]}, row = first-variable power.
nlohmann::json bipoly_to_json(const BiPoly& f);
BiPoly bipoly_from_json(const nlohmann::json& j);

// p as a number, or the string "inf".
nlohmann::json index_to_json(const SchattenIndex& p);

nlohmann::json record_to_json(const TrialRecord& r);
nlohmann::json report_to_json(const SweepReport& report);

// Header `seed,m,dim,p,lhs,rhs,ratio`, one row per trial.
std::string report_to_csv(const SweepReport& report);

}  // namespace ccalc
