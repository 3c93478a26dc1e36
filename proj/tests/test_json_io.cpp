#include <gtest/gtest.h>

#include <limits>
#include <sstream>

#include "ccalc/error.hpp"
#include "ccalc/json_io.hpp"

using namespace ccalc;
using nlohmann::json;

TEST(MatrixJson, RoundTripIsExact) {
  const ComplexMatrix A = random_contraction(5, 3);
  const json j = matrix_to_json(A);
  EXPECT_EQ(j["rows"], 5);
  EXPECT_EQ(j["cols"], 5);
  EXPECT_EQ(j["entries"].size(), 25u);
  const ComplexMatrix B = matrix_from_json(json::parse(j.dump()));
  EXPECT_TRUE(A == B);
}

TEST(MatrixJson, RowMajorLayout) {
  ComplexMatrix A(2, 3);
  A << Complex(1, 2), 3, 4, 5, 6, Complex(7, -8);
  const json j = matrix_to_json(A);
  EXPECT_EQ(j["entries"][1], json::array({3.0, 0.0}));
  EXPECT_EQ(j["entries"][5], json::array({7.0, -8.0}));
}

TEST(MatrixJson, RejectsMalformed) {
  EXPECT_THROW(matrix_from_json(json::parse(R"({"rows":1,"cols":2,"entries":[[1,0]]})")), InvalidInput);
  EXPECT_THROW(matrix_from_json(json::parse(R"({"rows":1,"cols":1,"entries":[[1]]})")), InvalidInput);
  EXPECT_THROW(matrix_from_json(json::parse(R"({"rows":0,"cols":1,"entries":[]})")), InvalidInput);
  EXPECT_THROW(matrix_from_json(json::parse(R"([1,2])")), InvalidInput);
  EXPECT_THROW(matrix_from_json(json::parse(R"({"cols":1,"entries":[[1,0]]})")), InvalidInput);
}

TEST(BiPolyJson, RoundTripAndLayout) {
  ComplexMatrix c(2, 3);
  c << 1, Complex(0, 1), 2, 3, 4, Complex(5, -5);
  const BiPoly f(c);
  const json j = bipoly_to_json(f);
  EXPECT_EQ(j["d1"], 1);
  EXPECT_EQ(j["d2"], 2);
  EXPECT_EQ(j["coeffs"][0][1], json::array({0.0, 1.0}));
  EXPECT_EQ(j["coeffs"][1][2], json::array({5.0, -5.0}));
  EXPECT_TRUE(bipoly_from_json(json::parse(j.dump())).coeffs() == c);
}

TEST(BiPolyJson, RejectsMalformed) {
  EXPECT_THROW(bipoly_from_json(json::parse(R"({"d1":1,"d2":0,"coeffs":[[[1,0]]]})")), InvalidInput);
  EXPECT_THROW(bipoly_from_json(json::parse(R"({"d1":0,"d2":1,"coeffs":[[[1,0]]]})")), InvalidInput);
  EXPECT_THROW(bipoly_from_json(json::parse(R"({"d1":-1,"d2":0,"coeffs":[]})")), InvalidInput);
  EXPECT_THROW(bipoly_from_json(json::parse(R"("x")")), InvalidInput);
}

TEST(ReportJson, SummaryAndNonFinite) {
  TrialRecord a{11, 4, 8, SchattenIndex(2.0), 0.5, 1.0, 0.5};
  TrialRecord b{12, 4, 8, SchattenIndex::infinity(), 1.0, 0.0, std::numeric_limits<double>::infinity()};
  const SweepReport rep = make_report({a, b}, 1.0 + 1e-9);
  const json j = report_to_json(rep);
  EXPECT_EQ(j["summary"]["trials"], 2);
  EXPECT_EQ(j["summary"]["violations"], 1);
  EXPECT_EQ(j["trials"][1]["p"], "inf");
  EXPECT_EQ(j["trials"][1]["ratio"], "inf");
  EXPECT_EQ(j["trials"][0]["p"], 2.0);
  EXPECT_TRUE(report_to_json(make_report({a}, std::nullopt))["summary"]["threshold"].is_null());
}

TEST(ReportCsv, HeaderAndRows) {
  TrialRecord a{11, 4, 8, SchattenIndex(1.5), 0.25, 1.0, 0.25};
  const std::string csv = report_to_csv(make_report({a}, std::nullopt));
  std::istringstream is(csv);
  std::string header, row, extra;
  std::getline(is, header);
  std::getline(is, row);
  EXPECT_EQ(header, "seed,m,dim,p,lhs,rhs,ratio");
  EXPECT_EQ(row.substr(0, 12), "11,4,8,1.5,0");
  EXPECT_FALSE(std::getline(is, extra) && !extra.empty());
}
