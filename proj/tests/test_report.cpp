#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <string>

#include "fplap/report.hpp"

using namespace fplap;
using report::Json;

TEST(FormatDouble, SeventeenDigits) {
  EXPECT_EQ(report::format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(report::format_double(3.0), "3");
  EXPECT_EQ(report::format_double(INFINITY), "inf");
  EXPECT_EQ(report::format_double(-INFINITY), "-inf");
  EXPECT_EQ(report::format_double(NAN), "nan");
}

TEST(Dump, SortedKeysAndRoundTrip) {
  Json j;
  j["zeta"] = 1;
  j["alpha"] = 0.1;
  j["mid"] = Json::array({1.5, "x", true, nullptr});
  j["nested"] = {{"b", 2.0}, {"a", std::nan("")}};
  const std::string text = report::dump(j);
  EXPECT_EQ(text.back(), '\n');
  EXPECT_LT(text.find("\"alpha\""), text.find("\"mid\""));
  EXPECT_LT(text.find("\"mid\""), text.find("\"nested\""));
  EXPECT_LT(text.find("\"nested\""), text.find("\"zeta\""));
  EXPECT_NE(text.find("0.10000000000000001"), std::string::npos);
  EXPECT_NE(text.find("\"a\": null"), std::string::npos);

  const Json parsed = Json::parse(text);
  EXPECT_EQ(parsed["alpha"].get<double>(), 0.1);
  EXPECT_EQ(report::dump(parsed), text);
}

TEST(Dump, DoublesRoundTripBitExactly) {
  for (double v : {std::numbers::pi, 1e-300, -2.5e17, 1.0 / 3.0, 6.02214076e23}) {
    const Json parsed = Json::parse(report::dump(Json{{"v", v}}));
    EXPECT_EQ(parsed["v"].get<double>(), v);
  }
}

TEST(Dump, Deterministic) {
  const IdentityReport r = identity_residual(0.5, 3.0, {});
  EXPECT_EQ(report::dump(report::to_json(r)), report::dump(report::to_json(r)));
}

TEST(Document, HasFourSections) {
  const Json doc = report::document(Params(1, 0.5, 2.0), quad::QuadConfig{}, Json::array(), Json::object());
  for (const char* key : {"config", "params", "rows", "summary"}) EXPECT_TRUE(doc.contains(key)) << key;
  EXPECT_EQ(doc["params"]["p"].get<double>(), 2.0);
  EXPECT_EQ(doc["params"]["n"].get<int>(), 1);
}

TEST(ToJson, EvalResultTerms) {
  EvalResult r;
  r.value = 1.5;
  r.err_est = 1e-10;
  r.n_evals = 42;
  r.terms = {{"inner", 1.0}, {"tail", 0.5}};
  const Json j = report::to_json(r);
  EXPECT_EQ(j["value"].get<double>(), 1.5);
  EXPECT_EQ(j["n_evals"].get<long>(), 42);
  EXPECT_EQ(j["terms"]["tail"].get<double>(), 0.5);
}

TEST(ToJson, LspInfinityBecomesNull) {
  LspResult r;
  r.value = INFINITY;
  const std::string text = report::dump(report::to_json(r));
  EXPECT_NE(text.find("\"value\": null"), std::string::npos);
}

TEST(Csv, HeaderOnlyForEmptySweep) {
  EXPECT_EQ(report::sweep_csv({}), "x,value,err_est,n_evals,status\n");
}

TEST(Csv, SweepRow) {
  SweepRow row;
  row.x = 0.5;
  row.value = 2.0;
  row.err_est = 1e-12;
  row.n_evals = 7;
  EXPECT_EQ(report::sweep_csv({row}), "x,value,err_est,n_evals,status\n0.5,2,9.9999999999999998e-13,7,ok\n");
}

TEST(Csv, QuotesSpecialFields) {
  const std::string text = report::csv({"a", "b"}, {{"plain", "with,comma"}, {"say \"hi\"", "two\nlines"}});
  EXPECT_EQ(text, "a,b\nplain,\"with,comma\"\n\"say \"\"hi\"\"\",\"two\nlines\"\n");
}
