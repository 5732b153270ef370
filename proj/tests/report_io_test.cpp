#include <gtest/gtest.h>
#include <json.hpp>

#include "nuframe/presets.hpp"
#include "nuframe/report_io.hpp"

using namespace nuframe;

TEST(ReportIo, FrameReportJson) {
  const FrameReport r = parseval_report(indicator_signal(Rational(1, 8), Rational(1, 2)), preset("ex5.2"),
                                        {.grid_log2 = 14});
  const auto doc = nlohmann::json::parse(to_json(r));
  EXPECT_EQ(doc["route"], "parseval");
  EXPECT_EQ(doc["lattice"]["N"], 2);
  EXPECT_EQ(doc["grid"]["b"], "1/2");
  EXPECT_EQ(doc["levels"].size(), 9u);
  EXPECT_EQ(doc["levels"][4]["j"], 0);
  EXPECT_DOUBLE_EQ(doc["levels"][4]["level_sum"].get<double>(), r.levels[4].value);
  EXPECT_TRUE(doc["M"].is_null());
  EXPECT_DOUBLE_EQ(doc["ratio"].get<double>(), r.ratio);
  EXPECT_TRUE(doc["warnings"].empty());
  EXPECT_EQ(to_json(r), to_json(r));
}

TEST(ReportIo, Table) {
  const FrameReport r = parseval_report(indicator_signal(Rational(1, 8), Rational(1, 2)), preset("ex5.2"),
                                        {.j_min = 0, .j_max = 1, .grid_log2 = 14});
  EXPECT_EQ(to_table(r), "ell,j,level_sum\n1,0,0.375\n1,1,0\n");
}

TEST(ReportIo, ConditionReportJson) {
  const ConditionReport r = validate_setup(preset("ex5.2"), {.grid_log2 = 12});
  const auto doc = nlohmann::json::parse(to_json(r));
  EXPECT_TRUE(doc["passed"].get<bool>());
  EXPECT_EQ(doc["checks"][0]["name"], "refinement");
  EXPECT_EQ(doc["filter_sup"].size(), 2u);
  EXPECT_EQ(doc["oep_residual"], 0.0);
}
