#include <gtest/gtest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "radex/coverage.hpp"
#include "radex/error.hpp"
#include "support/oracles.hpp"

namespace radex {
namespace {

TEST(Coverage, SingleMidlineCurveCoversOneRow) {
  const CoverageMap map = coverage_of(make_plan(ImageDims(16), {5.0}, {0.0}));
  EXPECT_EQ(map.covered, 16u);
  EXPECT_DOUBLE_EQ(map.fraction, 1.0 / 16.0);
  for (std::size_t c = 0; c < 16; ++c) EXPECT_TRUE(map.is_visited(8, c));
}

TEST(Coverage, EmptyCurvatureListCoversNothing) {
  const CoverageMap map = coverage_of(make_plan(ImageDims(16), {0.0, 8.0}, {}));
  EXPECT_EQ(map.fraction, 0.0);
}

TEST(Coverage, DefaultPlanAt224IsNearlyComplete) {
  EXPECT_GE(coverage_of(build_plan({.size = 224})).fraction, 0.985);
}

TEST(Coverage, MatchesOracleAndSaturatesTinyFrame) {
  std::vector<double> qs, cs;
  for (int i = 0; i <= 8; ++i) qs.push_back(0.5 * i);
  for (int i = -100; i <= 100; ++i) cs.push_back(0.05 * i);
  const TransformPlan plan = make_plan(ImageDims(4), qs, cs);
  const CoverageMap map = coverage_of(plan);

  std::vector<std::uint8_t> expected(16, 0);
  for (double c : cs) {
    for (double q : qs) {
      for (std::int64_t p = 0; p < 4; ++p) {
        expected[static_cast<std::size_t>(oracle::curve_row(static_cast<double>(p), q, c, 4) * 4 + p)] = 1;
      }
    }
  }
  EXPECT_EQ(map.visited, expected);
  EXPECT_EQ(map.fraction, 1.0);
}

TEST(Coverage, MonotoneUnderCurveInclusion) {
  std::mt19937_64 rng(5);
  const TransformPlan full = build_plan({.size = 64, .m_divisions = 10});
  std::vector<double> cs;
  double previous = 0.0;
  std::vector<double> pool = full.c_values;
  std::shuffle(pool.begin(), pool.end(), rng);
  for (double c : pool) {
    cs.insert(std::upper_bound(cs.begin(), cs.end(), c), c);
    const double f = coverage_of(make_plan(full.dims, full.q_values, cs)).fraction;
    ASSERT_GE(f, previous);
    previous = f;
  }
  EXPECT_EQ(previous, coverage_of(full).fraction);
}

TEST(Coverage, WorkerInvariant) {
  const TransformPlan plan = build_plan({.size = 128});
  const CoverageMap a = coverage_of(plan, 1);
  for (unsigned w : {2u, 5u, 8u}) {
    const CoverageMap b = coverage_of(plan, w);
    EXPECT_EQ(a.visited, b.visited);
    EXPECT_EQ(a.fraction, b.fraction);
  }
}

TEST(CoverageImage, WhiteWhereCovered) {
  const CoverageMap map = coverage_of(make_plan(ImageDims(8), {4.0}, {0.0}));
  const ImageGrid img = coverage_image(map);
  EXPECT_EQ(img.at(4, 0), 1.0);
  EXPECT_EQ(img.at(3, 0), 0.0);
}

// --- sweep -----------------------------------------------------------------

bool nested(const std::vector<double>& small, const std::vector<double>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

TEST(CoverageSweep, SpecialCountAxis) {
  std::vector<PlanConfig> configs;
  for (std::int64_t count : {128, 256, 512}) configs.push_back({.size = 512, .special_c_count = count});
  const auto rows = coverage_sweep(configs);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) ASSERT_FALSE(r.error) << *r.error;

  std::vector<std::vector<double>> sets;
  for (const auto& c : configs) sets.push_back(build_plan(c).c_values);
  if (nested(sets[0], sets[1]) && nested(sets[1], sets[2])) {
    EXPECT_LE(rows[0].fraction, rows[1].fraction);
    EXPECT_LE(rows[1].fraction, rows[2].fraction);
  }
  EXPECT_GE(rows[1].fraction, 0.985);
  EXPECT_LT(rows[0].curve_count, rows[1].curve_count);
  EXPECT_LT(rows[1].curve_count, rows[2].curve_count);
}

TEST(CoverageSweep, StepAxis) {
  std::vector<PlanConfig> configs;
  for (std::int64_t d : {25, 50, 100}) configs.push_back({.size = 512, .m_divisions = d});
  const auto rows = coverage_sweep(configs);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_DOUBLE_EQ(rows[0].delta_q, 512.0 / 25);
  EXPECT_DOUBLE_EQ(rows[1].delta_q, 512.0 / 50);
  EXPECT_DOUBLE_EQ(rows[2].delta_q, 512.0 / 100);
}

TEST(CoverageSweep, SingleConfigMatchesCoverageOf) {
  const PlanConfig config{.size = 224};
  const auto rows = coverage_sweep({config});
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].fraction, coverage_of(build_plan(config)).fraction);
  EXPECT_EQ(rows[0].curve_count, build_plan(config).curve_count());
}

TEST(CoverageSweep, FailedConfigIsRecordedNotFatal) {
  PlanConfig bad{.size = 64};
  bad.c_range_step = 0.0;
  const auto rows = coverage_sweep({{.size = 64}, bad, {.size = 32}});
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_FALSE(rows[0].error);
  ASSERT_TRUE(rows[1].error);
  EXPECT_NE(rows[1].error->find("InvalidConfig"), std::string::npos);
  EXPECT_FALSE(rows[2].error);
  EXPECT_THROW(coverage_sweep({}), Error);
}

TEST(CoverageSweep, CsvLayout) {
  PlanConfig bad{.size = 64};
  bad.c_range_step = -1.0;
  const auto rows = coverage_sweep({{.size = 32, .m_divisions = 10}, bad});
  std::ostringstream out;
  write_sweep_csv(out, rows);
  std::istringstream in(out.str());
  std::string header, first, second, extra;
  std::getline(in, header);
  std::getline(in, first);
  std::getline(in, second);
  EXPECT_FALSE(std::getline(in, extra));
  EXPECT_EQ(header, "M,m_divisions,special_c_count,c_low,c_high,c_step,curve_count,fraction,wall_ms");
  EXPECT_EQ(first.rfind("32,10,16,-1,1,0.10000000000000001,", 0), 0u) << first;
  EXPECT_EQ(std::count(first.begin(), first.end(), ','), 8);
  EXPECT_NE(second.find(",-1,,,"), std::string::npos) << second;
}

TEST(CoverageSweep, ConfigDocument) {
  const auto configs = sweep_configs_from_json(
      R"({"base": {"size": 256}, "configs": [{"m_divisions": 25}, {"special_c_count": 64}]})");
  ASSERT_EQ(configs.size(), 2u);
  EXPECT_EQ(configs[0].size, 256);
  EXPECT_EQ(configs[0].m_divisions, 25);
  EXPECT_EQ(configs[1].resolved_special_c_count(), 64);
  EXPECT_EQ(sweep_configs_from_json(R"([{"size": 16}])").at(0).size, 16);
  EXPECT_THROW(sweep_configs_from_json("{}"), Error);
  EXPECT_THROW(sweep_configs_from_json("[]"), Error);
}

}  // namespace
}  // namespace radex
