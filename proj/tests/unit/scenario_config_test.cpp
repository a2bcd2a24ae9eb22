#include <gtest/gtest.h>

#include <sstream>
#include <stdexcept>
#include <string>

#include "ofdma/scenario_config.hpp"

namespace ofdma {
namespace {

SimulationPlan parse(const std::string& text) {
  std::stringstream ss(text);
  return parse_plan(ss);
}

void expect_parse_error(const std::string& text, const std::string& fragment) {
  try {
    parse(text);
    FAIL() << "no error for: " << text;
  } catch (const std::runtime_error& e) {
    EXPECT_NE(std::string(e.what()).find(fragment), std::string::npos) << e.what();
  }
}

TEST(ParsePlan, ReadsGridAndScalars) {
  const SimulationPlan plan = parse(
      "# desk grid\n"
      "N = 16\n"
      "K1 = 2, 4\n"
      "power_ratio = 2.0, 3.5  # two ratios\n"
      "R_min = 8\n"
      "frames_per_drop = 5\n"
      "algorithms = heur1, ip\n"
      "ip_node_limit = 500\n"
      "seed = 42\n");
  EXPECT_EQ(plan.base.N, 16);
  EXPECT_EQ(plan.base.channel.frames_per_drop, 5);
  EXPECT_EQ(plan.base.seed, 42u);
  EXPECT_EQ(plan.base.ip_node_limit, 500);
  EXPECT_EQ(plan.base.algorithms, (std::vector<Algorithm>{Algorithm::kHeur1, Algorithm::kIp}));
  const auto grid = plan.scenarios();
  ASSERT_EQ(grid.size(), 4u);
  EXPECT_EQ(grid[0].K1, 2);
  EXPECT_DOUBLE_EQ(grid[0].power_ratio, 2.0);
  EXPECT_EQ(grid[1].K1, 2);
  EXPECT_DOUBLE_EQ(grid[1].power_ratio, 3.5);
  EXPECT_EQ(grid[3].K1, 4);
  EXPECT_EQ(grid[3].cbr_targets(), (std::vector<double>{8.0, 8.0, 8.0, 8.0}));
}

TEST(ParsePlan, KeepsDefaultsForAbsentKeys) {
  const SimulationPlan plan = parse("N = 20\n");
  EXPECT_EQ(plan.base.K2, ScenarioConfig{}.K2);
  EXPECT_EQ(plan.scenarios().size(), 1u);
  const SimulationPlan desk = [] {
    std::stringstream ss("max_drops = 60\n");
    return parse_plan(ss, desk_scale_plan());
  }();
  EXPECT_EQ(desk.base.N, 32);
  EXPECT_EQ(desk.base.max_drops, 60);
  EXPECT_EQ(desk.scenarios().size(), 12u);
}

TEST(ParsePlan, ReportsErrorsWithLineNumbers) {
  expect_parse_error("N = 4\nbogus = 1\n", "line 2: unknown key 'bogus'");
  expect_parse_error("N = 4\nN = 5\n", "line 2: duplicate key 'N'");
  expect_parse_error("N = four\n", "line 1: bad value for 'N'");
  expect_parse_error("N = 4x\n", "bad value");
  expect_parse_error("just text\n", "expected key = value");
  expect_parse_error("algorithms = heur1, magic\n", "bad value for 'algorithms'");
}

TEST(ParsePlan, ValidatesResultingScenarios) {
  EXPECT_THROW(parse("min_drops = 10\nmax_drops = 5\n"), std::invalid_argument);
  EXPECT_THROW(parse("power_ratio = 0.5\n"), std::invalid_argument);
  EXPECT_THROW(parse("sigma_norm = 0\n"), std::invalid_argument);
}

TEST(ScenarioConfig, ValidateAndTargets) {
  ScenarioConfig cfg;
  EXPECT_NO_THROW(cfg.validate());
  cfg.K1 = 3;
  cfg.R_min = {1.0, 2.0, 3.0};
  EXPECT_EQ(cfg.cbr_targets(), (std::vector<double>{1.0, 2.0, 3.0}));
  cfg.R_min = {1.0, 2.0};
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = ScenarioConfig{};
  cfg.ip_node_limit = 0;
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
  cfg = ScenarioConfig{};
  cfg.algorithms.clear();
  EXPECT_THROW(cfg.validate(), std::invalid_argument);
}

TEST(Algorithms, NamesRoundTrip) {
  for (const Algorithm a : kAllAlgorithms) EXPECT_EQ(parse_algorithm(algorithm_name(a)), a);
  EXPECT_FALSE(parse_algorithm("HEUR1"));
}

TEST(Plans, PresetShapes) {
  const auto desk = desk_scale_plan();
  EXPECT_EQ(desk.k1_values, (std::vector<int>{2, 3, 4, 6}));
  EXPECT_EQ(desk.power_ratios, (std::vector<double>{2.0, 3.0, 4.0}));
  EXPECT_GE(desk.base.min_drops, 50);
  const auto full = full_scale_plan();
  EXPECT_EQ(full.base.N, 100);
  EXPECT_EQ(full.scenarios().size(), 20u);
  EXPECT_EQ(full.base.min_drops, 25);
  EXPECT_EQ(full.base.max_drops, 1000);
  EXPECT_DOUBLE_EQ(full.base.sigma_norm, 0.02);
}

}  // namespace
}  // namespace ofdma
