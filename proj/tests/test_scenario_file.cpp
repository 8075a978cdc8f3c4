#include <gtest/gtest.h>

#include "underlay/analytics.hpp"
#include "underlay/scenario_file.hpp"

using namespace underlay;

namespace {

const char* kGeometryText = R"(# comment line
d11 = 2
d22 = 1
r12 = 4
r21 = 3
r1P = 3   # trailing comment
r2P = 3
phi = 3
ip_db = 20
)";

}  // namespace

TEST(ScenarioFile, GeometryCompilesToStatistics) {
  const auto cfg = parse_scenario(kGeometryText);
  EXPECT_DOUBLE_EQ(cfg.scenario.stats.lambda11, 8.0);
  EXPECT_DOUBLE_EQ(cfg.scenario.stats.mu12, 64.0);
  EXPECT_EQ(cfg.scenario.users1, 1);
  EXPECT_EQ(cfg.scenario.rho(), 100.0);
  EXPECT_FALSE(cfg.rate_bpcu.has_value());
  EXPECT_TRUE(cfg.geometry.has_value());
}

TEST(ScenarioFile, ExplicitRates) {
  const auto cfg = parse_scenario(
      "lambda11 = 1\nlambda22 = 8\nmu12 = 27\nmu21 = 42.875\nmu1P = 64\nmu2P = 27\n"
      "L = 3\nM = 5\nip_db = 10\nrate_bpcu = 1.5\nalpha = 0.25\nmode = concurrent\n"
      "selection = round-robin\ntrials = 5000\nseed = 42\n");
  EXPECT_DOUBLE_EQ(cfg.scenario.stats.mu21, 42.875);
  EXPECT_EQ(cfg.scenario.users1, 3);
  EXPECT_EQ(cfg.scenario.users2, 5);
  EXPECT_EQ(cfg.scenario.selection, Selection::round_robin);
  EXPECT_DOUBLE_EQ(*cfg.rate_bpcu, 1.5);
  EXPECT_DOUBLE_EQ(cfg.power.alpha, 0.25);
  EXPECT_EQ(cfg.trials, 5000u);
  EXPECT_EQ(cfg.seed, 42u);
  EXPECT_NEAR(alpha_star_closed_form(cfg.scenario.stats), 0.1058, 5e-4);
}

TEST(ScenarioFile, GeometryWinsWhenConsistent) {
  const std::string text = std::string(kGeometryText) +
                           "lambda11 = 8\nlambda22 = 1\nmu12 = 64\nmu21 = 27\nmu1P = 27\nmu2P = 27\n";
  EXPECT_DOUBLE_EQ(parse_scenario(text).scenario.stats.mu21, 27.0);
}

TEST(ScenarioFile, InconsistentRatesAreAnError) {
  const std::string text = std::string(kGeometryText) +
                           "lambda11 = 9\nlambda22 = 1\nmu12 = 64\nmu21 = 27\nmu1P = 27\nmu2P = 27\n";
  EXPECT_THROW(parse_scenario(text), ScenarioFileError);
}

TEST(ScenarioFile, Errors) {
  EXPECT_THROW(parse_scenario(std::string(kGeometryText) + "bogus = 1\n"), ScenarioFileError);
  EXPECT_THROW(parse_scenario(std::string(kGeometryText) + "d11 = 3\n"), ScenarioFileError);
  EXPECT_THROW(parse_scenario("d11 = 1\nphi = 3\n"), ScenarioFileError);
  EXPECT_THROW(parse_scenario("ip_db = 20\n"), ScenarioFileError);
  EXPECT_THROW(parse_scenario("d11 = 1\nd22 = 1\nr12 = 1\nr21 = 1\nr1P = 1\nr2P = 1\n"), ScenarioFileError);
  EXPECT_THROW(parse_scenario(std::string(kGeometryText) + "L = two\n"), ScenarioFileError);
  EXPECT_THROW(parse_scenario(std::string(kGeometryText) + "just words\n"), ScenarioFileError);
  EXPECT_THROW(parse_scenario(std::string(kGeometryText) + "alpha = 1.5\n"), ParameterError);
  EXPECT_THROW(parse_scenario(std::string(kGeometryText) + "rate_bpcu = -1\n"), InvalidRate);
  EXPECT_THROW(parse_scenario(std::string(kGeometryText) + "selection = greedy\n"), ParameterError);
  EXPECT_THROW(parse_scenario("lambda11 = -8\nlambda22 = 1\nmu12 = 64\nmu21 = 27\nmu1P = 27\nmu2P = 27\n"),
               ParameterError);
  EXPECT_THROW(load_scenario("/nonexistent/file.scn"), ScenarioFileError);
}

TEST(ScenarioFile, BundledScenariosLoad) {
  const std::string dir = UNDERLAY_SCENARIO_DIR;
  const auto fig2 = load_scenario(dir + "/fig2.scn");
  EXPECT_NEAR(critical_rate_closed_form(fig2.scenario.stats), 3.9724, 5e-4);
  const auto fig3a = load_scenario(dir + "/fig3a.scn");
  EXPECT_NEAR(alpha_star_closed_form(fig3a.scenario.stats), 0.1058, 5e-4);
  EXPECT_NEAR(fig3a.scenario.rho(), 10.0, 1e-12);
  const auto fig3b = load_scenario(dir + "/fig3b.scn");
  EXPECT_NEAR(alpha_star_closed_form(fig3b.scenario.stats), 0.9117, 5e-4);
  EXPECT_DOUBLE_EQ(*fig3b.rate_bpcu, 2.0);
  const auto fig4 = load_scenario(dir + "/fig4.scn");
  EXPECT_DOUBLE_EQ(fig4.power.alpha, 0.5);
  EXPECT_DOUBLE_EQ(fig4.scenario.stats.lambda11, 1.0);
}
