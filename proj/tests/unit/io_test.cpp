#include <gtest/gtest.h>

#include <string>

#include "hqvp/errors.hpp"
#include "hqvp/io.hpp"
#include "hqvp/scenarios.hpp"

using namespace hqvp;

namespace {

ErrorCode parse_code(const std::string& text) {
  try {
    parse_scenario(text);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::VerificationFailure;
}

const char* kMinimal = R"({
  "name": "pair",
  "domain": {"rectangle": [-3, -3, 3, 3]},
  "zeroth": {"mode": "explicit", "position": [0, 0], "P": [[1, 0], [0, 1]], "mu": 0},
  "agents": [{"position": [1, 0], "P": [[2, 0], [0, 2]]}],
  "run": {"theta_count": 90}
})";

}  // namespace

TEST(Io, ParsesExplicitForm) {
  const ScenarioFile f = parse_scenario(kMinimal);
  EXPECT_EQ(f.name, "pair");
  EXPECT_FALSE(f.zeroth.automatic);
  EXPECT_FALSE(f.seed.has_value());
  EXPECT_EQ(f.run.theta_count, 90u);
  EXPECT_EQ(f.run.grid, RunParams{}.grid);
  ASSERT_EQ(f.scenario.size(), 1u);
  EXPECT_EQ(f.scenario.agent(1).P().a, 2.0);
  EXPECT_EQ(f.scenario.domain().area(), 36.0);
}

TEST(Io, RoundTrip) {
  const ScenarioFile a = parse_scenario(kMinimal);
  const ScenarioFile b = parse_scenario(serialize_scenario(a));
  EXPECT_EQ(serialize_scenario(a), serialize_scenario(b));
  ASSERT_EQ(b.scenario.size(), a.scenario.size());
  for (std::size_t i = 0; i <= a.scenario.size(); ++i) {
    EXPECT_EQ(a.scenario.agent(i).position(), b.scenario.agent(i).position());
    EXPECT_EQ(a.scenario.agent(i).P().b, b.scenario.agent(i).P().b);
    EXPECT_EQ(a.scenario.agent(i).mu(), b.scenario.agent(i).mu());
  }
}

TEST(Io, RoundTripRandomScenario) {
  const Scenario s = random_scenario(77, 12);
  const ScenarioFile a{"r", 77, {}, {}, s};
  const ScenarioFile b = parse_scenario(serialize_scenario(a));
  for (std::size_t i = 0; i <= s.size(); ++i) {
    EXPECT_EQ(s.agent(i).position(), b.scenario.agent(i).position());
    EXPECT_EQ(s.agent(i).P().a, b.scenario.agent(i).P().a);
    EXPECT_EQ(s.agent(i).P().c, b.scenario.agent(i).P().c);
  }
  EXPECT_EQ(b.seed, std::optional<std::uint64_t>(77));
}

TEST(Io, RotatedFormWithAutomaticZeroth) {
  const std::vector<RotatedAgent> agents{{{1.0, 0.0}, 4.0, 2.0, 90.0, 0.0}, {{-1.0, 0.5}, 3.0, 3.0, 0.0, 0.25}};
  const std::string text =
      serialize_rotated_scenario("rot", 5, ConvexDomain::rectangle(-3, -3, 3, 3), agents, 1.5, RunParams{});
  const ScenarioFile f = parse_scenario(text);
  EXPECT_TRUE(f.zeroth.automatic);
  ASSERT_TRUE(f.zeroth.lambda0.has_value());
  EXPECT_EQ(*f.zeroth.lambda0, 1.5);
  // A quarter turn swaps the eigen directions.
  EXPECT_NEAR(f.scenario.agent(1).P().a, 2.0, 1e-12);
  EXPECT_NEAR(f.scenario.agent(1).P().c, 4.0, 1e-12);
  EXPECT_NEAR(f.scenario.agent(1).P().b, 0.0, 1e-12);
  EXPECT_EQ(f.scenario.agent(2).mu(), 0.25);
  // Agent 0 sits at the mean position with lambda0 times the identity.
  EXPECT_NEAR(f.scenario.zeroth().position().x, 0.0, 1e-9);
  EXPECT_NEAR(f.scenario.zeroth().position().y, 0.25, 1e-9);
  EXPECT_NEAR(f.scenario.zeroth().P().a, 1.5, 1e-15);
  EXPECT_EQ(f.scenario.zeroth().mu(), 0.0);
}

TEST(Io, KappaDefaultsForAutomaticZeroth) {
  const ScenarioFile f = parse_scenario(R"({
    "domain": {"rectangle": [-3, -3, 3, 3]},
    "agents": [{"position": [1, 0], "P": [[2, 0], [0, 4]]}, {"position": [-1, 0], "P": [[3, 0], [0, 3]]}]
  })");
  ASSERT_TRUE(f.zeroth.kappa.has_value());
  EXPECT_EQ(*f.zeroth.kappa, 0.5);
  EXPECT_NEAR(f.scenario.zeroth().P().a, 1.0, 1e-15);
}

TEST(Io, BuiltInFilesParse) {
  for (const char* name : {"sec6_lambda17.json", "sec6_lambda29.json", "split_cell.json"}) {
    const ScenarioFile f = load_scenario(std::string(HQVP_SCENARIO_DIR) + "/" + name);
    EXPECT_GE(f.scenario.size(), 2u) << name;
  }
}

TEST(Io, ParseErrors) {
  EXPECT_EQ(parse_code("{"), ErrorCode::ParseError);
  EXPECT_EQ(parse_code("[]"), ErrorCode::ParseError);
  EXPECT_EQ(parse_code(R"({"agents": []})"), ErrorCode::ParseError);
  EXPECT_EQ(parse_code(R"({"domain": {"rectangle": [0, 0, 1, 1]}, "agents": []})"), ErrorCode::ParseError);
  EXPECT_EQ(parse_code(R"({"domain": {"rectangle": [0, 0, 1]}, "agents": [{"position": [0.5, 0.5], "P": [[1, 0], [0, 1]]}]})"),
            ErrorCode::ParseError);
  EXPECT_EQ(parse_code(R"({"domain": {"rectangle": [0, 0, 1, 1]}, "agents": [{"position": [0.5], "P": [[1, 0], [0, 1]]}]})"),
            ErrorCode::ParseError);
  EXPECT_EQ(parse_code(R"({"domain": {"rectangle": [0, 0, 1, 1]}, "agents": [{"position": [0.5, 0.5]}]})"),
            ErrorCode::ParseError);
  EXPECT_EQ(parse_code(R"({"domain": {"rectangle": [0, 0, 1, 1]}, "agents": [{"position": [0.5, 0.5], "P": [[1, "a"], [0, 1]]}]})"),
            ErrorCode::ParseError);
  EXPECT_EQ(parse_code(R"({"domain": {"circle": 1}, "agents": [{"position": [0.5, 0.5], "P": [[1, 0], [0, 1]]}]})"),
            ErrorCode::ParseError);
  EXPECT_EQ(parse_code(R"({"domain": {"rectangle": [0, 0, 1, 1]}, "zeroth": {"mode": "mean"},
                          "agents": [{"position": [0.5, 0.5], "P": [[1, 0], [0, 1]]}]})"),
            ErrorCode::ParseError);
  EXPECT_EQ(parse_code("{\"domain\": {\"rectangle\": [0, 0, 1, 1]}, \"agents\": [1]}"), ErrorCode::ParseError);
}

TEST(Io, InvalidScenariosReportAssumptions) {
  // Agent 1 sits on agent 0 with the same gain.
  EXPECT_EQ(parse_code(R"({
    "domain": {"rectangle": [-3, -3, 3, 3]},
    "zeroth": {"mode": "explicit", "position": [1, 0], "P": [[1, 0], [0, 1]]},
    "agents": [{"position": [1, 0], "P": [[2, 0], [0, 2]]}]
  })"),
            ErrorCode::AssumptionViolation);
  // Agent 0 must be dominated by every other operator.
  EXPECT_EQ(parse_code(R"({
    "domain": {"rectangle": [-3, -3, 3, 3]},
    "zeroth": {"mode": "explicit", "position": [0, 0], "P": [[3, 0], [0, 3]]},
    "agents": [{"position": [1, 0], "P": [[2, 0], [0, 2]]}]
  })"),
            ErrorCode::AssumptionViolation);
  EXPECT_EQ(parse_code(R"({
    "domain": {"rectangle": [-3, -3, 3, 3]},
    "agents": [{"position": [1, 0], "P": [[1, 2], [2, 1]]}]
  })"),
            ErrorCode::NonSPDMatrix);
}
