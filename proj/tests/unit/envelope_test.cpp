#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "hqvp/envelope.hpp"
#include "hqvp/errors.hpp"
#include "hqvp/scenarios.hpp"
#include "support.hpp"

using namespace hqvp;

namespace {

// min over l != i of delta_l(x) minus delta_i(x), straight from the formula.
double reference_envelope(const Scenario& s, std::size_t i, Vec2 x) {
  double best = INFINITY;
  for (std::size_t l = 0; l <= s.size(); ++l) {
    if (l == i) continue;
    const auto& m = s.agent(l);
    best = std::min(best, oracles::quad_form(m.P(), x - m.position()) + m.mu());
  }
  const auto& mi = s.agent(i);
  return best - oracles::quad_form(mi.P(), x - mi.position()) - mi.mu();
}

}  // namespace

TEST(Envelope, PositiveAtGenerator) {
  const Scenario s = fleet_scenario(1.7, kFleetSeed);
  for (std::size_t i = 1; i <= s.size(); ++i) {
    const auto v = delta_i(s, i, s.agent(i).position());
    EXPECT_GT(v.value, 0.0);
    EXPECT_DOUBLE_EQ(v.value, reference_envelope(s, i, s.agent(i).position()));
  }
}

TEST(Envelope, TwoAgentValues) {
  const Scenario s = two_agent_scenario();
  const auto on = delta_i(s, 1, {2.0 - std::sqrt(2.0), 0.0});
  EXPECT_NEAR(on.value, 0.0, 1e-15);
  EXPECT_TRUE(on_boundary(on));
  const auto off = delta_i(s, 1, {-1.0, 0.0});
  EXPECT_DOUBLE_EQ(off.value, -7.0);
  EXPECT_EQ(off.argmin_index, 0u);
  EXPECT_FALSE(on_boundary(off));
}

TEST(Envelope, MatchesReferenceEverywhere) {
  const Scenario s = random_scenario(9, 12);
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int k = 0; k < 500; ++k) {
    const Vec2 x{u(rng), u(rng)};
    for (std::size_t i = 1; i <= s.size(); ++i) {
      EXPECT_NEAR(delta_i(s, i, x).value, reference_envelope(s, i, x), 1e-12 * (1.0 + std::abs(reference_envelope(s, i, x))));
    }
  }
}

TEST(GlobalEnvelope, GeneratorsOwnThemselves) {
  const Scenario s = fleet_scenario(2.9, kFleetSeed);
  for (std::size_t k = 0; k <= s.size(); ++k) {
    const auto g = delta_global(s, s.agent(k).position());
    EXPECT_EQ(g.owner, k);
    EXPECT_FALSE(g.tie);
  }
}

TEST(GlobalEnvelope, TieGoesToSmallerIndex) {
  const auto g = delta_global(two_agent_scenario(), {1.0, 1.0});
  EXPECT_TRUE(g.tie);
  EXPECT_EQ(g.owner, 0u);
}

TEST(RestrictedEnvelope, FullSetMatches) {
  const Scenario s = random_scenario(4, 8);
  std::vector<std::size_t> others;
  for (std::size_t l = 0; l <= s.size(); ++l) {
    if (l != 3) others.push_back(l);
  }
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> u(-4.0, 4.0);
  for (int k = 0; k < 100; ++k) {
    const Vec2 x{u(rng), u(rng)};
    EXPECT_EQ(delta_i_restricted(s, 3, others, x).value, delta_i(s, 3, x).value);
  }
}

TEST(RestrictedEnvelope, SubsetIsUpperBound) {
  const Scenario s = random_scenario(4, 8);
  const Vec2 xi = s.agent(2).position();
  std::size_t farthest = 0;
  for (std::size_t l = 0; l <= s.size(); ++l) {
    if (l != 2 && norm(s.agent(l).position() - xi) > norm(s.agent(farthest).position() - xi)) farthest = l;
  }
  EXPECT_GE(delta_i_restricted(s, 2, {farthest}, xi).value, delta_i(s, 2, xi).value);
}

TEST(RestrictedEnvelope, Errors) {
  const Scenario s = two_agent_scenario();
  try {
    delta_i_restricted(s, 1, {}, {0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyIndexSet);
  }
  try {
    delta_i_restricted(s, 1, {0, 1}, {0, 0});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(RelativeEnvelope, TwoAgentBisectorPoint) {
  const Scenario s = two_agent_scenario();
  const Vec2 x0_rel = s.agent(0).position() - s.agent(1).position();
  const auto v = delta_i_relative({x0_rel}, {{s.agent(0).P(), 0.0}}, {s.agent(1).P(), 0.0},
                                  Vec2{2.0 - std::sqrt(2.0), 0.0} - s.agent(1).position());
  EXPECT_NEAR(v.value, 0.0, 1e-15);
}

TEST(RelativeEnvelope, TranslationInvariant) {
  const Scenario s = random_scenario(12, 10);
  const Vec2 shift{0.75, -0.125};
  const Scenario t = s.translated(shift);
  const LocalView a = LocalView::centralized(s, 5);
  const LocalView b = LocalView::centralized(t, 5);
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 200; ++k) {
    const Vec2 off{u(rng), u(rng)};
    EXPECT_EQ(a.delta(off).value, b.delta(off).value);
  }
}

TEST(LocalView, CentralizedMatchesGlobal) {
  const Scenario s = random_scenario(21, 7);
  const LocalView v = LocalView::centralized(s, 4);
  ASSERT_EQ(v.peers().size(), s.size());
  EXPECT_EQ(v.zeroth().index, 0u);
  for (std::size_t k = 1; k < v.peers().size(); ++k) EXPECT_LT(v.peers()[k - 1].index, v.peers()[k].index);
  const Vec2 x{0.3, -0.6};
  EXPECT_NEAR(v.delta(x - s.agent(4).position()).value, delta_i(s, 4, x).value, 1e-13);
}

TEST(LocalView, RequiresZerothPeer) {
  const Scenario s = two_agent_scenario();
  try {
    LocalView(1, s.agent(1).P(), 0.0, {}, s.domain().translated(-s.agent(1).position()));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyIndexSet);
  }
}
