#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "hqvp/envelope.hpp"
#include "hqvp/errors.hpp"
#include "hqvp/oracle.hpp"
#include "hqvp/scenarios.hpp"

using namespace hqvp;

namespace {

// Two unit-operator agents at (-1, 0) and (1, 0). Agent 0 sits below them;
// wherever agent 1 or 2 owns a point, the owner is decided by their pair alone.
Scenario symmetric_pair(double mu1, double mu2) {
  return Scenario(ConvexDomain::rectangle(-2, -2, 2, 2), {{Sym2::scaled_identity(0.25), 0.0, {0, -1.9}},
                                                          {Sym2::identity(), mu1, {-1, 0}},
                                                          {Sym2::identity(), mu2, {1, 0}}});
}

}  // namespace

TEST(Oracle, RejectsCoarseGrid) {
  try {
    rasterize(two_agent_scenario(), 8);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidArgument);
  }
}

TEST(Oracle, EqualIsotropicAgentsSplitAtPerpendicularBisector) {
  const OwnerGrid o = rasterize(symmetric_pair(0.0, 0.0), 64);
  for (std::size_t iy = 0; iy < 64; ++iy) {
    for (std::size_t ix = 0; ix < 64; ++ix) {
      const auto w = o.at(ix, iy);
      if (w == 0) continue;
      EXPECT_EQ(w, o.grid.point(ix, iy).x < 0.0 ? 1 : 2);
    }
  }
}

TEST(Oracle, EqualOperatorsDistinctGainsGiveShiftedLine) {
  // |x + e|^2 + 1 = |x - e|^2 puts the line at x = -1/4, toward the agent
  // with the larger gain.
  const OwnerGrid o = rasterize(symmetric_pair(1.0, 0.0), 80);
  for (std::size_t iy = 0; iy < 80; ++iy) {
    for (std::size_t ix = 0; ix < 80; ++ix) {
      const auto w = o.at(ix, iy);
      if (w == 0) continue;
      EXPECT_EQ(w, o.grid.point(ix, iy).x < -0.25 ? 1 : 2);
    }
  }
}

TEST(Oracle, OwnersAndTies) {
  const Scenario s = fleet_scenario(1.7, kFleetSeed);
  const OwnerGrid o = rasterize(s, 100);
  EXPECT_EQ(o.agent_count, 25u);
  double total = 0.0;
  for (std::size_t i = 0; i <= s.size(); ++i) total += area(o, i);
  EXPECT_NEAR(total, s.domain().area(), 1e-9);
  for (std::size_t iy = 0; iy < 100; iy += 7) {
    for (std::size_t ix = 0; ix < 100; ix += 7) {
      const auto g = delta_global(s, o.grid.point(ix, iy));
      EXPECT_EQ(o.at(ix, iy), static_cast<std::int32_t>(g.owner));
    }
  }
}

TEST(Oracle, OutsideDomainIsMarked) {
  const Scenario s(ConvexDomain({{0, 0}, {4, 0}, {0, 4}}),
                   {{Sym2::identity(), 0.0, {1, 1}}, {Sym2::scaled_identity(3.0), 0.0, {0.5, 0.5}}});
  const OwnerGrid o = rasterize(s, 32);
  EXPECT_EQ(o.at(31, 31), -1);
  EXPECT_GE(o.at(0, 0), 0);
}

TEST(Oracle, ComponentsAndAdjacency) {
  const Scenario two = two_agent_scenario();
  const OwnerGrid o = rasterize(two, 200);
  EXPECT_EQ(component_count(o, 1), 1);
  EXPECT_EQ(true_neighbors_from_oracle(o, 1), (std::set<std::size_t>{0}));
  const OwnerGrid split = rasterize(split_cell_scenario(), 400);
  EXPECT_EQ(component_count(split, 1), 2);
  const auto adj = adjacency(split);
  EXPECT_EQ(adj[1], (std::set<std::size_t>{0, 2}));
}

TEST(Oracle, OwnersAroundCountsBlock) {
  const OwnerGrid o = rasterize(symmetric_pair(0.0, 0.0), 64);
  // Columns 31 and 32 straddle x = 0; row 48 is at y = 1.03.
  EXPECT_EQ(o.at(31, 48), 1);
  EXPECT_EQ(o.at(32, 48), 2);
  EXPECT_GE(owners_around(o, 31, 48), 2);
  EXPECT_EQ(owners_around(o, 10, 48), 1);
}

TEST(Oracle, Writers) {
  const OwnerGrid o = rasterize(two_agent_scenario(), 16);
  std::ostringstream pgm;
  write_pgm(o, pgm);
  EXPECT_EQ(pgm.str().rfind("P2\n16 16\n255\n", 0), 0u);
  std::ostringstream csv;
  write_csv(o, csv);
  std::size_t lines = 0;
  for (char c : csv.str()) lines += c == '\n';
  EXPECT_EQ(lines, 16u * 16u + 1u);
  EXPECT_EQ(csv.str().rfind("ix,iy,x,y,owner,tie\n", 0), 0u);
}
