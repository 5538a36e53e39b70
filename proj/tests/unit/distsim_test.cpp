#include <gtest/gtest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "hqvp/distsim.hpp"
#include "hqvp/errors.hpp"
#include "hqvp/oracle.hpp"
#include "hqvp/scenarios.hpp"
#include "hqvp/verify.hpp"

using namespace hqvp;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::VerificationFailure;
}

// A hub at the origin with five leaves on the unit circle; radius 1.1 links
// each leaf to the hub only.
Scenario star() {
  std::vector<ProximityMetric> agents{{Sym2::scaled_identity(0.5), 0.0, {0.3, 0.1}}};
  agents.push_back({Sym2::scaled_identity(4.0), 0.0, {0.0, 0.0}});
  for (int k = 0; k < 5; ++k) {
    const double t = 2.0 * std::numbers::pi * k / 5.0 + 0.1;
    agents.push_back({Sym2::scaled_identity(4.0), 0.0, quantize({std::cos(t), std::sin(t)})});
  }
  return Scenario(ConvexDomain::rectangle(-2, -2, 2, 2), agents);
}

}  // namespace

TEST(Graph, UniformStarAndMaxRule) {
  const Scenario s = star();
  const auto g = CommunicationGraph::uniform(s, 1.1);
  EXPECT_EQ(g.neighbors(1).size(), 5u);
  for (std::size_t i = 2; i <= 6; ++i) EXPECT_EQ(g.neighbors(i), (std::vector<std::size_t>{1}));
  EXPECT_TRUE(g.connected());
  EXPECT_FALSE(CommunicationGraph::uniform(s, 0.5).connected());
  // One long-range agent links to everyone within its own radius.
  std::vector<double> r(s.agents().size(), 0.1);
  r[2] = 10.0;
  const CommunicationGraph h(s, r);
  EXPECT_EQ(h.neighbors(2).size(), 5u);
  EXPECT_TRUE(h.linked(3, 2));
  EXPECT_FALSE(h.linked(3, 4));
}

TEST(Graph, ConnectingRadiusIsLongestSpanningEdge) {
  const Scenario s = star();
  const double r = CommunicationGraph::connecting_radius(s);
  EXPECT_NEAR(r, 1.0, 1e-8);
  EXPECT_TRUE(CommunicationGraph::uniform(s, r).connected());
  EXPECT_FALSE(CommunicationGraph::uniform(s, r * (1.0 - 1e-6)).connected());
}

TEST(Bootstrap, FloodsMinimaAndAveragesOffsets) {
  const Scenario s = star();
  const auto g = CommunicationGraph::uniform(s, 1.1);
  const BootstrapResult b = bootstrap_network_params(s, g, 100000, 0.5);
  EXPECT_EQ(b.mu0, 0.0);
  EXPECT_DOUBLE_EQ(b.lambda0, 2.0);
  Vec2 mean;
  for (std::size_t i = 1; i <= s.size(); ++i) mean += s.agent(i).position();
  mean = mean / static_cast<double>(s.size());
  for (std::size_t i = 1; i <= s.size(); ++i) {
    EXPECT_LT(norm(b.x0_offset[i] - (mean - s.agent(i).position())), 1e-6);
  }
  EXPECT_LE(b.flood_rounds, 3u);
  EXPECT_GT(b.average_rounds, 0u);
}

TEST(Bootstrap, LambdaFromKappaOnBuiltIn) {
  const Scenario s = fleet_scenario(1.7, kFleetSeed);
  const auto g = CommunicationGraph::uniform(s, CommunicationGraph::connecting_radius(s));
  const BootstrapResult b = bootstrap_network_params(s, g, 200000, 1.7 / 3.0);
  EXPECT_NEAR(b.lambda0, 1.7, 1e-14);
  EXPECT_EQ(b.mu0, 0.0);
}

TEST(Bootstrap, Errors) {
  const Scenario s = star();
  EXPECT_EQ(code_of([&] { bootstrap_network_params(s, CommunicationGraph::uniform(s, 0.5), 100, 0.5); }),
            ErrorCode::DisconnectedGraph);
  EXPECT_EQ(code_of([&] { bootstrap_network_params(s, CommunicationGraph::uniform(s, 1.1), 100, 1.0); }),
            ErrorCode::InvalidArgument);
  EXPECT_EQ(code_of([&] { bootstrap_network_params(s, CommunicationGraph::uniform(s, 1.1), 3, 0.5); }),
            ErrorCode::NonConvergence);
}

TEST(Distributed, InfiniteRadiusMatchesCentralized) {
  const Scenario s = random_scenario(5, 9);
  DistributedConfig cfg;
  cfg.radius_mode = RadiusMode::Infinite;
  cfg.zeroth = ZerothSource::Scenario;
  const DistributedRun run = run_distributed_partition(s, cfg);
  const auto central = compute_cells(s, cfg.theta_count);
  EXPECT_EQ(boundary_hausdorff(run.cells, central), 0.0);
  for (const auto& c : message_complexity_report(run)) {
    EXPECT_DOUBLE_EQ(c.zeta, 1.0);
    EXPECT_TRUE(c.within_bound);
    EXPECT_LE(c.max_ray_messages, 2 * (s.size() - 1));
  }
}

TEST(Distributed, LowerBoundRadiusMatchesCentralized) {
  const Scenario s = random_scenario(6, 14);
  const OwnerGrid o = rasterize(s, 200);
  DistributedConfig cfg;
  cfg.zeroth = ZerothSource::Scenario;
  cfg.oracle = &o;
  const DistributedRun run = run_distributed_partition(s, cfg);
  EXPECT_LT(boundary_hausdorff(run.cells, compute_cells(s, cfg.theta_count)), 1e-6 * s.domain().diameter());
  for (const AgentRun& a : run.agents) EXPECT_EQ(a.radius, a.enclosure.eta_lower);
}

TEST(Distributed, SmallRadiusIsReported) {
  const Scenario s = fleet_scenario(1.7, kFleetSeed);
  const OwnerGrid o = rasterize(s, 100);
  DistributedConfig cfg;
  cfg.radius_mode = RadiusMode::Fixed;
  cfg.radius = 0.05;
  cfg.zeroth = ZerothSource::Scenario;
  cfg.oracle = &o;
  EXPECT_EQ(code_of([&] { run_distributed_partition(s, cfg); }), ErrorCode::RadiusTooSmall);
}

TEST(Distributed, SingleAgentHearsNobody) {
  const Scenario s(ConvexDomain::rectangle(-3, -3, 3, 3),
                   {{Sym2::identity(), 0.0, {0, 0}}, {Sym2::scaled_identity(2.0), 0.0, {1, 0}}});
  // Averaging one position would put agent 0 on top of agent 1, so the
  // scenario's own agent 0 is used.
  DistributedConfig cfg;
  cfg.zeroth = ZerothSource::Scenario;
  const DistributedRun run = run_distributed_partition(s, cfg);
  const auto report = message_complexity_report(run);
  ASSERT_EQ(report.size(), 1u);
  EXPECT_EQ(report[0].heard, 0u);
  EXPECT_EQ(report[0].zeta, 0.0);
  EXPECT_EQ(report[0].max_ray_messages, 0u);
  EXPECT_EQ(run.agents[0].used, (std::vector<std::size_t>{0}));
}

TEST(Distributed, BootstrapRunUsesEstimatedZeroth) {
  const Scenario s = fleet_scenario(1.7, kFleetSeed);
  DistributedConfig cfg;
  cfg.kappa = 1.7 / 3.0;
  const DistributedRun run = run_distributed_partition(s, cfg);
  // The built-in agent 0 sits at the quantized mean with the same lambda0.
  EXPECT_LT(boundary_hausdorff(run.cells, compute_cells(s, cfg.theta_count)), 1e-6);
  EXPECT_GT(run.ledger.size(), run.bootstrap.ledger.size());
}

TEST(Ledger, KindsAndCsv) {
  EXPECT_EQ(payload_kind(Payload{MetricAnnounce{}}), "MetricAnnounce");
  EXPECT_EQ(payload_kind(Payload{ScalarFlood{}}), "ScalarFlood");
  EXPECT_EQ(payload_kind(Payload{AverageRound{}}), "AverageRound");
  EXPECT_GT(payload_bytes(Payload{MetricAnnounce{}}), payload_bytes(Payload{ScalarFlood{}}));
  std::ostringstream out;
  write_ledger_csv({{1, 2, 3, "ScalarFlood", 9}}, out);
  EXPECT_EQ(out.str(), "round,from,to,payload_kind,bytes\n1,2,3,ScalarFlood,9\n");
}
