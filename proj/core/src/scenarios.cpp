#include "hqvp/scenarios.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "hqvp/errors.hpp"

namespace hqvp {

Vec2 quantize(Vec2 v) {
  constexpr double scale = 1073741824.0;  // 2^30
  return {std::nearbyint(v.x * scale) / scale, std::nearbyint(v.y * scale) / scale};
}

Sym2 rotated_operator(double e1, double e2, double degrees) {
  return rotated_diagonal(e1, e2, degrees * std::numbers::pi / 180.0);
}

Vec2 mean_position(const std::vector<ProximityMetric>& real_agents) {
  if (real_agents.empty()) throw Error(ErrorCode::InvalidArgument, "no agents to average");
  Vec2 sum;
  for (const auto& a : real_agents) sum += a.position();
  return quantize(sum / static_cast<double>(real_agents.size()));
}

double min_operator_eigenvalue(const std::vector<ProximityMetric>& real_agents) {
  double m = std::numeric_limits<double>::infinity();
  for (const auto& a : real_agents) m = std::min(m, lambda_min(a.P()));
  return m;
}

ProximityMetric auto_zeroth(const std::vector<ProximityMetric>& real_agents, double lambda0) {
  double mu0 = std::numeric_limits<double>::infinity();
  for (const auto& a : real_agents) mu0 = std::min(mu0, a.mu());
  return {Sym2::scaled_identity(lambda0), mu0, mean_position(real_agents)};
}

std::vector<ProximityMetric> fleet_agents(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-3.0, 3.0);
  std::vector<ProximityMetric> agents;
  for (int i = 1; i <= 24; ++i) {
    const double x = coord(rng);
    const double y = coord(rng);
    agents.emplace_back(rotated_operator(8.0, 3.0, 15.0 * i), 0.0, quantize({x, y}));
  }
  return agents;
}

Scenario fleet_scenario(double lambda0, std::uint64_t seed) {
  const auto real = fleet_agents(seed);
  std::vector<ProximityMetric> all{auto_zeroth(real, lambda0)};
  all.insert(all.end(), real.begin(), real.end());
  return Scenario(ConvexDomain::rectangle(-4.0, -4.0, 4.0, 4.0), std::move(all));
}

Scenario two_agent_scenario() {
  return Scenario(ConvexDomain::rectangle(-10.0, -10.0, 10.0, 10.0),
                  {ProximityMetric(Sym2::identity(), 0.0, {0.0, 0.0}),
                   ProximityMetric(Sym2::scaled_identity(2.0), 0.0, {1.0, 0.0})});
}

Scenario random_scenario(std::uint64_t seed, std::size_t n, double kappa) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "need at least one agent");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-3.5, 3.5);
  std::uniform_real_distribution<double> eig(1.0, 8.0);
  std::uniform_real_distribution<double> angle(0.0, 180.0);
  std::uniform_real_distribution<double> gain(0.0, 1.0);
  std::vector<ProximityMetric> real;
  for (std::size_t i = 0; i < n; ++i) {
    const double a = eig(rng);
    const double b = eig(rng);
    real.emplace_back(rotated_operator(std::max(a, b), std::min(a, b), angle(rng)), gain(rng), Vec2{});
  }
  const auto domain = ConvexDomain::rectangle(-4.0, -4.0, 4.0, 4.0);
  for (int attempt = 0; attempt < 10000; ++attempt) {
    for (auto& a : real) a = a.moved_to(quantize({coord(rng), coord(rng)}));
    std::vector<ProximityMetric> all{auto_zeroth(real, kappa * min_operator_eigenvalue(real))};
    all.insert(all.end(), real.begin(), real.end());
    if (validate_assumptions(domain, all).ok()) return Scenario(domain, std::move(all));
  }
  throw Error(ErrorCode::AssumptionViolation, "could not draw a valid random scenario");
}

Scenario split_cell_scenario() {
  return Scenario(ConvexDomain::rectangle(-4.0, -0.5, 4.0, 0.5),
                  {ProximityMetric(Sym2::identity(), 0.0, {-2.0, 0.0}),
                   ProximityMetric(Sym2::scaled_identity(2.0), 0.0, {0.0, 0.0}),
                   ProximityMetric(Sym2::scaled_identity(8.0), 0.0, {1.5, 0.0})});
}

}  // namespace hqvp
