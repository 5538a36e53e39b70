#pragma once

// Built-in and randomly generated scenarios.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hqvp/metrics.hpp"

namespace hqvp {

/// Rounds each coordinate to a multiple of 2^-30 so that differences and
/// translations by dyadic vectors are exact.
Vec2 quantize(Vec2 v);

/// U diag(e1, e2) Uᵀ with U the rotation by `degrees`.
Sym2 rotated_operator(double e1, double e2, double degrees);

/// Mean of the real agents' positions, quantized.
Vec2 mean_position(const std::vector<ProximityMetric>& real_agents);

/// Agent 0 built from the real agents: x_0 the quantized mean, mu_0 the
/// smallest gain and P_0 = lambda0 I.
ProximityMetric auto_zeroth(const std::vector<ProximityMetric>& real_agents, double lambda0);

/// Smallest eigenvalue over the real agents' operators.
double min_operator_eigenvalue(const std::vector<ProximityMetric>& real_agents);

/// n = 24 agents on [-4, 4]^2 with P_i = U_i diag(8, 3) U_iᵀ rotated by 15 i
/// degrees and mu_i = 0; positions are uniform on [-3, 3]^2 from `seed`.
std::vector<ProximityMetric> fleet_agents(std::uint64_t seed);
Scenario fleet_scenario(double lambda0, std::uint64_t seed);

/// Seed shipped with the built-in n = 24 scenarios.
inline constexpr std::uint64_t kFleetSeed = 41;

/// P_0 = I, P_1 = 2I, x_0 = 0, x_1 = (1, 0), zero gains, domain [-10, 10]^2.
Scenario two_agent_scenario();

/// Random valid scenario on [-4, 4]^2 with n real agents, random SPD operators
/// and gains, and an automatic agent 0 with lambda0 = kappa * min lambda_min.
/// Positions are redrawn until the assumptions hold.
Scenario random_scenario(std::uint64_t seed, std::size_t n, double kappa = 0.5);

/// Agent 0 plus two agents on the strip [-4, 4] x [-0.5, 0.5]; the steeper
/// agent 2 cuts agent 1's cell into two pieces.
Scenario split_cell_scenario();

}  // namespace hqvp
