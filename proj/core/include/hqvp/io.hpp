#pragma once

// Scenario files and result documents (JSON).

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hqvp/cell.hpp"
#include "hqvp/distsim.hpp"
#include "hqvp/metrics.hpp"
#include "hqvp/topology.hpp"

namespace hqvp {

struct RunParams {
  std::size_t theta_count = 360;
  std::size_t phi_count = 720;
  std::size_t grid = 400;
};

/// How agent 0 was specified in the file.
struct ZerothSpec {
  bool automatic = false;
  std::optional<double> kappa;    // lambda0 = kappa * min lambda_min
  std::optional<double> lambda0;  // used as is
};

struct ScenarioFile {
  std::string name;
  std::optional<std::uint64_t> seed;
  ZerothSpec zeroth;
  RunParams run;
  Scenario scenario;
};

/// Throws ParseError for malformed documents and AssumptionViolation (with
/// the pair-level report) for invalid scenarios.
ScenarioFile parse_scenario(const std::string& text);
ScenarioFile load_scenario(const std::string& path);

/// Every matrix written out explicitly; agent 0 is written as resolved.
std::string serialize_scenario(const ScenarioFile& file);

/// As serialize_scenario, but operators given by eigenvalues and a rotation
/// angle and agent 0 kept in automatic form.
struct RotatedAgent {
  Vec2 position;
  double e1 = 0.0;
  double e2 = 0.0;
  double rotation_deg = 0.0;
  double mu = 0.0;
};
std::string serialize_rotated_scenario(const std::string& name, std::optional<std::uint64_t> seed,
                                       const ConvexDomain& domain, const std::vector<RotatedAgent>& agents,
                                       double lambda0, const RunParams& run);

std::string cells_to_json(const std::vector<Cell>& cells, std::optional<double> hole_area = std::nullopt);
std::string topology_to_json(const std::vector<TopologyReport>& reports);
std::string complexity_to_json(const DistributedRun& run, const std::vector<AgentComplexity>& report);

void write_text_file(const std::string& path, const std::string& text);

}  // namespace hqvp
