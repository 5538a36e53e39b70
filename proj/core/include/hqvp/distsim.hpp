#pragma once

// Synchronous-round message passing: agents bootstrap the virtual agent's
// parameters, discover their neighbours and compute their own cells from what
// they heard. Agents never hold absolute peer positions, only x_peer - x_self.

#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string_view>
#include <variant>
#include <vector>

#include "hqvp/cell.hpp"
#include "hqvp/metrics.hpp"
#include "hqvp/oracle.hpp"
#include "hqvp/topology.hpp"

namespace hqvp {

enum class ScalarKind { MinMu, MinLambda };

struct MetricAnnounce {
  Sym2 P;
  double mu = 0.0;
  Vec2 relative;  // x_sender - x_receiver, filled in by the receiver's measurement
};
struct ScalarFlood {
  ScalarKind kind = ScalarKind::MinMu;
  double value = 0.0;
};
struct AverageRound {
  Vec2 estimate;  // sender's estimate of x_0 - x_sender
  std::size_t degree = 0;
};
using Payload = std::variant<MetricAnnounce, ScalarFlood, AverageRound>;

struct Message {
  std::size_t from = 0;
  std::size_t to = 0;
  std::size_t round = 0;
  Payload payload;
};

std::string_view payload_kind(const Payload& p);
std::size_t payload_bytes(const Payload& p);

struct LedgerEntry {
  std::size_t round = 0;
  std::size_t from = 0;
  std::size_t to = 0;
  std::string_view kind;
  std::size_t bytes = 0;
};

void write_ledger_csv(const std::vector<LedgerEntry>& ledger, std::ostream& out);

/// Agents 1..n; slot 0 (the virtual agent) has no links. An edge joins i and l
/// when |x_i - x_l| <= max(eta_i, eta_l).
class CommunicationGraph {
 public:
  CommunicationGraph(const Scenario& s, std::vector<double> radius);

  /// Every agent gets the same radius.
  static CommunicationGraph uniform(const Scenario& s, double radius);
  /// The smallest uniform radius that connects the real agents.
  static double connecting_radius(const Scenario& s);

  const std::vector<double>& radius() const { return radius_; }
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return adjacency_.at(i); }
  std::size_t agent_count() const { return adjacency_.size() - 1; }
  bool connected() const;
  bool linked(std::size_t i, std::size_t l) const;

 private:
  std::vector<double> radius_;
  std::vector<std::vector<std::size_t>> adjacency_;
};

struct BootstrapResult {
  double mu0 = 0.0;
  double lambda0 = 0.0;
  std::vector<Vec2> x0_offset;  // per agent, estimate of x_0 - x_i (slot 0 unused)
  std::size_t flood_rounds = 0;
  std::size_t average_rounds = 0;
  std::vector<LedgerEntry> ledger;
};

/// Floods min mu and min lambda_min(P), then averages relative offsets with
/// Metropolis weights until no estimate moves by more than `tol`.
BootstrapResult bootstrap_network_params(const Scenario& s, const CommunicationGraph& graph,
                                         std::size_t max_rounds, double kappa, double tol = 1e-13);

enum class RadiusMode { Auto, Fixed, Infinite };
enum class ZerothSource { Bootstrap, Scenario };

struct DistributedConfig {
  std::size_t theta_count = 360;
  std::size_t phi_count = 720;
  RadiusMode radius_mode = RadiusMode::Auto;
  double radius = 0.0;  // for RadiusMode::Fixed
  ZerothSource zeroth = ZerothSource::Bootstrap;
  double kappa = 0.5;
  std::optional<double> bootstrap_radius;  // default: connecting_radius
  std::size_t max_rounds = 200000;
  double consensus_tol = 1e-13;
  /// With an oracle, every true neighbour must be heard or RadiusTooSmall is thrown.
  const OwnerGrid* oracle = nullptr;
};

struct AgentRun {
  std::size_t agent = 0;
  NeighborEnclosure enclosure;
  double radius = 0.0;
  std::vector<std::size_t> heard;  // real peers that announced themselves
  std::vector<std::size_t> used;   // heard peers inside the enclosure, plus 0
  std::vector<std::size_t> ray_messages;  // per slice
  std::vector<std::size_t> sort_sizes;    // per slice
};

struct DistributedRun {
  BootstrapResult bootstrap;
  std::vector<AgentRun> agents;  // index k holds agent k + 1
  std::vector<Cell> cells;
  std::vector<LedgerEntry> ledger;
};

DistributedRun run_distributed_partition(const Scenario& s, const DistributedConfig& config);

struct AgentComplexity {
  std::size_t agent = 0;
  std::size_t heard = 0;
  double zeta = 0.0;                  // heard / (n - 1); 0 for a single agent
  std::size_t bootstrap_messages = 0; // sent by the agent
  std::size_t discovery_messages = 0;
  std::size_t max_ray_messages = 0;
  double mean_ray_messages = 0.0;
  std::size_t max_sort_size = 0;
  bool within_bound = false;          // max_ray_messages <= 2 heard
};

std::vector<AgentComplexity> message_complexity_report(const DistributedRun& run);

}  // namespace hqvp
