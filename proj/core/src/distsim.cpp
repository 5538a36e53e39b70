#include "hqvp/distsim.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <set>

#include "hqvp/errors.hpp"

namespace hqvp {

std::string_view payload_kind(const Payload& p) {
  struct {
    std::string_view operator()(const MetricAnnounce&) const { return "MetricAnnounce"; }
    std::string_view operator()(const ScalarFlood&) const { return "ScalarFlood"; }
    std::string_view operator()(const AverageRound&) const { return "AverageRound"; }
  } kind;
  return std::visit(kind, p);
}

std::size_t payload_bytes(const Payload& p) {
  struct {
    std::size_t operator()(const MetricAnnounce&) const { return 6 * sizeof(double); }
    std::size_t operator()(const ScalarFlood&) const { return sizeof(double) + 1; }
    std::size_t operator()(const AverageRound&) const { return 2 * sizeof(double) + sizeof(std::uint32_t); }
  } bytes;
  return std::visit(bytes, p);
}

void write_ledger_csv(const std::vector<LedgerEntry>& ledger, std::ostream& out) {
  out << "round,from,to,payload_kind,bytes\n";
  for (const auto& e : ledger) {
    out << e.round << ',' << e.from << ',' << e.to << ',' << e.kind << ',' << e.bytes << '\n';
  }
}

CommunicationGraph::CommunicationGraph(const Scenario& s, std::vector<double> radius)
    : radius_(std::move(radius)), adjacency_(s.agents().size()) {
  if (radius_.size() != s.agents().size()) {
    throw Error(ErrorCode::InvalidArgument, "one radius per agent slot is required");
  }
  for (std::size_t i = 1; i < adjacency_.size(); ++i) {
    for (std::size_t l = i + 1; l < adjacency_.size(); ++l) {
      const double d = norm(s.agent(l).position() - s.agent(i).position());
      if (d <= std::max(radius_[i], radius_[l])) {
        adjacency_[i].push_back(l);
        adjacency_[l].push_back(i);
      }
    }
  }
}

CommunicationGraph CommunicationGraph::uniform(const Scenario& s, double radius) {
  return CommunicationGraph(s, std::vector<double>(s.agents().size(), radius));
}

double CommunicationGraph::connecting_radius(const Scenario& s) {
  // Longest edge of a minimum spanning tree (Prim).
  const std::size_t n = s.size();
  if (n <= 1) return 0.0;
  std::vector<double> best(n + 1, std::numeric_limits<double>::infinity());
  std::vector<std::uint8_t> in_tree(n + 1, 0);
  best[1] = 0.0;
  double longest = 0.0;
  for (std::size_t step = 0; step < n; ++step) {
    std::size_t pick = 0;
    for (std::size_t i = 1; i <= n; ++i) {
      if (!in_tree[i] && (pick == 0 || best[i] < best[pick])) pick = i;
    }
    in_tree[pick] = 1;
    longest = std::max(longest, best[pick]);
    for (std::size_t i = 1; i <= n; ++i) {
      if (!in_tree[i]) best[i] = std::min(best[i], norm(s.agent(i).position() - s.agent(pick).position()));
    }
  }
  return longest;
}

bool CommunicationGraph::connected() const {
  const std::size_t n = agent_count();
  if (n <= 1) return true;
  std::vector<std::uint8_t> seen(n + 1, 0);
  std::vector<std::size_t> stack{1};
  seen[1] = 1;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t w : adjacency_[v]) {
      if (!seen[w]) {
        seen[w] = 1;
        ++reached;
        stack.push_back(w);
      }
    }
  }
  return reached == n;
}

bool CommunicationGraph::linked(std::size_t i, std::size_t l) const {
  const auto& a = adjacency_.at(i);
  return std::find(a.begin(), a.end(), l) != a.end();
}

namespace {

/// Lock-step delivery: everything sent in round r is read in round r, in
/// (receiver, sender) order.
class RoundEngine {
 public:
  RoundEngine(const Scenario& s, std::vector<LedgerEntry>& ledger) : s_(s), ledger_(ledger), inbox_(s.agents().size()) {}

  void send(std::size_t from, std::size_t to, Payload payload) {
    Message m{from, to, round_, std::move(payload)};
    ledger_.push_back({round_, from, to, payload_kind(m.payload), payload_bytes(m.payload)});
    outbox_.push_back(std::move(m));
  }

  void deliver() {
    std::stable_sort(outbox_.begin(), outbox_.end(), [](const Message& a, const Message& b) {
      return a.to != b.to ? a.to < b.to : a.from < b.from;
    });
    for (auto& box : inbox_) box.clear();
    for (auto& m : outbox_) {
      if (auto* a = std::get_if<MetricAnnounce>(&m.payload)) {
        // The receiver's relative position measurement.
        a->relative = s_.agent(m.from).position() - s_.agent(m.to).position();
      }
      inbox_[m.to].push_back(std::move(m));
    }
    outbox_.clear();
  }

  const std::vector<Message>& inbox(std::size_t i) const { return inbox_[i]; }

  /// Relative position of a sender as measured by the receiver.
  Vec2 measure(std::size_t receiver, std::size_t sender) const {
    return s_.agent(sender).position() - s_.agent(receiver).position();
  }

  void next_round() { ++round_; }
  std::size_t round() const { return round_; }
  void set_round(std::size_t r) { round_ = r; }

 private:
  const Scenario& s_;
  std::vector<LedgerEntry>& ledger_;
  std::vector<std::vector<Message>> inbox_;
  std::vector<Message> outbox_;
  std::size_t round_ = 1;
};

}  // namespace

BootstrapResult bootstrap_network_params(const Scenario& s, const CommunicationGraph& graph,
                                         std::size_t max_rounds, double kappa, double tol) {
  if (!(kappa > 0.0 && kappa < 1.0)) throw Error(ErrorCode::InvalidArgument, "kappa must lie in (0, 1)");
  if (!graph.connected()) throw Error(ErrorCode::DisconnectedGraph, "bootstrap graph is disconnected");
  const std::size_t n = s.size();
  BootstrapResult out;
  RoundEngine engine(s, out.ledger);

  std::vector<double> min_mu(n + 1);
  std::vector<double> min_lambda(n + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    min_mu[i] = s.agent(i).mu();
    min_lambda[i] = lambda_min(s.agent(i).P());
  }
  for (bool changed = true; changed;) {
    if (out.flood_rounds >= max_rounds) throw Error(ErrorCode::NonConvergence, "flooding did not settle");
    ++out.flood_rounds;
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t l : graph.neighbors(i)) {
        engine.send(i, l, ScalarFlood{ScalarKind::MinMu, min_mu[i]});
        engine.send(i, l, ScalarFlood{ScalarKind::MinLambda, min_lambda[i]});
      }
    }
    engine.deliver();
    changed = false;
    for (std::size_t i = 1; i <= n; ++i) {
      for (const Message& m : engine.inbox(i)) {
        const auto& f = std::get<ScalarFlood>(m.payload);
        double& slot = f.kind == ScalarKind::MinMu ? min_mu[i] : min_lambda[i];
        if (f.value < slot) {
          slot = f.value;
          changed = true;
        }
      }
    }
    engine.next_round();
  }
  out.mu0 = min_mu[1];
  out.lambda0 = kappa * min_lambda[1];

  out.x0_offset.assign(n + 1, Vec2{});
  for (bool moving = n > 1; moving;) {
    if (out.average_rounds >= max_rounds) throw Error(ErrorCode::NonConvergence, "averaging did not converge");
    ++out.average_rounds;
    for (std::size_t i = 1; i <= n; ++i) {
      for (std::size_t l : graph.neighbors(i)) {
        engine.send(i, l, AverageRound{out.x0_offset[i], graph.neighbors(i).size()});
      }
    }
    engine.deliver();
    std::vector<Vec2> next = out.x0_offset;
    double step = 0.0;
    for (std::size_t i = 1; i <= n; ++i) {
      const std::size_t deg = graph.neighbors(i).size();
      Vec2 update;
      for (const Message& m : engine.inbox(i)) {
        const auto& a = std::get<AverageRound>(m.payload);
        const double w = 1.0 / (1.0 + static_cast<double>(std::max(deg, a.degree)));
        update += w * (engine.measure(i, m.from) + a.estimate - out.x0_offset[i]);
      }
      next[i] = out.x0_offset[i] + update;
      step = std::max(step, norm(update));
    }
    out.x0_offset = std::move(next);
    moving = step > tol;
    engine.next_round();
  }
  return out;
}

DistributedRun run_distributed_partition(const Scenario& s, const DistributedConfig& config) {
  const std::size_t n = s.size();
  DistributedRun run;

  std::vector<Peer> zeroth(n + 1);
  if (config.zeroth == ZerothSource::Bootstrap) {
    const double r = config.bootstrap_radius.value_or(CommunicationGraph::connecting_radius(s));
    run.bootstrap = bootstrap_network_params(s, CommunicationGraph::uniform(s, r), config.max_rounds, config.kappa,
                                             config.consensus_tol);
    for (std::size_t i = 1; i <= n; ++i) {
      zeroth[i] = {0, Sym2::scaled_identity(run.bootstrap.lambda0), run.bootstrap.mu0, run.bootstrap.x0_offset[i]};
    }
    run.ledger = run.bootstrap.ledger;
  } else {
    for (std::size_t i = 1; i <= n; ++i) {
      zeroth[i] = {0, s.zeroth().P(), s.zeroth().mu(), s.zeroth().position() - s.agent(i).position()};
    }
  }

  std::vector<double> radius(n + 1, 0.0);
  run.agents.resize(n);
  for (std::size_t i = 1; i <= n; ++i) {
    AgentRun& a = run.agents[i - 1];
    a.agent = i;
    const LocalView bare(i, s.agent(i).P(), s.agent(i).mu(), {zeroth[i]}, s.domain().translated(-s.agent(i).position()));
    a.enclosure = enclosure_curve(bare, s.agent(i).position(), config.phi_count);
    switch (config.radius_mode) {
      case RadiusMode::Auto: radius[i] = a.enclosure.eta_lower; break;
      case RadiusMode::Fixed: radius[i] = config.radius; break;
      case RadiusMode::Infinite: radius[i] = std::numeric_limits<double>::infinity(); break;
    }
    a.radius = radius[i];
  }

  const CommunicationGraph graph(s, radius);
  RoundEngine engine(s, run.ledger);
  engine.set_round(run.bootstrap.flood_rounds + run.bootstrap.average_rounds + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    for (std::size_t l : graph.neighbors(i)) {
      engine.send(i, l, MetricAnnounce{s.agent(i).P(), s.agent(i).mu(), {}});
    }
  }
  engine.deliver();

  std::vector<std::set<std::size_t>> truth;
  if (config.oracle != nullptr) {
    const auto adj = adjacency(*config.oracle);
    truth.assign(adj.begin(), adj.end());
  }

  run.cells.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    AgentRun& a = run.agents[i - 1];
    std::vector<Peer> table{zeroth[i]};
    for (const Message& m : engine.inbox(i)) {
      const auto& ann = std::get<MetricAnnounce>(m.payload);
      a.heard.push_back(m.from);
      if (a.enclosure.encloses(ann.relative)) table.push_back({m.from, ann.P, ann.mu, ann.relative});
    }
    if (!truth.empty()) {
      for (std::size_t l : truth[i]) {
        if (l != 0 && std::find(a.heard.begin(), a.heard.end(), l) == a.heard.end()) {
          throw Error(ErrorCode::RadiusTooSmall,
                      "agent " + std::to_string(i) + " did not hear its neighbour " + std::to_string(l));
        }
      }
    }
    for (const Peer& p : table) a.used.push_back(p.index);
    const LocalView view(i, s.agent(i).P(), s.agent(i).mu(), std::move(table),
                         s.domain().translated(-s.agent(i).position()));
    Cell cell = compute_cell(view, s.agent(i).position(), config.theta_count);
    for (const auto& slice : cell.slices()) {
      a.ray_messages.push_back(slice.peer_candidates);
      a.sort_sizes.push_back(slice.candidate_count);
    }
    run.cells.push_back(std::move(cell));
  }
  return run;
}

std::vector<AgentComplexity> message_complexity_report(const DistributedRun& run) {
  const std::size_t n = run.agents.size();
  std::vector<AgentComplexity> out;
  for (const AgentRun& a : run.agents) {
    AgentComplexity c;
    c.agent = a.agent;
    c.heard = a.heard.size();
    c.zeta = n > 1 ? static_cast<double>(c.heard) / static_cast<double>(n - 1) : 0.0;
    for (const auto& e : run.ledger) {
      if (e.from != a.agent) continue;
      if (e.kind == "MetricAnnounce") {
        ++c.discovery_messages;
      } else {
        ++c.bootstrap_messages;
      }
    }
    std::size_t total = 0;
    for (std::size_t k = 0; k < a.ray_messages.size(); ++k) {
      c.max_ray_messages = std::max(c.max_ray_messages, a.ray_messages[k]);
      c.max_sort_size = std::max(c.max_sort_size, a.sort_sizes[k]);
      total += a.ray_messages[k];
    }
    c.mean_ray_messages = a.ray_messages.empty() ? 0.0 : static_cast<double>(total) / a.ray_messages.size();
    c.within_bound = c.max_ray_messages <= 2 * c.heard;
    out.push_back(c);
  }
  return out;
}

}  // namespace hqvp
