#pragma once

#include <cstddef>
#include <cmath>
#include <vector>

#include "hqvp/bisector.hpp"
#include "hqvp/geometry.hpp"
#include "hqvp/metrics.hpp"

namespace hqvp {

/// min over the other agents of their metric, minus the own metric.
struct EnvelopeValue {
  double value = 0.0;
  std::size_t argmin_index = 0;  // ties go to the smallest index
  double own = 0.0;              // the own metric at the point
};

/// |value| below 1e-9 (1 + |own|) counts as a boundary point.
double boundary_tolerance(double own);
inline bool on_boundary(const EnvelopeValue& v) { return std::abs(v.value) < boundary_tolerance(v.own); }

EnvelopeValue delta_i(const Scenario& s, std::size_t i, Vec2 x);

struct GlobalEnvelope {
  double value = 0.0;
  std::size_t owner = 0;
  bool tie = false;
};
GlobalEnvelope delta_global(const Scenario& s, Vec2 x);

/// Throws EmptyIndexSet for an empty set and InvalidArgument if it contains i.
EnvelopeValue delta_i_restricted(const Scenario& s, std::size_t i,
                                 const std::vector<std::size_t>& index_set, Vec2 x);

struct OperatorGain {
  Sym2 P;
  double mu = 0.0;
};

/// Same envelope from relative data only: offsets are x_l - x_i and `offset`
/// is x - x_i. argmin_index is a position in the lists.
EnvelopeValue delta_i_relative(const std::vector<Vec2>& relative_positions,
                               const std::vector<OperatorGain>& operators, OperatorGain own,
                               Vec2 offset);

/// What agent i knows about a peer: its metric and where it sits relative to i.
struct Peer {
  std::size_t index = 0;
  Sym2 P;
  double mu = 0.0;
  Vec2 offset;  // x_peer - x_i
};

/// Everything agent i needs to compute its cell, expressed in the frame
/// centered at x_i. Peers are sorted by index and must include agent 0.
class LocalView {
 public:
  LocalView(std::size_t self, Sym2 P, double mu, std::vector<Peer> peers, ConvexDomain local_domain);

  /// All other agents of the scenario.
  static LocalView centralized(const Scenario& s, std::size_t i);
  /// Agent 0 plus the listed peers.
  static LocalView restricted(const Scenario& s, std::size_t i, const std::vector<std::size_t>& peers);

  std::size_t self() const { return self_; }
  const Sym2& P() const { return P_; }
  double mu() const { return mu_; }
  const std::vector<Peer>& peers() const { return peers_; }
  const Peer& zeroth() const { return peers_.front(); }
  const ConvexDomain& domain() const { return domain_; }

  double own_value(Vec2 offset) const { return P_.quad(offset) + mu_; }
  EnvelopeValue delta(Vec2 offset) const;

  /// E_i in the local frame.
  const BoundingEllipse& bounding() const { return bounding_; }

 private:
  std::size_t self_;
  Sym2 P_;
  double mu_;
  std::vector<Peer> peers_;
  ConvexDomain domain_;
  BoundingEllipse bounding_;
};

}  // namespace hqvp
