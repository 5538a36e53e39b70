#include "hqvp/envelope.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "hqvp/errors.hpp"

namespace hqvp {

double boundary_tolerance(double own) { return 1e-9 * (1.0 + std::abs(own)); }

EnvelopeValue delta_i(const Scenario& s, std::size_t i, Vec2 x) {
  EnvelopeValue v;
  v.own = evaluate(s.agent(i), x);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < s.agents().size(); ++l) {
    if (l == i) continue;
    const double d = evaluate(s.agent(l), x);
    if (d < best) {
      best = d;
      v.argmin_index = l;
    }
  }
  v.value = best - v.own;
  return v;
}

GlobalEnvelope delta_global(const Scenario& s, Vec2 x) {
  GlobalEnvelope g;
  g.value = std::numeric_limits<double>::infinity();
  for (std::size_t l = 0; l < s.agents().size(); ++l) {
    const double d = evaluate(s.agent(l), x);
    if (d < g.value) {
      g.value = d;
      g.owner = l;
      g.tie = false;
    } else if (d == g.value) {
      g.tie = true;
    }
  }
  return g;
}

EnvelopeValue delta_i_restricted(const Scenario& s, std::size_t i,
                                 const std::vector<std::size_t>& index_set, Vec2 x) {
  if (index_set.empty()) throw Error(ErrorCode::EmptyIndexSet, "restricted envelope needs peers");
  std::vector<std::size_t> sorted = index_set;
  std::sort(sorted.begin(), sorted.end());
  EnvelopeValue v;
  v.own = evaluate(s.agent(i), x);
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t l : sorted) {
    if (l == i) throw Error(ErrorCode::InvalidArgument, "index set must exclude the agent itself");
    const double d = evaluate(s.agent(l), x);
    if (d < best) {
      best = d;
      v.argmin_index = l;
    }
  }
  v.value = best - v.own;
  return v;
}

EnvelopeValue delta_i_relative(const std::vector<Vec2>& relative_positions,
                               const std::vector<OperatorGain>& operators, OperatorGain own,
                               Vec2 offset) {
  if (relative_positions.empty() || relative_positions.size() != operators.size()) {
    throw Error(ErrorCode::InvalidArgument, "relative lists must be aligned and non-empty");
  }
  EnvelopeValue v;
  v.own = own.P.quad(offset) + own.mu;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < operators.size(); ++k) {
    const double d = operators[k].P.quad(offset - relative_positions[k]) + operators[k].mu;
    if (d < best) {
      best = d;
      v.argmin_index = k;
    }
  }
  v.value = best - v.own;
  return v;
}

namespace {

BoundingEllipse local_bounding(Sym2 P, double mu, const Peer& zero) {
  return bounding_ellipse(ProximityMetric(P, mu, {0.0, 0.0}), ProximityMetric(zero.P, zero.mu, zero.offset));
}

}  // namespace

LocalView::LocalView(std::size_t self, Sym2 P, double mu, std::vector<Peer> peers,
                     ConvexDomain local_domain)
    : self_(self),
      P_(P),
      mu_(mu),
      peers_([&] {
        std::sort(peers.begin(), peers.end(), [](const Peer& a, const Peer& b) { return a.index < b.index; });
        if (peers.empty() || peers.front().index != 0) {
          throw Error(ErrorCode::EmptyIndexSet, "local view must know agent 0");
        }
        for (const auto& p : peers) {
          if (p.index == self) throw Error(ErrorCode::InvalidArgument, "peer list contains the agent itself");
        }
        return std::move(peers);
      }()),
      domain_(std::move(local_domain)),
      bounding_(local_bounding(P_, mu_, peers_.front())) {}

LocalView LocalView::centralized(const Scenario& s, std::size_t i) {
  std::vector<std::size_t> all;
  for (std::size_t l = 1; l < s.agents().size(); ++l) {
    if (l != i) all.push_back(l);
  }
  return restricted(s, i, all);
}

LocalView LocalView::restricted(const Scenario& s, std::size_t i, const std::vector<std::size_t>& peers) {
  if (i == 0 || i > s.size()) throw Error(ErrorCode::InvalidArgument, "agent index out of range");
  const Vec2 xi = s.agent(i).position();
  std::vector<Peer> table;
  table.push_back({0, s.zeroth().P(), s.zeroth().mu(), s.zeroth().position() - xi});
  for (std::size_t l : peers) {
    if (l == 0) continue;
    const auto& m = s.agent(l);
    table.push_back({l, m.P(), m.mu(), m.position() - xi});
  }
  return LocalView(i, s.agent(i).P(), s.agent(i).mu(), std::move(table), s.domain().translated(-xi));
}

EnvelopeValue LocalView::delta(Vec2 offset) const {
  EnvelopeValue v;
  v.own = own_value(offset);
  double best = std::numeric_limits<double>::infinity();
  for (const Peer& p : peers_) {
    const double d = p.P.quad(offset - p.offset) + p.mu;
    if (d < best) {
      best = d;
      v.argmin_index = p.index;
    }
  }
  v.value = best - v.own;
  return v;
}

}  // namespace hqvp
