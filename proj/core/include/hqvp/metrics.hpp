#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "hqvp/geometry.hpp"
#include "hqvp/linalg.hpp"

namespace hqvp {

/// delta(x) = (x - position)ᵀ P (x - position) + mu
class ProximityMetric {
 public:
  ProximityMetric(Sym2 P, double mu, Vec2 position);

  const Sym2& P() const { return P_; }
  double mu() const { return mu_; }
  Vec2 position() const { return x_; }

  ProximityMetric moved_to(Vec2 position) const { return {P_, mu_, position}; }

 private:
  Sym2 P_;
  double mu_;
  Vec2 x_;
};

double evaluate(const ProximityMetric& m, Vec2 x);

/// Builds a symmetric matrix from possibly asymmetric entries [[a, b], [c, d]].
/// Off-diagonals are averaged; a mismatch beyond 1e-10 of the matrix norm is rejected.
Sym2 symmetrize(double a, double b, double c, double d);

/// Metric whose value is -log of the bivariate normal density N(mean, cov).
ProximityMetric from_gaussian(Vec2 mean, Sym2 covariance);

struct AssumptionReport {
  std::vector<std::size_t> outside_domain;
  std::vector<std::pair<std::size_t, std::size_t>> coincident;
  // (i, j) with (x_j - x_i)ᵀ P_j (x_j - x_i) + mu_j <= mu_i
  std::vector<std::pair<std::size_t, std::size_t>> separation;
  // i >= 1 with P_i - P_0 not positive definite or mu_i < mu_0
  std::vector<std::size_t> dominance;
  bool zeroth_gain_negative = false;

  bool ok() const {
    return outside_domain.empty() && coincident.empty() && separation.empty() &&
           dominance.empty() && !zeroth_gain_negative;
  }
  std::string describe() const;
};

/// Workspace plus the extended network; agent 0 is the virtual station.
class Scenario {
 public:
  /// Throws AssumptionViolation (message carries the report) unless valid.
  Scenario(ConvexDomain domain, std::vector<ProximityMetric> agents);

  /// Skips validation; for probing invalid configurations directly.
  static Scenario unchecked(ConvexDomain domain, std::vector<ProximityMetric> agents);

  const ConvexDomain& domain() const { return domain_; }
  const std::vector<ProximityMetric>& agents() const { return agents_; }
  const ProximityMetric& agent(std::size_t i) const { return agents_.at(i); }
  const ProximityMetric& zeroth() const { return agents_.front(); }

  /// Number of real agents n (the network has n + 1 metrics).
  std::size_t size() const { return agents_.size() - 1; }

  double epsilon() const { return domain_.epsilon(); }

  Scenario translated(Vec2 shift) const;

 private:
  Scenario(ConvexDomain domain, std::vector<ProximityMetric> agents, bool);

  ConvexDomain domain_;
  std::vector<ProximityMetric> agents_;
};

AssumptionReport validate_assumptions(const ConvexDomain& domain,
                                      const std::vector<ProximityMetric>& agents);
inline AssumptionReport validate_assumptions(const Scenario& s) {
  return validate_assumptions(s.domain(), s.agents());
}

/// Whether the gamma-sublevel set of agent i's metric re-centered at `anchor`
/// lies strictly inside the corresponding set of agent 0, tested on 256
/// points of the inner boundary.
bool check_sublevel_containment(const Scenario& s, std::size_t i, Vec2 anchor, double gamma);

}  // namespace hqvp
