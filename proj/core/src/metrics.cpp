#include "hqvp/metrics.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "hqvp/errors.hpp"

namespace hqvp {

ProximityMetric::ProximityMetric(Sym2 P, double mu, Vec2 position) : P_(P), mu_(mu), x_(position) {
  if (!is_positive_definite(P_)) throw Error(ErrorCode::NonSPDMatrix, "distance operator must be SPD");
  if (!(mu_ >= 0.0) || !std::isfinite(mu_)) throw Error(ErrorCode::NegativeGain, "gain must be >= 0");
  if (!std::isfinite(x_.x) || !std::isfinite(x_.y)) {
    throw Error(ErrorCode::InvalidArgument, "position must be finite");
  }
}

double evaluate(const ProximityMetric& m, Vec2 x) { return m.P().quad(x - m.position()) + m.mu(); }

Sym2 symmetrize(double a, double b, double c, double d) {
  const double scale = std::max({std::abs(a), std::abs(b), std::abs(c), std::abs(d)});
  if (std::abs(b - c) > 1e-10 * scale) {
    throw Error(ErrorCode::NonSPDMatrix, "matrix is not symmetric");
  }
  return {a, 0.5 * (b + c), d};
}

ProximityMetric from_gaussian(Vec2 mean, Sym2 covariance) {
  if (!is_positive_definite(covariance)) {
    throw Error(ErrorCode::NonSPDCovariance, "covariance must be SPD");
  }
  double mu = std::log(2.0 * std::numbers::pi * std::sqrt(covariance.det()));
  // The admissibility boundary det = 1/(4 pi^2) lands within rounding of zero.
  if (std::abs(mu) < 1e-14) mu = 0.0;
  if (mu < 0.0) {
    throw Error(ErrorCode::NegativeGainViolation, "log(2 pi sqrt(det cov)) is negative");
  }
  return {0.5 * inverse(covariance), mu, mean};
}

std::string AssumptionReport::describe() const {
  std::ostringstream out;
  for (auto i : outside_domain) out << "agent " << i << " lies outside the domain\n";
  for (auto [i, j] : coincident) out << "agents " << i << " and " << j << " share a position\n";
  for (auto [i, j] : separation) {
    out << "separation violated for pair (" << i << ", " << j << "): agent " << j
        << "'s metric at x_" << i << " does not exceed mu_" << i << "\n";
  }
  for (auto i : dominance) out << "agent " << i << " does not dominate agent 0 (P_i - P_0 or mu_i)\n";
  if (zeroth_gain_negative) out << "agent 0 has negative gain\n";
  return out.str();
}

AssumptionReport validate_assumptions(const ConvexDomain& domain,
                                      const std::vector<ProximityMetric>& agents) {
  if (agents.empty()) throw Error(ErrorCode::InvalidArgument, "agent list is empty");
  AssumptionReport report;
  const double eps = domain.epsilon();
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (!domain.contains(agents[i].position(), eps)) report.outside_domain.push_back(i);
  }
  for (std::size_t i = 0; i < agents.size(); ++i) {
    for (std::size_t j = 0; j < agents.size(); ++j) {
      if (i == j) continue;
      if (i < j && agents[i].position() == agents[j].position()) report.coincident.emplace_back(i, j);
      if (!(evaluate(agents[j], agents[i].position()) > agents[i].mu())) {
        report.separation.emplace_back(i, j);
      }
    }
  }
  const ProximityMetric& zero = agents.front();
  report.zeroth_gain_negative = zero.mu() < 0.0;
  for (std::size_t i = 1; i < agents.size(); ++i) {
    if (!is_positive_definite(agents[i].P() - zero.P()) || agents[i].mu() < zero.mu()) {
      report.dominance.push_back(i);
    }
  }
  return report;
}

Scenario::Scenario(ConvexDomain domain, std::vector<ProximityMetric> agents, bool)
    : domain_(std::move(domain)), agents_(std::move(agents)) {
  if (agents_.empty()) throw Error(ErrorCode::InvalidArgument, "scenario needs agent 0");
}

Scenario::Scenario(ConvexDomain domain, std::vector<ProximityMetric> agents)
    : Scenario(std::move(domain), std::move(agents), true) {
  const auto report = validate_assumptions(domain_, agents_);
  if (!report.ok()) throw Error(ErrorCode::AssumptionViolation, "\n" + report.describe());
}

Scenario Scenario::unchecked(ConvexDomain domain, std::vector<ProximityMetric> agents) {
  return Scenario(std::move(domain), std::move(agents), true);
}

Scenario Scenario::translated(Vec2 shift) const {
  std::vector<ProximityMetric> moved;
  moved.reserve(agents_.size());
  for (const auto& a : agents_) moved.push_back(a.moved_to(a.position() + shift));
  return Scenario::unchecked(domain_.translated(shift), std::move(moved));
}

bool check_sublevel_containment(const Scenario& s, std::size_t i, Vec2 anchor, double gamma) {
  if (i == 0 || i > s.size()) throw Error(ErrorCode::InvalidArgument, "agent index out of range");
  double max_mu = 0.0;
  for (const auto& a : s.agents()) max_mu = std::max(max_mu, a.mu());
  if (!(gamma > max_mu)) throw Error(ErrorCode::GammaTooSmall, "gamma must exceed every gain");
  if (!s.domain().contains(anchor, s.epsilon())) {
    throw Error(ErrorCode::InvalidArgument, "anchor must lie in the domain");
  }
  const ProximityMetric inner = s.agent(i).moved_to(anchor);
  const ProximityMetric outer = s.zeroth().moved_to(anchor);
  const Ellipsoid boundary(anchor, inner.P(), gamma - inner.mu());
  constexpr int samples = 256;
  for (int k = 0; k < samples; ++k) {
    const Vec2 z = boundary.boundary_point(2.0 * std::numbers::pi * k / samples);
    if (!(evaluate(outer, z) < gamma * (1.0 - 1e-12))) return false;
  }
  return true;
}

}  // namespace hqvp
