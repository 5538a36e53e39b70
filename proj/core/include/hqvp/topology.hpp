#pragma once

// Neighbor discovery before any cell is known: the bound on the own metric
// over E_i ∩ S, the neighbor superset, the enclosure region around E_i and the
// communication radius that reaches every possible neighbor.

#include <cstddef>
#include <optional>
#include <vector>

#include "hqvp/envelope.hpp"
#include "hqvp/geometry.hpp"
#include "hqvp/metrics.hpp"
#include "hqvp/oracle.hpp"

namespace hqvp {

inline constexpr std::size_t kDefaultBoundarySamples = 720;

struct NeighborEnclosure {
  std::size_t agent = 0;
  Vec2 origin;                 // x_i; everything else is relative to it
  std::size_t phi_count = 0;
  double delta_bar = 0.0;
  double r = 0.0;              // delta_bar - mu_0
  double eta_lower = 0.0;
  std::vector<Vec2> curve;     // C_i(phi_k) - x_i
  Vec2 ellipse_center;         // center of E_i, relative
  Sym2 ellipse_shape;          // P_i - P_0
  double ell = 0.0;
  Sym2 P0;

  std::vector<Vec2> curve_absolute() const;
  double region_area() const;

  /// Whether a point (given relative to x_i) lies in the enclosure region:
  /// inside the sampled polygon, or within P_0-level r of E_i.
  bool encloses(Vec2 offset) const;
};

double delta_bar(const LocalView& view, std::size_t boundary_samples = kDefaultBoundarySamples);
double delta_bar(const Scenario& s, std::size_t i, std::size_t boundary_samples = kDefaultBoundarySamples);

/// Agents whose metric drops to delta_bar somewhere in E_i ∩ S.
std::vector<std::size_t> neighbor_superset(const LocalView& view, double delta_bar_i,
                                           std::size_t boundary_samples = kDefaultBoundarySamples);
std::vector<std::size_t> neighbor_superset(const Scenario& s, std::size_t i, double delta_bar_i,
                                           std::size_t boundary_samples = kDefaultBoundarySamples);

/// C_i(phi) = c + sqrt(l) Q^{-1/2} e + sqrt(r) P_0^{-1} Q^{1/2} e / |P_0^{-1/2} Q^{1/2} e|
/// at phi_k = 2 pi k / phi_count, with Q = P_i - P_0.
NeighborEnclosure enclosure_curve(const LocalView& view, Vec2 origin, std::size_t phi_count,
                                  std::size_t boundary_samples = kDefaultBoundarySamples);
NeighborEnclosure enclosure_curve(const Scenario& s, std::size_t i, std::size_t phi_count,
                                  std::size_t boundary_samples = kDefaultBoundarySamples);

std::vector<std::size_t> enclosed_agents(const Scenario& s, const NeighborEnclosure& enclosure);

struct TopologyReport {
  std::size_t agent = 0;
  NeighborEnclosure enclosure;
  std::vector<std::size_t> superset;
  std::vector<std::size_t> enclosed;
  std::optional<std::vector<std::size_t>> true_neighbors;
};

TopologyReport topology_report(const Scenario& s, std::size_t i, std::size_t phi_count,
                               const OwnerGrid* oracle = nullptr);

}  // namespace hqvp
