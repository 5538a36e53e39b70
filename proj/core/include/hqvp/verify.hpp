#pragma once

// Cross-checks between the ray-based cells, the brute-force grid and the
// topology bounds. Each check reports what it measured.

#include <cstddef>
#include <string>
#include <vector>

#include "hqvp/cell.hpp"
#include "hqvp/distsim.hpp"
#include "hqvp/io.hpp"
#include "hqvp/metrics.hpp"
#include "hqvp/oracle.hpp"
#include "hqvp/topology.hpp"

namespace hqvp {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Every kept-segment end and midpoint lies in E_i ∩ S (slack 1e-9 diam S).
CheckResult check_containment(const Scenario& s, const std::vector<Cell>& cells);

/// Boundary points off bd(S) have |Delta_i| < 1e-8 (1 + delta_i); kept
/// midpoints have Delta_i >= -1e-8 (1 + delta_i) and dropped ones < 1e-8 (1 + delta_i).
CheckResult check_certification(const Scenario& s, const std::vector<Cell>& cells);

struct AgreementStats {
  std::size_t points = 0;
  std::size_t agree = 0;
  std::size_t unexplained = 0;         // disagreements farther than one grid diagonal from the certified boundary
  double max_boundary_distance = 0.0;  // over all disagreements
  double fraction() const { return points ? static_cast<double>(agree) / static_cast<double>(points) : 1.0; }
};

/// A grid point agrees when the set of cells claiming it is exactly {owner},
/// or empty when the owner is agent 0. The certified boundary is the set of
/// certified points joined by the chords Cell::contains interpolates.
AgreementStats oracle_agreement(const Scenario& s, const std::vector<Cell>& cells, const OwnerGrid& oracle);
CheckResult check_oracle_agreement(const AgreementStats& stats, double required = 0.995);

/// Points claimed by two or more cells sit within one grid diagonal of the
/// certified boundary.
CheckResult check_partition(const Scenario& s, const std::vector<Cell>& cells, std::size_t G);

struct SupersetStats {
  std::size_t agents = 0;
  std::size_t superset_violations = 0;
  std::size_t enclosure_violations = 0;
  std::size_t radius_violations = 0;
};
SupersetStats topology_supersets(const Scenario& s, const OwnerGrid& oracle, std::size_t phi_count);

/// Largest per-agent symmetric Hausdorff distance between boundary point sets.
double boundary_hausdorff(const std::vector<Cell>& a, const std::vector<Cell>& b);

/// The full invariant suite on one scenario file.
std::vector<CheckResult> verify_scenario(const ScenarioFile& file);

}  // namespace hqvp
