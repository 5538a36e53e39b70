#pragma once

// Per-ray cell computation and the theta sweep that assembles a cell.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "hqvp/envelope.hpp"
#include "hqvp/geometry.hpp"
#include "hqvp/grid.hpp"
#include "hqvp/metrics.hpp"

namespace hqvp {

/// Index sets of one ray, 1-based over the segments I^1 .. I^{M+1}.
struct SliceIndexSets {
  std::vector<int> plus;
  std::vector<int> minus;
  std::vector<int> kept;      // M_f
  std::vector<int> g_plus;
  std::vector<int> g_minus;
  std::vector<int> boundary;  // union of g_plus and g_minus, ascending
};

/// signs[m - 1] is the midpoint sign of segment m: +1, -1, or 0 when the
/// envelope is within the boundary band (treated as kept).
SliceIndexSets classify_signs(const std::vector<int>& signs);

struct RadialInterval {
  double from = 0.0;
  double to = 0.0;
};

struct SliceBoundaryPoint {
  double rho = 0.0;
  bool on_domain_boundary = false;
};

struct CellSlice {
  double theta = 0.0;
  double rho_bar = 0.0;                    // distance to the exit from E_i ∩ S
  bool exit_on_domain = false;
  std::vector<double> crossings;           // true crossings p_1 .. p_M
  std::vector<int> signs;                  // one per segment
  SliceIndexSets sets;
  std::vector<RadialInterval> segments;    // maximal kept intervals, outward
  std::vector<SliceBoundaryPoint> boundary;
  std::size_t candidate_count = 0;
  std::size_t peer_candidates = 0;         // candidates contributed by real peers
  bool degenerate_pair = false;
};

struct CandidateSet {
  std::vector<double> rho;  // ascending, deduplicated
  std::size_t from_real_peers = 0;
  bool degenerate = false;
};

CandidateSet candidate_crossings(const LocalView& view, Vec2 direction, double rho_bar);
std::vector<Vec2> candidate_crossings(const Scenario& s, std::size_t i, const Ray& ray);
std::vector<Vec2> true_crossings(const Scenario& s, std::size_t i, const std::vector<Vec2>& candidates);

CellSlice classify_slice(const LocalView& view, double theta);
CellSlice classify_slice(const Scenario& s, std::size_t i, const Ray& ray);

class Cell {
 public:
  Cell(std::size_t agent, Vec2 origin, std::vector<CellSlice> slices);

  std::size_t agent() const { return agent_; }
  Vec2 origin() const { return origin_; }
  const std::vector<CellSlice>& slices() const { return slices_; }
  int components() const { return components_; }
  double area() const { return area_; }
  double max_radius() const { return max_radius_; }

  Vec2 point(const CellSlice& slice, double rho) const { return origin_ + rho * unit_direction(slice.theta); }

  /// Whether p falls in the polar wedges swept by the kept segments.
  bool contains(Vec2 p) const;

  std::vector<Vec2> boundary_points(bool include_domain_boundary = true) const;

 private:
  std::size_t agent_;
  Vec2 origin_;
  std::vector<CellSlice> slices_;
  int components_ = 0;
  double area_ = 0.0;
  double max_radius_ = 0.0;
};

/// Slices at theta_k = 2 pi k / theta_count.
Cell compute_cell(const LocalView& view, Vec2 origin, std::size_t theta_count);
Cell compute_cell(const Scenario& s, std::size_t i, std::size_t theta_count);
std::vector<Cell> compute_cells(const Scenario& s, std::size_t theta_count);

/// Per grid point: how many cells claim it (points outside S get 0 and are
/// excluded through `in_domain`).
struct ClaimGrid {
  GridSpec grid;
  std::vector<std::uint8_t> in_domain;
  std::vector<std::uint16_t> claims;
  std::vector<std::int32_t> first_claimer;  // -1 when unclaimed
};

ClaimGrid claim_grid(const Scenario& s, const std::vector<Cell>& cells, std::size_t G);

/// Grid points of S claimed by no agent cell.
struct HoleMask {
  GridSpec grid;
  std::vector<std::uint8_t> hole;
  std::size_t count() const;
  double area() const { return static_cast<double>(count()) * grid.cell_area(); }
};

HoleMask coverage_hole(const Scenario& s, const std::vector<Cell>& cells, std::size_t G);

}  // namespace hqvp
