#pragma once

#include <string>
#include <vector>

#include "hqvp/cell.hpp"
#include "hqvp/metrics.hpp"
#include "hqvp/topology.hpp"

namespace hqvp {

struct RenderOptions {
  double pixels_per_unit = 60.0;
  bool draw_ellipses = true;      // E_i, dash-dotted
  bool draw_enclosures = true;    // enclosure curves, dashed
  bool draw_contours = false;     // iso-lines of each agent's own metric inside its cell
  std::vector<std::size_t> highlight;  // agents whose E_i / enclosure are drawn; empty = all
};

/// Cells filled per agent (golden-ratio hue stepping), the hole in the
/// background color, generators as crosses.
std::string render_svg(const Scenario& s, const std::vector<Cell>& cells,
                       const std::vector<NeighborEnclosure>& enclosures, const RenderOptions& options = {});

}  // namespace hqvp
