#pragma once

// Brute-force reference partition: owner of every grid point by direct argmin.

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <set>
#include <vector>

#include "hqvp/grid.hpp"
#include "hqvp/metrics.hpp"

namespace hqvp {

struct OwnerGrid {
  GridSpec grid;
  std::size_t agent_count = 0;         // n + 1
  std::vector<std::int32_t> owner;     // -1 outside the domain
  std::vector<std::uint8_t> tie;

  std::int32_t at(std::size_t ix, std::size_t iy) const { return owner[grid.index(ix, iy)]; }
};

/// Throws InvalidArgument for G < 16.
OwnerGrid rasterize(const Scenario& s, std::size_t G);

/// 8-connected components of the grid points owned by i.
int component_count(const OwnerGrid& grid, std::size_t i);

/// Owners that touch each other through an 8-neighbourhood.
std::vector<std::set<std::size_t>> adjacency(const OwnerGrid& grid);

double area(const OwnerGrid& grid, std::size_t i);

std::set<std::size_t> true_neighbors_from_oracle(const OwnerGrid& grid, std::size_t i);

/// Number of distinct owners within the 3x3 block around (ix, iy).
int owners_around(const OwnerGrid& grid, std::size_t ix, std::size_t iy);

void write_pgm(const OwnerGrid& grid, std::ostream& out);
void write_csv(const OwnerGrid& grid, std::ostream& out);

}  // namespace hqvp
