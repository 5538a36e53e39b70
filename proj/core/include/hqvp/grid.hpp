#pragma once

#include <cstddef>

#include "hqvp/geometry.hpp"

namespace hqvp {

/// G x G lattice of cell centers over the domain's bounding box.
struct GridSpec {
  Vec2 lo;
  Vec2 hi;
  std::size_t G = 0;

  static GridSpec covering(const ConvexDomain& domain, std::size_t G) {
    return {domain.lower_corner(), domain.upper_corner(), G};
  }

  double hx() const { return (hi.x - lo.x) / static_cast<double>(G); }
  double hy() const { return (hi.y - lo.y) / static_cast<double>(G); }
  double cell_area() const { return hx() * hy(); }
  std::size_t size() const { return G * G; }
  std::size_t index(std::size_t ix, std::size_t iy) const { return iy * G + ix; }
  Vec2 point(std::size_t ix, std::size_t iy) const {
    return {lo.x + (static_cast<double>(ix) + 0.5) * hx(), lo.y + (static_cast<double>(iy) + 0.5) * hy()};
  }
};

}  // namespace hqvp
