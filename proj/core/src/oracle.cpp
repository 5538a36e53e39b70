#include "hqvp/oracle.hpp"

#include <algorithm>
#include <ostream>

#include "hqvp/envelope.hpp"
#include "hqvp/errors.hpp"

namespace hqvp {

namespace {

template <typename F>
void for_each_neighbor(const GridSpec& g, std::size_t ix, std::size_t iy, F&& f) {
  for (int dy = -1; dy <= 1; ++dy) {
    for (int dx = -1; dx <= 1; ++dx) {
      if (dx == 0 && dy == 0) continue;
      const auto nx = static_cast<long>(ix) + dx;
      const auto ny = static_cast<long>(iy) + dy;
      if (nx < 0 || ny < 0 || nx >= static_cast<long>(g.G) || ny >= static_cast<long>(g.G)) continue;
      f(static_cast<std::size_t>(nx), static_cast<std::size_t>(ny));
    }
  }
}

}  // namespace

OwnerGrid rasterize(const Scenario& s, std::size_t G) {
  if (G < 16) throw Error(ErrorCode::InvalidArgument, "grid resolution must be at least 16");
  OwnerGrid out;
  out.grid = GridSpec::covering(s.domain(), G);
  out.agent_count = s.agents().size();
  out.owner.assign(out.grid.size(), -1);
  out.tie.assign(out.grid.size(), 0);
  for (std::size_t iy = 0; iy < G; ++iy) {
    for (std::size_t ix = 0; ix < G; ++ix) {
      const Vec2 p = out.grid.point(ix, iy);
      if (!s.domain().contains(p, s.epsilon())) continue;
      const GlobalEnvelope g = delta_global(s, p);
      out.owner[out.grid.index(ix, iy)] = static_cast<std::int32_t>(g.owner);
      out.tie[out.grid.index(ix, iy)] = g.tie ? 1 : 0;
    }
  }
  return out;
}

int component_count(const OwnerGrid& grid, std::size_t i) {
  const auto target = static_cast<std::int32_t>(i);
  std::vector<std::uint8_t> seen(grid.owner.size(), 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack;
  int components = 0;
  for (std::size_t iy = 0; iy < grid.grid.G; ++iy) {
    for (std::size_t ix = 0; ix < grid.grid.G; ++ix) {
      const std::size_t k = grid.grid.index(ix, iy);
      if (grid.owner[k] != target || seen[k]) continue;
      ++components;
      seen[k] = 1;
      stack.emplace_back(ix, iy);
      while (!stack.empty()) {
        const auto [cx, cy] = stack.back();
        stack.pop_back();
        for_each_neighbor(grid.grid, cx, cy, [&](std::size_t nx, std::size_t ny) {
          const std::size_t n = grid.grid.index(nx, ny);
          if (grid.owner[n] == target && !seen[n]) {
            seen[n] = 1;
            stack.emplace_back(nx, ny);
          }
        });
      }
    }
  }
  return components;
}

std::vector<std::set<std::size_t>> adjacency(const OwnerGrid& grid) {
  std::vector<std::set<std::size_t>> out(grid.agent_count);
  for (std::size_t iy = 0; iy < grid.grid.G; ++iy) {
    for (std::size_t ix = 0; ix < grid.grid.G; ++ix) {
      const auto a = grid.at(ix, iy);
      if (a < 0) continue;
      for_each_neighbor(grid.grid, ix, iy, [&](std::size_t nx, std::size_t ny) {
        const auto b = grid.at(nx, ny);
        if (b >= 0 && b != a) out[static_cast<std::size_t>(a)].insert(static_cast<std::size_t>(b));
      });
    }
  }
  return out;
}

double area(const OwnerGrid& grid, std::size_t i) {
  const auto n = std::count(grid.owner.begin(), grid.owner.end(), static_cast<std::int32_t>(i));
  return static_cast<double>(n) * grid.grid.cell_area();
}

std::set<std::size_t> true_neighbors_from_oracle(const OwnerGrid& grid, std::size_t i) {
  return adjacency(grid).at(i);
}

int owners_around(const OwnerGrid& grid, std::size_t ix, std::size_t iy) {
  std::set<std::int32_t> seen;
  if (grid.at(ix, iy) >= 0) seen.insert(grid.at(ix, iy));
  for_each_neighbor(grid.grid, ix, iy, [&](std::size_t nx, std::size_t ny) {
    if (grid.at(nx, ny) >= 0) seen.insert(grid.at(nx, ny));
  });
  return static_cast<int>(seen.size());
}

void write_pgm(const OwnerGrid& grid, std::ostream& out) {
  const std::size_t G = grid.grid.G;
  out << "P2\n" << G << ' ' << G << "\n255\n";
  const double step = grid.agent_count > 1 ? 254.0 / static_cast<double>(grid.agent_count - 1) : 0.0;
  // Image rows run top to bottom, grid rows bottom to top.
  for (std::size_t row = 0; row < G; ++row) {
    const std::size_t iy = G - 1 - row;
    for (std::size_t ix = 0; ix < G; ++ix) {
      const auto o = grid.at(ix, iy);
      const int level = o < 0 ? 255 : static_cast<int>(o * step);
      out << level << (ix + 1 < G ? ' ' : '\n');
    }
  }
}

void write_csv(const OwnerGrid& grid, std::ostream& out) {
  out << "ix,iy,x,y,owner,tie\n";
  for (std::size_t iy = 0; iy < grid.grid.G; ++iy) {
    for (std::size_t ix = 0; ix < grid.grid.G; ++ix) {
      const Vec2 p = grid.grid.point(ix, iy);
      const std::size_t k = grid.grid.index(ix, iy);
      out << ix << ',' << iy << ',' << p.x << ',' << p.y << ',' << grid.owner[k] << ','
          << static_cast<int>(grid.tie[k]) << '\n';
    }
  }
}

}  // namespace hqvp
