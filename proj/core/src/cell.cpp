#include "hqvp/cell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "hqvp/bisector.hpp"
#include "hqvp/errors.hpp"

namespace hqvp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

bool has(const std::vector<int>& set, int m) { return std::binary_search(set.begin(), set.end(), m); }

int midpoint_sign(const LocalView& view, Vec2 direction, double a, double b) {
  const EnvelopeValue v = view.delta((0.5 * (a + b)) * direction);
  if (on_boundary(v)) return 0;
  return v.value > 0.0 ? 1 : -1;
}

struct DisjointSets {
  std::vector<std::size_t> parent;
  explicit DisjointSets(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) { parent[find(a)] = find(b); }
};

}  // namespace

SliceIndexSets classify_signs(const std::vector<int>& signs) {
  SliceIndexSets sets;
  const int last = static_cast<int>(signs.size());  // M + 1
  for (int m = 1; m <= last; ++m) {
    (signs[m - 1] >= 0 ? sets.plus : sets.minus).push_back(m);
  }
  sets.kept = sets.plus;
  for (int m = 1; m < last; ++m) {
    if (has(sets.plus, m) && has(sets.minus, m + 1)) sets.g_plus.push_back(m);
    if (has(sets.minus, m) && has(sets.plus, m + 1)) sets.g_minus.push_back(m);
  }
  if (last >= 1 && has(sets.plus, last)) sets.g_plus.push_back(last);
  std::merge(sets.g_plus.begin(), sets.g_plus.end(), sets.g_minus.begin(), sets.g_minus.end(),
             std::back_inserter(sets.boundary));
  return sets;
}

CandidateSet candidate_crossings(const LocalView& view, Vec2 direction, double rho_bar) {
  CandidateSet out;
  std::vector<double> all;
  for (const Peer& p : view.peers()) {
    const auto q = ray_root_quadratic(view.P(), view.mu(), p.P, p.mu, p.offset, direction);
    const RootSet roots = roots_on_segment(q, rho_bar);
    out.degenerate = out.degenerate || roots.degenerate;
    if (p.index != 0) out.from_real_peers += roots.roots.size();
    all.insert(all.end(), roots.roots.begin(), roots.roots.end());
  }
  std::sort(all.begin(), all.end());
  const double merge = 1e-9 * rho_bar;
  for (double r : all) {
    if (out.rho.empty() || r - out.rho.back() >= merge) out.rho.push_back(r);
  }
  return out;
}

std::vector<Vec2> candidate_crossings(const Scenario& s, std::size_t i, const Ray& ray) {
  const LocalView view = LocalView::centralized(s, i);
  const Ray local({0.0, 0.0}, ray.theta());
  const RayExit exit = ray_exit(local, view.bounding().ellipsoid, view.domain());
  const CandidateSet c = candidate_crossings(view, local.direction(), exit.rho);
  std::vector<Vec2> out;
  for (double r : c.rho) out.push_back(ray.at(r));
  return out;
}

std::vector<Vec2> true_crossings(const Scenario& s, std::size_t i, const std::vector<Vec2>& candidates) {
  std::vector<Vec2> out;
  for (const Vec2& x : candidates) {
    if (on_boundary(delta_i(s, i, x))) out.push_back(x);
  }
  return out;
}

CellSlice classify_slice(const LocalView& view, double theta) {
  const Ray ray({0.0, 0.0}, theta);
  const Vec2 e = ray.direction();
  const RayExit exit = ray_exit(ray, view.bounding().ellipsoid, view.domain());

  CellSlice slice;
  slice.theta = ray.theta();
  slice.rho_bar = exit.rho;
  slice.exit_on_domain = exit.on_domain_boundary;

  const CandidateSet candidates = candidate_crossings(view, e, exit.rho);
  slice.candidate_count = candidates.rho.size();
  slice.peer_candidates = candidates.from_real_peers;
  slice.degenerate_pair = candidates.degenerate;
  for (double r : candidates.rho) {
    if (on_boundary(view.delta(r * e))) slice.crossings.push_back(r);
  }

  if (slice.crossings.empty()) {
    slice.signs = {1};
    slice.sets = classify_signs(slice.signs);
    slice.segments.push_back({0.0, exit.rho});
    slice.boundary.push_back({exit.rho, exit.on_domain_boundary});
    return slice;
  }

  std::vector<double> pts;
  pts.reserve(slice.crossings.size() + 2);
  pts.push_back(0.0);
  pts.insert(pts.end(), slice.crossings.begin(), slice.crossings.end());
  pts.push_back(exit.rho);
  const int last = static_cast<int>(pts.size()) - 1;  // M + 1

  for (int m = 1; m <= last; ++m) slice.signs.push_back(midpoint_sign(view, e, pts[m - 1], pts[m]));
  slice.sets = classify_signs(slice.signs);

  for (int m : slice.sets.kept) {
    if (!slice.segments.empty() && slice.segments.back().to == pts[m - 1]) {
      slice.segments.back().to = pts[m];
    } else {
      slice.segments.push_back({pts[m - 1], pts[m]});
    }
  }

  std::vector<int> marks = slice.sets.boundary;
  for (int m = 1; m <= last; ++m) {
    if (slice.signs[m - 1] != 0) continue;
    if (m >= 2) marks.push_back(m - 1);
    marks.push_back(m);
  }
  std::sort(marks.begin(), marks.end());
  marks.erase(std::unique(marks.begin(), marks.end()), marks.end());
  for (int m : marks) slice.boundary.push_back({pts[m], m == last && exit.on_domain_boundary});
  return slice;
}

CellSlice classify_slice(const Scenario& s, std::size_t i, const Ray& ray) {
  if (ray.origin() != s.agent(i).position()) {
    throw Error(ErrorCode::InvalidArgument, "ray must start at the agent position");
  }
  return classify_slice(LocalView::centralized(s, i), ray.theta());
}

Cell::Cell(std::size_t agent, Vec2 origin, std::vector<CellSlice> slices)
    : agent_(agent), origin_(origin), slices_(std::move(slices)) {
  if (slices_.size() < 3) throw Error(ErrorCode::InvalidArgument, "a cell needs at least three slices");
  const double dtheta = kTwoPi / static_cast<double>(slices_.size());

  std::vector<std::size_t> first(slices_.size() + 1, 0);
  for (std::size_t k = 0; k < slices_.size(); ++k) {
    first[k + 1] = first[k] + slices_[k].segments.size();
    for (const auto& seg : slices_[k].segments) {
      area_ += 0.5 * (seg.to * seg.to - seg.from * seg.from) * dtheta;
      max_radius_ = std::max(max_radius_, seg.to);
    }
  }

  DisjointSets sets(first.back());
  for (std::size_t k = 0; k < slices_.size(); ++k) {
    const std::size_t next = (k + 1) % slices_.size();
    const auto& a = slices_[k].segments;
    const auto& b = slices_[next].segments;
    for (std::size_t p = 0; p < a.size(); ++p) {
      for (std::size_t q = 0; q < b.size(); ++q) {
        if (std::max(a[p].from, b[q].from) <= std::min(a[p].to, b[q].to)) {
          sets.unite(first[k] + p, first[next] + q);
        }
      }
    }
  }
  for (std::size_t v = 0; v < first.back(); ++v) {
    if (sets.find(v) == v) ++components_;
  }
}

bool Cell::contains(Vec2 p) const {
  const Vec2 d = p - origin_;
  const double rho = norm(d);
  if (rho > max_radius_) return false;
  if (rho == 0.0) return true;
  double theta = std::atan2(d.y, d.x);
  if (theta < 0.0) theta += kTwoPi;
  const std::size_t T = slices_.size();
  const double u = theta * static_cast<double>(T) / kTwoPi;
  const double base = std::floor(u);
  const double f = u - base;
  const std::size_t k0 = static_cast<std::size_t>(base) % T;
  const std::size_t k1 = (k0 + 1) % T;
  const auto& a = slices_[k0].segments;
  const auto& b = slices_[k1].segments;
  if (a.size() == b.size()) {
    for (std::size_t j = 0; j < a.size(); ++j) {
      const double lo = (1.0 - f) * a[j].from + f * b[j].from;
      const double hi = (1.0 - f) * a[j].to + f * b[j].to;
      if (rho >= lo && rho <= hi) return true;
    }
    return false;
  }
  for (const auto& seg : (f < 0.5 ? a : b)) {
    if (rho >= seg.from && rho <= seg.to) return true;
  }
  return false;
}

std::vector<Vec2> Cell::boundary_points(bool include_domain_boundary) const {
  std::vector<Vec2> out;
  for (const auto& slice : slices_) {
    for (const auto& b : slice.boundary) {
      if (b.on_domain_boundary && !include_domain_boundary) continue;
      out.push_back(point(slice, b.rho));
    }
  }
  return out;
}

Cell compute_cell(const LocalView& view, Vec2 origin, std::size_t theta_count) {
  if (theta_count < 3) throw Error(ErrorCode::InvalidArgument, "theta_count must be at least 3");
  std::vector<CellSlice> slices;
  slices.reserve(theta_count);
  for (std::size_t k = 0; k < theta_count; ++k) {
    slices.push_back(classify_slice(view, kTwoPi * static_cast<double>(k) / static_cast<double>(theta_count)));
  }
  return Cell(view.self(), origin, std::move(slices));
}

Cell compute_cell(const Scenario& s, std::size_t i, std::size_t theta_count) {
  return compute_cell(LocalView::centralized(s, i), s.agent(i).position(), theta_count);
}

std::vector<Cell> compute_cells(const Scenario& s, std::size_t theta_count) {
  std::vector<Cell> cells;
  cells.reserve(s.size());
  for (std::size_t i = 1; i <= s.size(); ++i) cells.push_back(compute_cell(s, i, theta_count));
  return cells;
}

ClaimGrid claim_grid(const Scenario& s, const std::vector<Cell>& cells, std::size_t G) {
  ClaimGrid out;
  out.grid = GridSpec::covering(s.domain(), G);
  const GridSpec& g = out.grid;
  out.in_domain.assign(g.size(), 0);
  out.claims.assign(g.size(), 0);
  out.first_claimer.assign(g.size(), -1);
  for (std::size_t iy = 0; iy < G; ++iy) {
    for (std::size_t ix = 0; ix < G; ++ix) {
      out.in_domain[g.index(ix, iy)] = s.domain().contains(g.point(ix, iy), s.epsilon()) ? 1 : 0;
    }
  }
  auto clamp_index = [&](double v, double lo, double h) {
    const double k = std::floor((v - lo) / h);
    return static_cast<std::size_t>(std::clamp(k, 0.0, static_cast<double>(G - 1)));
  };
  for (const Cell& cell : cells) {
    const Vec2 c = cell.origin();
    const double r = cell.max_radius();
    const std::size_t x0 = clamp_index(c.x - r, g.lo.x, g.hx());
    const std::size_t x1 = clamp_index(c.x + r, g.lo.x, g.hx());
    const std::size_t y0 = clamp_index(c.y - r, g.lo.y, g.hy());
    const std::size_t y1 = clamp_index(c.y + r, g.lo.y, g.hy());
    for (std::size_t iy = y0; iy <= y1; ++iy) {
      for (std::size_t ix = x0; ix <= x1; ++ix) {
        const std::size_t k = g.index(ix, iy);
        if (!out.in_domain[k] || !cell.contains(g.point(ix, iy))) continue;
        if (out.claims[k]++ == 0) out.first_claimer[k] = static_cast<std::int32_t>(cell.agent());
      }
    }
  }
  return out;
}

std::size_t HoleMask::count() const { return static_cast<std::size_t>(std::count(hole.begin(), hole.end(), 1)); }

HoleMask coverage_hole(const Scenario& s, const std::vector<Cell>& cells, std::size_t G) {
  const ClaimGrid claims = claim_grid(s, cells, G);
  HoleMask mask;
  mask.grid = claims.grid;
  mask.hole.assign(claims.grid.size(), 0);
  for (std::size_t k = 0; k < mask.hole.size(); ++k) {
    mask.hole[k] = (claims.in_domain[k] && claims.claims[k] == 0) ? 1 : 0;
  }
  return mask;
}

}  // namespace hqvp
