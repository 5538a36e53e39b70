#include "hqvp/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hqvp/errors.hpp"
#include "search.hpp"

namespace hqvp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::size_t arc_samples(const ArcPiece& arc, std::size_t total) {
  const double share = (arc.t1 - arc.t0) / kTwoPi;
  return std::max<std::size_t>(16, static_cast<std::size_t>(std::ceil(share * static_cast<double>(total))) + 1);
}

/// Maximum of a convex function over bd(E ∩ S), piece by piece.
template <typename F>
double boundary_max(const Ellipsoid& e, const ConvexDomain& d, std::size_t samples, F&& f) {
  double best = -std::numeric_limits<double>::infinity();
  for (const auto& piece : boundary_pieces(e, d)) {
    if (const auto* arc = std::get_if<ArcPiece>(&piece)) {
      best = std::max(best, detail::sampled_max([&](double t) { return f(e.boundary_point(t)); }, arc->t0,
                                                arc->t1, arc_samples(*arc, samples)));
    } else {
      // A convex function on a segment peaks at an end.
      const auto& seg = std::get<SegmentPiece>(piece);
      best = std::max({best, f(seg.from), f(seg.to)});
    }
  }
  return best;
}

double min_over_region(const Ellipsoid& e, const ConvexDomain& d, std::size_t samples, const Peer& p) {
  if (point_in_region(p.offset, e, d)) return p.mu;
  auto f = [&](Vec2 z) { return p.P.quad(z - p.offset) + p.mu; };
  double best = std::numeric_limits<double>::infinity();
  for (const auto& piece : boundary_pieces(e, d)) {
    if (const auto* arc = std::get_if<ArcPiece>(&piece)) {
      best = std::min(best, detail::sampled_min([&](double t) { return f(e.boundary_point(t)); }, arc->t0,
                                                arc->t1, arc_samples(*arc, samples)));
    } else {
      const auto& seg = std::get<SegmentPiece>(piece);
      const Vec2 dir = seg.to - seg.from;
      const double curv = p.P.quad(dir);
      const double t = curv > 0.0 ? std::clamp(-dot(dir, p.P * (seg.from - p.offset)) / curv, 0.0, 1.0) : 0.0;
      best = std::min({best, f(seg.from + t * dir), f(seg.from), f(seg.to)});
    }
  }
  return best;
}

}  // namespace

std::vector<Vec2> NeighborEnclosure::curve_absolute() const {
  std::vector<Vec2> out;
  out.reserve(curve.size());
  for (const Vec2& c : curve) out.push_back(origin + c);
  return out;
}

double NeighborEnclosure::region_area() const { return polygon_area(curve); }

bool NeighborEnclosure::encloses(Vec2 offset) const {
  if (inside_polygon(offset, curve)) return true;
  const Ellipsoid e(ellipse_center, ellipse_shape, ell);
  if (e.value(offset) <= ell) return true;
  const double gap = detail::sampled_min([&](double t) { return P0.quad(offset - e.boundary_point(t)); }, 0.0,
                                         kTwoPi, 256);
  return gap <= r;
}

double delta_bar(const LocalView& view, std::size_t boundary_samples) {
  const double raw = boundary_max(view.bounding().ellipsoid, view.domain(), boundary_samples,
                                  [&](Vec2 z) { return view.own_value(z); });
  return raw * (1.0 + 1e-6);
}

double delta_bar(const Scenario& s, std::size_t i, std::size_t boundary_samples) {
  return delta_bar(LocalView::centralized(s, i), boundary_samples);
}

std::vector<std::size_t> neighbor_superset(const LocalView& view, double delta_bar_i,
                                           std::size_t boundary_samples) {
  std::vector<std::size_t> out;
  for (const Peer& p : view.peers()) {
    if (min_over_region(view.bounding().ellipsoid, view.domain(), boundary_samples, p) <= delta_bar_i) {
      out.push_back(p.index);
    }
  }
  return out;
}

std::vector<std::size_t> neighbor_superset(const Scenario& s, std::size_t i, double delta_bar_i,
                                           std::size_t boundary_samples) {
  return neighbor_superset(LocalView::centralized(s, i), delta_bar_i, boundary_samples);
}

NeighborEnclosure enclosure_curve(const LocalView& view, Vec2 origin, std::size_t phi_count,
                                  std::size_t boundary_samples) {
  if (phi_count < 3) throw Error(ErrorCode::InvalidArgument, "phi_count must be at least 3");
  NeighborEnclosure enc;
  enc.agent = view.self();
  enc.origin = origin;
  enc.phi_count = phi_count;
  enc.delta_bar = delta_bar(view, boundary_samples);
  enc.r = enc.delta_bar - view.zeroth().mu;
  if (!(enc.r > 0.0)) throw Error(ErrorCode::AssumptionViolation, "enclosure level is not positive");

  const Ellipsoid& e = view.bounding().ellipsoid;
  enc.ellipse_center = e.center();
  enc.ellipse_shape = e.shape();
  enc.ell = e.level();
  enc.P0 = view.zeroth().P;

  const Sym2 q_half = sqrtm(e.shape());
  const Sym2 q_inv_half = inv_sqrtm(e.shape());
  const Sym2 p0_inv_half = inv_sqrtm(enc.P0);
  const Sym2 p0_inv = inverse(enc.P0);
  const double sqrt_ell = std::sqrt(enc.ell);
  const double sqrt_r = std::sqrt(enc.r);
  auto curve_at = [&](double phi) {
    const Vec2 u = unit_direction(phi);
    const Vec2 g = q_half * u;
    return e.center() + sqrt_ell * (q_inv_half * u) + (sqrt_r / norm(p0_inv_half * g)) * (p0_inv * g);
  };

  enc.curve.reserve(phi_count);
  for (std::size_t k = 0; k < phi_count; ++k) {
    enc.curve.push_back(curve_at(kTwoPi * static_cast<double>(k) / static_cast<double>(phi_count)));
  }
  enc.eta_lower = detail::sampled_max([&](double phi) { return norm(curve_at(phi)); }, 0.0, kTwoPi,
                                      phi_count + 1);
  return enc;
}

NeighborEnclosure enclosure_curve(const Scenario& s, std::size_t i, std::size_t phi_count,
                                  std::size_t boundary_samples) {
  return enclosure_curve(LocalView::centralized(s, i), s.agent(i).position(), phi_count, boundary_samples);
}

std::vector<std::size_t> enclosed_agents(const Scenario& s, const NeighborEnclosure& enclosure) {
  std::vector<std::size_t> out;
  for (std::size_t l = 0; l < s.agents().size(); ++l) {
    if (l == enclosure.agent) continue;
    if (enclosure.encloses(s.agent(l).position() - enclosure.origin)) out.push_back(l);
  }
  return out;
}

TopologyReport topology_report(const Scenario& s, std::size_t i, std::size_t phi_count, const OwnerGrid* oracle) {
  const LocalView view = LocalView::centralized(s, i);
  TopologyReport report;
  report.agent = i;
  report.enclosure = enclosure_curve(view, s.agent(i).position(), phi_count);
  report.superset = neighbor_superset(view, report.enclosure.delta_bar);
  report.enclosed = enclosed_agents(s, report.enclosure);
  if (oracle != nullptr) {
    const auto truth = true_neighbors_from_oracle(*oracle, i);
    report.true_neighbors = std::vector<std::size_t>(truth.begin(), truth.end());
  }
  return report;
}

}  // namespace hqvp
