#include "hqvp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <unordered_map>

#include "hqvp/bisector.hpp"
#include "hqvp/envelope.hpp"
#include "hqvp/errors.hpp"

namespace hqvp {

namespace {

/// Bucketed set of line segments (points are zero-length segments) for
/// nearest-distance queries.
class SegmentIndex {
 public:
  explicit SegmentIndex(double bucket) : bucket_(bucket) {}

  void add(Vec2 a, Vec2 b) {
    const std::size_t k = segs_.size();
    segs_.push_back({a, b});
    for (long x = cell(std::min(a.x, b.x)); x <= cell(std::max(a.x, b.x)); ++x) {
      for (long y = cell(std::min(a.y, b.y)); y <= cell(std::max(a.y, b.y)); ++y) buckets_[pack(x, y)].push_back(k);
    }
  }

  double nearest(Vec2 p) const {
    double best = std::numeric_limits<double>::infinity();
    if (segs_.empty()) return best;
    const long bx = cell(p.x);
    const long by = cell(p.y);
    for (long ring = 0; ring < 4096; ++ring) {
      for (long dx = -ring; dx <= ring; ++dx) {
        for (long dy = -ring; dy <= ring; ++dy) {
          if (std::max(std::labs(dx), std::labs(dy)) != ring) continue;
          const auto it = buckets_.find(pack(bx + dx, by + dy));
          if (it == buckets_.end()) continue;
          for (std::size_t k : it->second) best = std::min(best, distance(segs_[k], p));
        }
      }
      // Everything outside the scanned square is at least `ring` buckets away.
      if (best <= static_cast<double>(ring) * bucket_) break;
    }
    return best;
  }

 private:
  struct Seg {
    Vec2 a, b;
  };

  static double distance(const Seg& s, Vec2 p) {
    const Vec2 d = s.b - s.a;
    const double len2 = dot(d, d);
    const double t = len2 > 0.0 ? std::clamp(dot(p - s.a, d) / len2, 0.0, 1.0) : 0.0;
    return norm(s.a + t * d - p);
  }

  long cell(double v) const { return static_cast<long>(std::floor(v / bucket_)); }
  static long long pack(long x, long y) { return (static_cast<long long>(x) << 32) ^ (y & 0xffffffffLL); }

  std::vector<Seg> segs_;
  double bucket_;
  std::unordered_map<long long, std::vector<std::size_t>> buckets_;
};

/// Certified boundary points plus the chords that Cell::contains interpolates
/// between them on adjacent slices with matching segment counts.
SegmentIndex certified_boundary(const std::vector<Cell>& cells) {
  SegmentIndex index(0.1);
  for (const Cell& c : cells) {
    for (const Vec2& p : c.boundary_points(true)) index.add(p, p);
    const auto& slices = c.slices();
    for (std::size_t k = 0; k < slices.size(); ++k) {
      const auto& a = slices[k];
      const auto& b = slices[(k + 1) % slices.size()];
      if (a.segments.size() != b.segments.size()) continue;
      for (std::size_t j = 0; j < a.segments.size(); ++j) {
        if (a.segments[j].from > 0.0 && b.segments[j].from > 0.0) {
          index.add(c.point(a, a.segments[j].from), c.point(b, b.segments[j].from));
        }
        index.add(c.point(a, a.segments[j].to), c.point(b, b.segments[j].to));
      }
    }
  }
  return index;
}

std::string fmt(double v) {
  std::ostringstream o;
  o.precision(6);
  o << v;
  return o.str();
}

}  // namespace

CheckResult check_containment(const Scenario& s, const std::vector<Cell>& cells) {
  std::size_t checked = 0;
  std::size_t bad = 0;
  for (const Cell& c : cells) {
    const auto e = bounding_ellipse(s, c.agent());
    for (const auto& slice : c.slices()) {
      for (const auto& seg : slice.segments) {
        for (double rho : {seg.from, 0.5 * (seg.from + seg.to), seg.to}) {
          ++checked;
          if (!point_in_region(c.point(slice, rho), e.ellipsoid, s.domain())) ++bad;
        }
      }
    }
  }
  return {"containment", bad == 0, std::to_string(checked) + " points, " + std::to_string(bad) + " outside E_i ∩ S"};
}

CheckResult check_certification(const Scenario& s, const std::vector<Cell>& cells) {
  std::size_t boundary_bad = 0;
  std::size_t kept_bad = 0;
  std::size_t dropped_bad = 0;
  double worst = 0.0;
  for (const Cell& c : cells) {
    const LocalView view = LocalView::centralized(s, c.agent());
    for (const auto& slice : c.slices()) {
      const Vec2 e = unit_direction(slice.theta);
      for (const auto& b : slice.boundary) {
        if (b.on_domain_boundary) continue;
        const EnvelopeValue v = view.delta(b.rho * e);
        const double scaled = std::abs(v.value) / (1.0 + v.own);
        worst = std::max(worst, scaled);
        if (scaled >= 1e-8) ++boundary_bad;
      }
      std::vector<double> pts{0.0};
      pts.insert(pts.end(), slice.crossings.begin(), slice.crossings.end());
      pts.push_back(slice.rho_bar);
      for (std::size_t m = 1; m < pts.size(); ++m) {
        const EnvelopeValue v = view.delta((0.5 * (pts[m - 1] + pts[m])) * e);
        const double tol = 1e-8 * (1.0 + v.own);
        const bool kept = slice.signs[m - 1] >= 0;
        if (kept && v.value < -tol) ++kept_bad;
        if (!kept && v.value >= tol) ++dropped_bad;
      }
    }
  }
  const bool ok = boundary_bad == 0 && kept_bad == 0 && dropped_bad == 0;
  return {"certification", ok,
          "max |Delta_i|/(1+delta_i) at boundary points " + fmt(worst) + "; bad boundary " +
              std::to_string(boundary_bad) + ", bad kept " + std::to_string(kept_bad) + ", bad dropped " +
              std::to_string(dropped_bad)};
}

AgreementStats oracle_agreement(const Scenario& s, const std::vector<Cell>& cells, const OwnerGrid& oracle) {
  const ClaimGrid claims = claim_grid(s, cells, oracle.grid.G);
  const SegmentIndex index = certified_boundary(cells);
  AgreementStats st;
  const GridSpec& g = oracle.grid;
  const double diag = std::hypot(g.hx(), g.hy());
  for (std::size_t iy = 0; iy < g.G; ++iy) {
    for (std::size_t ix = 0; ix < g.G; ++ix) {
      const std::size_t k = g.index(ix, iy);
      const auto owner = oracle.owner[k];
      if (owner < 0) continue;
      ++st.points;
      const bool agree = owner == 0 ? claims.claims[k] == 0 : (claims.claims[k] == 1 && claims.first_claimer[k] == owner);
      if (agree) {
        ++st.agree;
        continue;
      }
      const double d = index.nearest(g.point(ix, iy));
      if (d > diag) ++st.unexplained;
      st.max_boundary_distance = std::max(st.max_boundary_distance, d);
    }
  }
  return st;
}

CheckResult check_oracle_agreement(const AgreementStats& st, double required) {
  const bool ok = st.fraction() >= required && st.unexplained == 0;
  return {"oracle agreement", ok,
          fmt(100.0 * st.fraction()) + "% of " + std::to_string(st.points) + " grid points agree; " +
              std::to_string(st.points - st.agree) + " disagreements, " + std::to_string(st.unexplained) +
              " farther than one grid diagonal from the certified boundary (max " +
              fmt(st.max_boundary_distance) + ")"};
}

CheckResult check_partition(const Scenario& s, const std::vector<Cell>& cells, std::size_t G) {
  const ClaimGrid claims = claim_grid(s, cells, G);
  const SegmentIndex index = certified_boundary(cells);
  const double diag = std::hypot(claims.grid.hx(), claims.grid.hy());
  std::size_t multi = 0;
  std::size_t far = 0;
  double worst = 0.0;
  for (std::size_t iy = 0; iy < G; ++iy) {
    for (std::size_t ix = 0; ix < G; ++ix) {
      const std::size_t k = claims.grid.index(ix, iy);
      if (!claims.in_domain[k] || claims.claims[k] < 2) continue;
      ++multi;
      const double d = index.nearest(claims.grid.point(ix, iy));
      worst = std::max(worst, d);
      if (d > diag) ++far;
    }
  }
  return {"partition", far == 0,
          std::to_string(multi) + " points claimed twice or more, " + std::to_string(far) +
              " farther than one grid diagonal from the certified boundary (max " + fmt(worst) + ")"};
}

SupersetStats topology_supersets(const Scenario& s, const OwnerGrid& oracle, std::size_t phi_count) {
  SupersetStats st;
  const auto adj = adjacency(oracle);
  for (std::size_t i = 1; i <= s.size(); ++i) {
    ++st.agents;
    const TopologyReport r = topology_report(s, i, phi_count);
    for (std::size_t l : adj[i]) {
      if (!std::binary_search(r.superset.begin(), r.superset.end(), l)) ++st.superset_violations;
      if (!std::binary_search(r.enclosed.begin(), r.enclosed.end(), l)) ++st.enclosure_violations;
      if (norm(s.agent(l).position() - s.agent(i).position()) > r.enclosure.eta_lower) ++st.radius_violations;
    }
  }
  return st;
}

double boundary_hausdorff(const std::vector<Cell>& a, const std::vector<Cell>& b) {
  double worst = 0.0;
  for (std::size_t k = 0; k < std::min(a.size(), b.size()); ++k) {
    const auto pa = a[k].boundary_points();
    const auto pb = b[k].boundary_points();
    if (pa.empty() || pb.empty()) {
      if (pa.size() != pb.size()) return std::numeric_limits<double>::infinity();
      continue;
    }
    SegmentIndex ia(0.1);
    SegmentIndex ib(0.1);
    for (const Vec2& p : pa) ia.add(p, p);
    for (const Vec2& p : pb) ib.add(p, p);
    for (const Vec2& p : pa) worst = std::max(worst, ib.nearest(p));
    for (const Vec2& p : pb) worst = std::max(worst, ia.nearest(p));
  }
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  return worst;
}

std::vector<CheckResult> verify_scenario(const ScenarioFile& file) {
  const Scenario& s = file.scenario;
  std::vector<CheckResult> out;

  const auto report = validate_assumptions(s);
  out.push_back({"assumptions", report.ok(), report.ok() ? "all pairs satisfied" : report.describe()});

  {
    bool ok = true;
    double min_ell = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i <= s.size(); ++i) min_ell = std::min(min_ell, bounding_ellipse(s, i).ell);
    ok = min_ell > 0.0;
    out.push_back({"bounding ellipse level", ok, "min level " + fmt(min_ell)});
  }

  {
    double max_mu = 0.0;
    for (const auto& a : s.agents()) max_mu = std::max(max_mu, a.mu());
    bool ok = true;
    for (std::size_t i = 1; i <= s.size(); ++i) {
      for (double gamma : {max_mu + 0.5, max_mu + 10.0}) {
        ok = ok && check_sublevel_containment(s, i, s.agent(i).position(), gamma);
      }
    }
    out.push_back({"sublevel containment", ok, ok ? "inner sublevel sets nested" : "a sublevel set escaped"});
  }

  const auto cells = compute_cells(s, file.run.theta_count);
  out.push_back(check_containment(s, cells));
  out.push_back(check_certification(s, cells));

  const OwnerGrid oracle = rasterize(s, file.run.grid);
  {
    bool ok = true;
    for (std::size_t i = 0; i <= s.size(); ++i) {
      const Vec2 p = s.agent(i).position();
      ok = ok && delta_global(s, p).owner == i;
    }
    out.push_back({"generator ownership", ok, ok ? "every generator owns its position" : "a generator is owned by another agent"});
  }
  out.push_back(check_oracle_agreement(oracle_agreement(s, cells, oracle)));
  out.push_back(check_partition(s, cells, file.run.grid));

  const HoleMask hole = coverage_hole(s, cells, file.run.grid);
  out.push_back({"coverage hole", hole.count() > 0, "area " + fmt(hole.area())});

  const SupersetStats sup = topology_supersets(s, oracle, file.run.phi_count);
  out.push_back({"topology supersets",
                 sup.superset_violations == 0 && sup.enclosure_violations == 0 && sup.radius_violations == 0,
                 std::to_string(sup.superset_violations) + " superset, " + std::to_string(sup.enclosure_violations) +
                     " enclosure, " + std::to_string(sup.radius_violations) + " radius violations"});

  DistributedConfig cfg;
  cfg.theta_count = file.run.theta_count;
  cfg.phi_count = file.run.phi_count;
  cfg.zeroth = ZerothSource::Scenario;
  cfg.oracle = &oracle;
  bool radius_ok = true;
  std::string radius_detail;
  try {
    const DistributedRun run = run_distributed_partition(s, cfg);
    const double h = boundary_hausdorff(run.cells, cells);
    const double limit = 1e-6 * s.domain().diameter();
    out.push_back({"distributed equivalence", h < limit, "Hausdorff " + fmt(h) + " (limit " + fmt(limit) + ")"});
    const auto cx = message_complexity_report(run);
    const bool bound = std::all_of(cx.begin(), cx.end(), [](const AgentComplexity& c) { return c.within_bound; });
    out.push_back({"message accounting", bound, bound ? "per-ray messages within 2 x peers heard" : "bound exceeded"});
  } catch (const Error& e) {
    radius_ok = false;
    radius_detail = e.what();
  }
  if (!radius_ok) out.push_back({"distributed equivalence", false, radius_detail});
  return out;
}

}  // namespace hqvp
