#include "hqvp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "hqvp/errors.hpp"

namespace hqvp {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
  double r = std::fmod(t, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

// Positive root of a s^2 + 2 b s + c = 0 for c < 0 (origin strictly inside),
// written to avoid cancellation.
double positive_root(double a, double b, double c) {
  const double disc = std::max(0.0, b * b - a * c);
  const double sq = std::sqrt(disc);
  if (b <= 0.0) return (-b + sq) / a;
  return -c / (b + sq);
}

double arc_length(const Ellipsoid& e, double t0, double t1) {
  constexpr int steps = 32;
  double len = 0.0;
  Vec2 prev = e.boundary_point(t0);
  for (int k = 1; k <= steps; ++k) {
    const Vec2 cur = e.boundary_point(t0 + (t1 - t0) * k / steps);
    len += norm(cur - prev);
    prev = cur;
  }
  return len;
}

}  // namespace

Ellipsoid::Ellipsoid(Vec2 center, Sym2 shape, double level)
    : center_(center), shape_(shape), level_(level) {
  if (!is_positive_definite(shape_)) {
    throw Error(ErrorCode::NonSPDMatrix, "ellipsoid shape matrix must be SPD");
  }
  if (!(level_ > 0.0) || !std::isfinite(level_)) {
    throw Error(ErrorCode::InvalidArgument, "ellipsoid level must be positive");
  }
  inv_sqrt_shape_ = inv_sqrtm(shape_);
  sqrt_lambda_max_ = std::sqrt(lambda_max(shape_));
}

bool Ellipsoid::contains(Vec2 z, double slack) const {
  const double v = value(z);
  if (v <= level_) return true;
  return std::sqrt(v) <= std::sqrt(level_) + slack * sqrt_lambda_max_;
}

Vec2 Ellipsoid::boundary_point(double t) const {
  return center_ + std::sqrt(level_) * (inv_sqrt_shape_ * Vec2{std::cos(t), std::sin(t)});
}

double Ellipsoid::parameter_of(Vec2 z) const {
  const Vec2 u = sqrtm(shape_) * (z - center_);
  return wrap_angle(std::atan2(u.y, u.x));
}

double Ellipsoid::exit_distance(Vec2 origin, Vec2 direction) const {
  const Vec2 w = origin - center_;
  const double a = shape_.quad(direction);
  const double b = dot(direction, shape_ * w);
  const double c = shape_.quad(w) - level_;
  return positive_root(a, b, c);
}

Ray::Ray(Vec2 origin, double theta)
    : origin_(origin), theta_(wrap_angle(theta)), direction_(unit_direction(theta)) {}

ConvexDomain::ConvexDomain(std::vector<Vec2> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw Error(ErrorCode::InvalidDomain, "polygon needs at least three vertices");
  double twice_area = 0.0;
  for (std::size_t k = 0; k < n; ++k) twice_area += cross(vertices_[k], vertices_[(k + 1) % n]);
  if (twice_area < 0.0) {
    std::reverse(vertices_.begin(), vertices_.end());
    twice_area = -twice_area;
  }
  area_ = 0.5 * twice_area;
  if (!(area_ > 0.0)) throw Error(ErrorCode::InvalidDomain, "polygon has zero area");

  lo_ = hi_ = vertices_.front();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 p = vertices_[k];
    const Vec2 q = vertices_[(k + 1) % n];
    const Vec2 r = vertices_[(k + 2) % n];
    if (cross(q - p, r - q) <= 0.0) {
      throw Error(ErrorCode::InvalidDomain, "polygon is not strictly convex");
    }
    const Vec2 d = q - p;
    const double len = norm(d);
    const Vec2 nrm{d.y / len, -d.x / len};
    normals_.push_back(nrm);
    offsets_.push_back(dot(nrm, p));
    lo_ = {std::min(lo_.x, p.x), std::min(lo_.y, p.y)};
    hi_ = {std::max(hi_.x, p.x), std::max(hi_.y, p.y)};
    for (std::size_t j = 0; j < n; ++j) diameter_ = std::max(diameter_, norm(p - vertices_[j]));
  }
}

ConvexDomain ConvexDomain::rectangle(double xmin, double ymin, double xmax, double ymax) {
  return ConvexDomain({{xmin, ymin}, {xmax, ymin}, {xmax, ymax}, {xmin, ymax}});
}

bool ConvexDomain::contains(Vec2 z, double slack) const {
  for (std::size_t k = 0; k < normals_.size(); ++k) {
    if (dot(normals_[k], z) - offsets_[k] > slack) return false;
  }
  return true;
}

double ConvexDomain::inner_distance(Vec2 z) const {
  double d = offsets_[0] - dot(normals_[0], z);
  for (std::size_t k = 1; k < normals_.size(); ++k) d = std::min(d, offsets_[k] - dot(normals_[k], z));
  return d;
}

double ConvexDomain::exit_distance(Vec2 origin, Vec2 direction) const {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < normals_.size(); ++k) {
    const double rate = dot(normals_[k], direction);
    if (rate <= 0.0) continue;
    best = std::min(best, (offsets_[k] - dot(normals_[k], origin)) / rate);
  }
  return std::max(best, 0.0);
}

ConvexDomain ConvexDomain::translated(Vec2 shift) const {
  std::vector<Vec2> moved;
  moved.reserve(vertices_.size());
  for (const Vec2& v : vertices_) moved.push_back(v + shift);
  return ConvexDomain(std::move(moved));
}

RayExit ray_exit(const Ray& ray, const Ellipsoid& region, const ConvexDomain& domain) {
  const double eps = domain.epsilon();
  if (!region.contains(ray.origin(), eps) || !domain.contains(ray.origin(), eps)) {
    throw Error(ErrorCode::OriginOutsideRegion, "ray origin is not inside E ∩ S");
  }
  const double rho_e = region.exit_distance(ray.origin(), ray.direction());
  const double rho_s = domain.exit_distance(ray.origin(), ray.direction());
  RayExit out;
  out.rho = std::min(rho_e, rho_s);
  out.point = ray.at(out.rho);
  const double tie = 1e-12 * std::max(1.0, out.rho);
  out.on_domain_boundary = rho_s <= rho_e + tie;
  out.on_ellipsoid_boundary = rho_e <= rho_s + tie;
  return out;
}

Vec2 ray_exit_point(const Ray& ray, const Ellipsoid& region, const ConvexDomain& domain) {
  return ray_exit(ray, region, domain).point;
}

bool point_in_region(Vec2 z, const Ellipsoid& region, const ConvexDomain& domain) {
  const double eps = domain.epsilon();
  return region.contains(z, eps) && domain.contains(z, eps);
}

std::vector<BoundaryPiece> boundary_pieces(const Ellipsoid& region, const ConvexDomain& domain) {
  const double eps = domain.epsilon();
  std::vector<double> arc_params;
  std::vector<std::vector<double>> edge_params(domain.edge_count());

  for (std::size_t k = 0; k < domain.edge_count(); ++k) {
    const Vec2 p = domain.edge_start(k);
    const Vec2 d = domain.edge_end(k) - p;
    const Vec2 w = p - region.center();
    const double a = region.shape().quad(d);
    const double b = dot(d, region.shape() * w);
    const double c = region.shape().quad(w) - region.level();
    const double disc = b * b - a * c;
    if (disc < 0.0) continue;
    const double sq = std::sqrt(disc);
    // Stable pair of roots of a s^2 + 2 b s + c = 0.
    const double q = -(b + std::copysign(sq, b));
    double roots[2] = {q / a, q != 0.0 ? c / q : q / a};
    for (double s : roots) {
      if (s < -1e-12 || s > 1.0 + 1e-12) continue;
      s = std::clamp(s, 0.0, 1.0);
      edge_params[k].push_back(s);
      arc_params.push_back(region.parameter_of(p + s * d));
    }
  }

  std::vector<BoundaryPiece> pieces;
  if (arc_params.empty()) {
    if (domain.contains(region.boundary_point(0.0), eps)) {
      pieces.push_back(ArcPiece{0.0, kTwoPi});
    } else if (region.contains(domain.edge_start(0), eps)) {
      for (std::size_t k = 0; k < domain.edge_count(); ++k) {
        pieces.push_back(SegmentPiece{domain.edge_start(k), domain.edge_end(k)});
      }
    } else {
      throw Error(ErrorCode::EmptyRegion, "ellipsoid and domain do not intersect");
    }
    return pieces;
  }

  std::sort(arc_params.begin(), arc_params.end());
  arc_params.erase(std::unique(arc_params.begin(), arc_params.end(),
                               [](double x, double y) { return std::abs(x - y) < 1e-13; }),
                   arc_params.end());
  for (std::size_t k = 0; k < arc_params.size(); ++k) {
    const double t0 = arc_params[k];
    const double t1 = (k + 1 < arc_params.size()) ? arc_params[k + 1] : arc_params.front() + kTwoPi;
    if (t1 - t0 < 1e-13) continue;
    if (domain.contains(region.boundary_point(0.5 * (t0 + t1)), eps)) pieces.push_back(ArcPiece{t0, t1});
  }

  for (std::size_t k = 0; k < domain.edge_count(); ++k) {
    std::vector<double> params = edge_params[k];
    params.push_back(0.0);
    params.push_back(1.0);
    std::sort(params.begin(), params.end());
    const Vec2 p = domain.edge_start(k);
    const Vec2 d = domain.edge_end(k) - p;
    for (std::size_t j = 0; j + 1 < params.size(); ++j) {
      const double s0 = params[j];
      const double s1 = params[j + 1];
      if (s1 - s0 < 1e-13) continue;
      if (region.value(p + (0.5 * (s0 + s1)) * d) <= region.level()) {
        pieces.push_back(SegmentPiece{p + s0 * d, p + s1 * d});
      }
    }
  }
  if (pieces.empty()) throw Error(ErrorCode::EmptyRegion, "E ∩ S has empty boundary");
  return pieces;
}

Vec2 piece_point(const BoundaryPiece& piece, const Ellipsoid& region, double s) {
  if (const auto* arc = std::get_if<ArcPiece>(&piece)) {
    return region.boundary_point(arc->t0 + s * (arc->t1 - arc->t0));
  }
  const auto& seg = std::get<SegmentPiece>(piece);
  return seg.from + s * (seg.to - seg.from);
}

std::vector<Vec2> boundary_sample(const Ellipsoid& region, const ConvexDomain& domain,
                                  std::size_t count) {
  const auto pieces = boundary_pieces(region, domain);
  std::vector<double> lengths;
  double total = 0.0;
  for (const auto& piece : pieces) {
    double len = 0.0;
    if (const auto* arc = std::get_if<ArcPiece>(&piece)) {
      len = arc_length(region, arc->t0, arc->t1);
    } else {
      const auto& seg = std::get<SegmentPiece>(piece);
      len = norm(seg.to - seg.from);
    }
    lengths.push_back(len);
    total += len;
  }
  std::vector<Vec2> out;
  out.reserve(count + 3 * pieces.size());
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    const double share = total > 0.0 ? lengths[k] / total : 1.0 / pieces.size();
    const auto m = std::max<std::size_t>(2, static_cast<std::size_t>(std::ceil(count * share)) + 1);
    for (std::size_t j = 0; j < m; ++j) {
      out.push_back(piece_point(pieces[k], region, static_cast<double>(j) / (m - 1)));
    }
  }
  return out;
}

bool inside_polygon(Vec2 z, const std::vector<Vec2>& polygon) {
  int winding = 0;
  const std::size_t n = polygon.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Vec2 a = polygon[k];
    const Vec2 b = polygon[(k + 1) % n];
    const double side = cross(b - a, z - a);
    if (a.y <= z.y) {
      if (b.y > z.y && side > 0.0) ++winding;
    } else {
      if (b.y <= z.y && side < 0.0) --winding;
    }
  }
  return winding != 0;
}

double polygon_area(const std::vector<Vec2>& polygon) {
  double twice = 0.0;
  for (std::size_t k = 0; k < polygon.size(); ++k) {
    twice += cross(polygon[k], polygon[(k + 1) % polygon.size()]);
  }
  return 0.5 * std::abs(twice);
}

}  // namespace hqvp
