#pragma once

// Ellipsoids, rays and the convex polygonal workspace, plus the exact
// intersection routines the partitioning algorithm needs.

#include <cstddef>
#include <variant>
#include <vector>

#include "hqvp/linalg.hpp"

namespace hqvp {

/// {z : (z - center)ᵀ Q (z - center) <= level}
class Ellipsoid {
 public:
  Ellipsoid(Vec2 center, Sym2 shape, double level);

  Vec2 center() const { return center_; }
  const Sym2& shape() const { return shape_; }
  double level() const { return level_; }

  double value(Vec2 z) const { return shape_.quad(z - center_); }

  /// Membership with a slack measured in length units: any point within
  /// `slack` of the ellipsoid passes.
  bool contains(Vec2 z, double slack = 0.0) const;

  /// Boundary point for parameter t: center + sqrt(level) Q^{-1/2} (cos t, sin t).
  Vec2 boundary_point(double t) const;

  /// Parameter t of a point (inverse of boundary_point up to radial scaling).
  double parameter_of(Vec2 z) const;

  /// Distance along a unit direction from an interior origin to the boundary
  /// (the positive root of the ray/ellipse quadratic).
  double exit_distance(Vec2 origin, Vec2 direction) const;

  Ellipsoid translated(Vec2 shift) const { return {center_ + shift, shape_, level_}; }

 private:
  Vec2 center_;
  Sym2 shape_;
  Sym2 inv_sqrt_shape_;
  double level_;
  double sqrt_lambda_max_;
};

class Ray {
 public:
  Ray(Vec2 origin, double theta);

  Vec2 origin() const { return origin_; }
  double theta() const { return theta_; }
  Vec2 direction() const { return direction_; }
  Vec2 at(double rho) const { return origin_ + rho * direction_; }

 private:
  Vec2 origin_;
  double theta_;
  Vec2 direction_;
};

/// Convex polygon; vertices are stored counter-clockwise.
class ConvexDomain {
 public:
  explicit ConvexDomain(std::vector<Vec2> vertices);

  static ConvexDomain rectangle(double xmin, double ymin, double xmax, double ymax);

  const std::vector<Vec2>& vertices() const { return vertices_; }
  std::size_t edge_count() const { return vertices_.size(); }
  Vec2 edge_start(std::size_t k) const { return vertices_[k]; }
  Vec2 edge_end(std::size_t k) const { return vertices_[(k + 1) % vertices_.size()]; }

  double area() const { return area_; }
  double diameter() const { return diameter_; }
  Vec2 lower_corner() const { return lo_; }
  Vec2 upper_corner() const { return hi_; }

  /// Region-membership tolerance shared across modules: 1e-9 x diameter.
  double epsilon() const { return 1e-9 * diameter_; }

  bool contains(Vec2 z, double slack = 0.0) const;

  /// Signed distance to the boundary: positive inside.
  double inner_distance(Vec2 z) const;

  double exit_distance(Vec2 origin, Vec2 direction) const;

  ConvexDomain translated(Vec2 shift) const;

 private:
  std::vector<Vec2> vertices_;
  std::vector<Vec2> normals_;   // outward unit normals
  std::vector<double> offsets_; // n·x <= offset on the inside
  double area_ = 0.0;
  double diameter_ = 0.0;
  Vec2 lo_, hi_;
};

struct RayExit {
  double rho = 0.0;   // distance from the origin
  Vec2 point;
  bool on_domain_boundary = false;
  bool on_ellipsoid_boundary = false;
};

/// Where a ray from an interior point leaves E ∩ S.
RayExit ray_exit(const Ray& ray, const Ellipsoid& region, const ConvexDomain& domain);
Vec2 ray_exit_point(const Ray& ray, const Ellipsoid& region, const ConvexDomain& domain);

bool point_in_region(Vec2 z, const Ellipsoid& region, const ConvexDomain& domain);

/// A maximal piece of bd(E ∩ S): an arc of bd(E) (parameter interval
/// [t0, t1], t1 > t0) lying in S, or a sub-segment of a polygon edge lying in E.
struct ArcPiece {
  double t0;
  double t1;
};
struct SegmentPiece {
  Vec2 from;
  Vec2 to;
};
using BoundaryPiece = std::variant<ArcPiece, SegmentPiece>;

std::vector<BoundaryPiece> boundary_pieces(const Ellipsoid& region, const ConvexDomain& domain);

Vec2 piece_point(const BoundaryPiece& piece, const Ellipsoid& region, double s);

/// At least `count` points on bd(E ∩ S), including every arc/edge crossing.
std::vector<Vec2> boundary_sample(const Ellipsoid& region, const ConvexDomain& domain,
                                  std::size_t count);

/// Winding-number point-in-polygon test for an arbitrary closed polyline.
bool inside_polygon(Vec2 z, const std::vector<Vec2>& polygon);

double polygon_area(const std::vector<Vec2>& polygon);

}  // namespace hqvp
