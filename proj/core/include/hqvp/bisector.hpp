#pragma once

#include <cstddef>
#include <vector>

#include "hqvp/geometry.hpp"
#include "hqvp/metrics.hpp"

namespace hqvp {

/// Points equidistant from two metrics satisfy xᵀ P_ij x - 2 chiᵀ x + sigma = 0.
struct BisectorCoefficients {
  Sym2 P_ij;
  Vec2 chi;
  double sigma = 0.0;

  double residual(Vec2 x) const { return P_ij.quad(x) - 2.0 * dot(chi, x) + sigma; }
};

BisectorCoefficients bisector_coefficients(const ProximityMetric& mi, const ProximityMetric& mj);

/// E_i: the region where agent i's metric does not exceed agent 0's.
struct BoundingEllipse {
  Ellipsoid ellipsoid;
  double ell;
};

BoundingEllipse bounding_ellipse(const ProximityMetric& mi, const ProximityMetric& m0);
BoundingEllipse bounding_ellipse(const Scenario& s, std::size_t i);

/// alpha rho^2 + beta rho + gamma = 0 along a ray from x_i.
struct RayRootQuadratic {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  // Scale of P_i - P_j, used to decide when alpha is negligible.
  double operator_scale = 0.0;
};

/// Relative form: `offset` is x_j - x_i.
RayRootQuadratic ray_root_quadratic(Sym2 Pi, double mui, Sym2 Pj, double muj, Vec2 offset,
                                    Vec2 direction);
RayRootQuadratic ray_root_quadratic(const Scenario& s, std::size_t i, std::size_t j, const Ray& ray);

struct RootSet {
  std::vector<double> roots;  // ascending, in [0, rho_max)
  bool degenerate = false;    // the whole ray is equidistant
};

RootSet roots_on_segment(const RayRootQuadratic& q, double rho_max);

}  // namespace hqvp
