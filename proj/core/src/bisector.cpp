#include "hqvp/bisector.hpp"

#include <algorithm>
#include <cmath>

#include "hqvp/errors.hpp"

namespace hqvp {

BisectorCoefficients bisector_coefficients(const ProximityMetric& mi, const ProximityMetric& mj) {
  const Vec2 xi = mi.position();
  const Vec2 xj = mj.position();
  BisectorCoefficients b;
  b.P_ij = mi.P() - mj.P();
  b.chi = mi.P() * xi - mj.P() * xj;
  b.sigma = mi.P().quad(xi) + mi.mu() - mj.P().quad(xj) - mj.mu();
  return b;
}

BoundingEllipse bounding_ellipse(const ProximityMetric& mi, const ProximityMetric& m0) {
  // Work in the frame centered at x_i: the level is frame independent and the
  // cancellation in chiᵀ P⁻¹ chi - sigma stays small.
  const Vec2 o = m0.position() - mi.position();
  const Sym2 P = mi.P() - m0.P();
  if (!is_positive_definite(P)) {
    throw Error(ErrorCode::AssumptionViolation, "P_i - P_0 is not positive definite");
  }
  const Vec2 chi = -(m0.P() * o);
  const double sigma = mi.mu() - m0.P().quad(o) - m0.mu();
  const Sym2 Pinv = inverse(P);
  const Vec2 c = Pinv * chi;
  const double ell = dot(chi, c) - sigma;
  if (!(ell > 0.0)) throw Error(ErrorCode::NonPositiveEll, "bounding ellipse level is not positive");
  return {Ellipsoid(mi.position() + c, P, ell), ell};
}

BoundingEllipse bounding_ellipse(const Scenario& s, std::size_t i) {
  if (i == 0 || i > s.size()) throw Error(ErrorCode::InvalidArgument, "agent index out of range");
  return bounding_ellipse(s.agent(i), s.zeroth());
}

RayRootQuadratic ray_root_quadratic(Sym2 Pi, double mui, Sym2 Pj, double muj, Vec2 offset,
                                    Vec2 direction) {
  const Sym2 diff = Pi - Pj;
  RayRootQuadratic q;
  q.alpha = diff.quad(direction);
  q.beta = 2.0 * dot(offset, Pj * direction);
  q.gamma = mui - muj - Pj.quad(offset);
  q.operator_scale = diff.max_abs();
  return q;
}

RayRootQuadratic ray_root_quadratic(const Scenario& s, std::size_t i, std::size_t j, const Ray& ray) {
  if (i == j) throw Error(ErrorCode::InvalidArgument, "ray quadratic needs two distinct agents");
  const auto& mi = s.agent(i);
  const auto& mj = s.agent(j);
  return ray_root_quadratic(mi.P(), mi.mu(), mj.P(), mj.mu(), mj.position() - mi.position(),
                            ray.direction());
}

RootSet roots_on_segment(const RayRootQuadratic& q, double rho_max) {
  if (!(rho_max > 0.0)) throw Error(ErrorCode::InvalidArgument, "rho_max must be positive");
  RootSet out;
  std::vector<double> raw;
  if (std::abs(q.alpha) <= 1e-12 * q.operator_scale) {
    if (q.beta == 0.0) {
      out.degenerate = q.gamma == 0.0;
      return out;
    }
    raw.push_back(-q.gamma / q.beta);
  } else {
    const double disc = q.beta * q.beta - 4.0 * q.alpha * q.gamma;
    if (disc < 0.0) return out;
    const double sq = std::sqrt(disc);
    const double t = -0.5 * (q.beta + std::copysign(sq, q.beta));
    raw.push_back(t / q.alpha);
    if (t != 0.0) raw.push_back(q.gamma / t);
  }
  const double merge = 1e-9 * rho_max;
  std::sort(raw.begin(), raw.end());
  for (double r : raw) {
    if (!(r >= 0.0) || r >= rho_max - merge) continue;
    if (!out.roots.empty() && r - out.roots.back() < merge) continue;
    out.roots.push_back(r);
  }
  return out;
}

}  // namespace hqvp
