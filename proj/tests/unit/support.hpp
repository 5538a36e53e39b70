#pragma once

// Independent reference computations used by the unit tests. Nothing here
// calls into the library's geometric routines.

#include <cmath>
#include <functional>
#include <numbers>
#include <vector>

#include "hqvp/linalg.hpp"

namespace hqvp::oracles {

inline double quad_form(Sym2 P, Vec2 v) { return P.a * v.x * v.x + 2.0 * P.b * v.x * v.y + P.c * v.y * v.y; }

/// Sign changes of f on [0, hi], located by dense sampling and bisection.
inline std::vector<double> scan_roots(const std::function<double(double)>& f, double hi, int samples = 20000) {
  std::vector<double> out;
  double a = 0.0;
  double fa = f(a);
  for (int k = 1; k <= samples; ++k) {
    const double b = hi * k / samples;
    const double fb = f(b);
    if (fa == 0.0) {
      out.push_back(a);
    } else if ((fa < 0.0) != (fb < 0.0) && fb != 0.0) {
      double lo = a, up = b, flo = fa;
      for (int it = 0; it < 200 && up - lo > 1e-15 * (1.0 + up); ++it) {
        const double mid = 0.5 * (lo + up);
        const double fm = f(mid);
        if ((fm < 0.0) == (flo < 0.0)) {
          lo = mid;
          flo = fm;
        } else {
          up = mid;
        }
      }
      out.push_back(0.5 * (lo + up));
    }
    a = b;
    fa = fb;
  }
  return out;
}

/// Sutherland-Hodgman clip of a polygon against a counter-clockwise convex polygon.
inline std::vector<Vec2> clip(std::vector<Vec2> subject, const std::vector<Vec2>& convex) {
  for (std::size_t e = 0; e < convex.size(); ++e) {
    const Vec2 a = convex[e];
    const Vec2 b = convex[(e + 1) % convex.size()];
    auto side = [&](Vec2 p) { return (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x); };
    std::vector<Vec2> out;
    for (std::size_t k = 0; k < subject.size(); ++k) {
      const Vec2 p = subject[k];
      const Vec2 q = subject[(k + 1) % subject.size()];
      const double sp = side(p);
      const double sq = side(q);
      if (sp >= 0.0) out.push_back(p);
      if ((sp >= 0.0) != (sq >= 0.0)) {
        const double t = sp / (sp - sq);
        out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
      }
    }
    subject = out;
  }
  return subject;
}

inline double shoelace(const std::vector<Vec2>& poly) {
  double s = 0.0;
  for (std::size_t k = 0; k < poly.size(); ++k) {
    const Vec2 p = poly[k];
    const Vec2 q = poly[(k + 1) % poly.size()];
    s += p.x * q.y - q.x * p.y;
  }
  return 0.5 * std::abs(s);
}

/// {z : (z - c)ᵀ Q (z - c) <= level} as a polygon with `count` vertices,
/// built from the explicit eigen-decomposition of Q.
inline std::vector<Vec2> ellipse_polygon(Vec2 c, Sym2 Q, double level, int count) {
  const double half_diff = 0.5 * (Q.a - Q.c);
  const double r = std::sqrt(half_diff * half_diff + Q.b * Q.b);
  const double l1 = 0.5 * (Q.a + Q.c) + r;
  const double l2 = 0.5 * (Q.a + Q.c) - r;
  const double ang = 0.5 * std::atan2(Q.b, half_diff);
  const Vec2 u{std::cos(ang), std::sin(ang)};
  const Vec2 v{-u.y, u.x};
  std::vector<Vec2> out;
  for (int k = 0; k < count; ++k) {
    const double t = 2.0 * std::numbers::pi * k / count;
    const double a = std::sqrt(level / l1) * std::cos(t);
    const double b = std::sqrt(level / l2) * std::sin(t);
    out.push_back({c.x + a * u.x + b * v.x, c.y + a * u.y + b * v.y});
  }
  return out;
}

}  // namespace hqvp::oracles
