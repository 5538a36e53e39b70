#pragma once

// Planar vectors and symmetric 2x2 matrices with closed-form spectral
// functions. Everything in the library is two-dimensional, so a general
// linear-algebra dependency would buy nothing here.

#include <algorithm>
#include <array>
#include <cmath>

namespace hqvp {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  constexpr Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }
  constexpr Vec2& operator*=(double s) { x *= s; y *= s; return *this; }

  friend constexpr Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Vec2 operator-(Vec2 a) { return {-a.x, -a.y}; }
  friend constexpr Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator*(Vec2 a, double s) { return {s * a.x, s * a.y}; }
  friend constexpr Vec2 operator/(Vec2 a, double s) { return {a.x / s, a.y / s}; }
  friend constexpr bool operator==(Vec2 a, Vec2 b) = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
constexpr double norm2(Vec2 a) { return dot(a, a); }
inline Vec2 unit_direction(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Symmetric matrix [[a, b], [b, c]].
struct Sym2 {
  double a = 0.0;
  double b = 0.0;
  double c = 0.0;

  constexpr Sym2() = default;
  constexpr Sym2(double a_, double b_, double c_) : a(a_), b(b_), c(c_) {}

  static constexpr Sym2 identity() { return {1.0, 0.0, 1.0}; }
  static constexpr Sym2 diagonal(double d0, double d1) { return {d0, 0.0, d1}; }
  static constexpr Sym2 scaled_identity(double s) { return {s, 0.0, s}; }

  friend constexpr Sym2 operator+(Sym2 p, Sym2 q) { return {p.a + q.a, p.b + q.b, p.c + q.c}; }
  friend constexpr Sym2 operator-(Sym2 p, Sym2 q) { return {p.a - q.a, p.b - q.b, p.c - q.c}; }
  friend constexpr Sym2 operator*(double s, Sym2 p) { return {s * p.a, s * p.b, s * p.c}; }
  friend constexpr Vec2 operator*(Sym2 p, Vec2 v) { return {p.a * v.x + p.b * v.y, p.b * v.x + p.c * v.y}; }
  friend constexpr bool operator==(Sym2 p, Sym2 q) = default;

  constexpr double trace() const { return a + c; }
  constexpr double det() const { return a * c - b * b; }

  /// vᵀ M v
  constexpr double quad(Vec2 v) const { return a * v.x * v.x + 2.0 * b * v.x * v.y + c * v.y * v.y; }

  /// Largest absolute entry; used as a scale for relative tolerances.
  double max_abs() const { return std::max({std::abs(a), std::abs(b), std::abs(c)}); }
};

struct Eigen2 {
  double lambda_max = 0.0;
  double lambda_min = 0.0;
  Vec2 v_max;  // unit eigenvector for lambda_max
  Vec2 v_min;
};

inline Eigen2 eigen(Sym2 m) {
  const double mean = 0.5 * (m.a + m.c);
  const double half_diff = 0.5 * (m.a - m.c);
  const double radius = std::hypot(half_diff, m.b);
  const double angle = 0.5 * std::atan2(m.b, half_diff);
  Eigen2 e;
  e.lambda_max = mean + radius;
  // mean - radius loses precision for nearly singular matrices; the product of
  // eigenvalues is the determinant.
  e.lambda_min = e.lambda_max != 0.0 ? m.det() / e.lambda_max : mean - radius;
  e.v_max = {std::cos(angle), std::sin(angle)};
  e.v_min = {-e.v_max.y, e.v_max.x};
  return e;
}

inline double lambda_min(Sym2 m) { return eigen(m).lambda_min; }
inline double lambda_max(Sym2 m) { return eigen(m).lambda_max; }

inline bool is_positive_definite(Sym2 m, double threshold = 1e-12) {
  return m.a > 0.0 && lambda_min(m) > threshold;
}

inline Sym2 inverse(Sym2 m) {
  const double d = m.det();
  return {m.c / d, -m.b / d, m.a / d};
}

/// Principal square root of an SPD matrix: (M + sqrt(det) I) / sqrt(tr + 2 sqrt(det)).
inline Sym2 sqrtm(Sym2 m) {
  const double s = std::sqrt(m.det());
  const double t = std::sqrt(m.trace() + 2.0 * s);
  return {(m.a + s) / t, m.b / t, (m.c + s) / t};
}

inline Sym2 inv_sqrtm(Sym2 m) { return inverse(sqrtm(m)); }

/// Rotation U diag(d0, d1) Uᵀ with U the rotation by `angle` radians.
inline Sym2 rotated_diagonal(double d0, double d1, double angle) {
  const double cs = std::cos(angle);
  const double sn = std::sin(angle);
  return {d0 * cs * cs + d1 * sn * sn, (d0 - d1) * cs * sn, d0 * sn * sn + d1 * cs * cs};
}

}  // namespace hqvp
