#pragma once

#include <cmath>
#include <limits>
#include <string>

#include "choreo/error.hpp"

namespace choreo {

/// Planar point / vector. Every body position in the library is a Vec2.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2() = default;
  constexpr Vec2(double x_, double y_) : x(x_), y(y_) {}

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator-() const { return {-x, -y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(Vec2 o) { x += o.x; y += o.y; return *this; }
  Vec2& operator-=(Vec2 o) { x -= o.x; y -= o.y; return *this; }

  double norm() const { return std::hypot(x, y); }
  double norm2() const { return x * x + y * y; }
  bool finite() const { return std::isfinite(x) && std::isfinite(y); }

  Vec2 normalized() const {
    const double n = norm();
    return {x / n, y / n};
  }
};

constexpr Vec2 operator*(double s, Vec2 v) { return {v.x * s, v.y * s}; }

constexpr double dot(Vec2 u, Vec2 v) { return u.x * v.x + u.y * v.y; }

/// 2D wedge product u ∧ v; the scalar that plays the role of angular momentum.
constexpr double cross(Vec2 u, Vec2 v) { return u.x * v.y - u.y * v.x; }

/// The involution q ↦ -q - q3. For a point-symmetric curve it sends one
/// member of a centre-of-mass pair to the other.
constexpr Vec2 star_map(Vec2 q, Vec2 q3) { return {-q.x - q3.x, -q.y - q3.y}; }

/// Line through `point` with direction `direction` (must be non-zero).
struct Line {
  Vec2 point;
  Vec2 direction;

  Line(Vec2 p, Vec2 d) : point(p), direction(d) {
    if (!(d.norm2() > 0.0)) {
      raise(ErrorCode::DomainViolation, "Line direction must be non-zero");
    }
  }
};

namespace detail {
// Scale-free parallelism test between two directions.
inline bool nearly_parallel(Vec2 d1, Vec2 d2, double rel = 1e-12) {
  return std::abs(cross(d1, d2)) < rel * d1.norm() * d2.norm();
}
}  // namespace detail

/// Distance from point p to the (infinite) line l.
inline double point_line_distance(Vec2 p, const Line& l) {
  return std::abs(cross(l.direction, p - l.point)) / l.direction.norm();
}

/// Intersection of two non-parallel lines. Throws ParallelLines.
inline Vec2 line_intersection(const Line& l1, const Line& l2) {
  if (detail::nearly_parallel(l1.direction, l2.direction)) {
    raise(ErrorCode::ParallelLines, "line directions are parallel");
  }
  const double t =
      cross(l2.point - l1.point, l2.direction) / cross(l1.direction, l2.direction);
  return l1.point + t * l1.direction;
}

/// True iff the three lines pass through a common point, tested as the
/// distance between l1 ∩ l2 and l3 in length units.
/// Throws ParallelLines when any two directions are parallel; at symmetric
/// configurations parallel tangents do occur and the caller decides.
inline bool three_lines_concurrent(const Line& l1, const Line& l2, const Line& l3,
                                   double tol) {
  if (detail::nearly_parallel(l1.direction, l2.direction) ||
      detail::nearly_parallel(l1.direction, l3.direction) ||
      detail::nearly_parallel(l2.direction, l3.direction)) {
    raise(ErrorCode::ParallelLines, "two of the three lines are parallel");
  }
  const Vec2 p = line_intersection(l1, l2);
  return point_line_distance(p, l3) <= tol;
}

}  // namespace choreo
