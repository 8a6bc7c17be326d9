#pragma once

#include <cmath>
#include <span>

namespace midlane::sim {

// Ground-plane position. Height is a map constant and is not simulated.
struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  bool operator==(const Vec2&) const = default;

  Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
};

inline double length(Vec2 v) { return std::sqrt(v.x * v.x + v.y * v.y); }
inline double distance(Vec2 a, Vec2 b) { return length(a - b); }
inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

// Moves `from` toward `to` by at most `step`; lands exactly on `to` when
// the remaining distance is within the step.
inline Vec2 step_toward(Vec2 from, Vec2 to, double step) {
  Vec2 d = to - from;
  double dist = length(d);
  if (dist <= step) return to;
  return from + d * (step / dist);
}

// Vertices in either winding order; boundary (within 1e-6 units) counts as
// inside.
inline bool point_in_convex_polygon(Vec2 p, std::span<const Vec2> poly) {
  if (poly.size() < 3) return false;
  int sign = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    Vec2 a = poly[i];
    Vec2 b = poly[(i + 1) % poly.size()];
    double edge = distance(a, b);
    if (edge == 0.0) continue;
    double side = ((b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)) / edge;
    if (std::fabs(side) <= 1e-6) continue;
    int s = side > 0 ? 1 : -1;
    if (sign == 0) {
      sign = s;
    } else if (s != sign) {
      return false;
    }
  }
  return true;
}

}  // namespace midlane::sim
