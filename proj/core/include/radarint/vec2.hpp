#pragma once

#include <cmath>

namespace radarint {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Vec2 operator+(Vec2 o) const { return {x + o.x, y + o.y}; }
  constexpr Vec2 operator-(Vec2 o) const { return {x - o.x, y - o.y}; }
  constexpr Vec2 operator*(double s) const { return {x * s, y * s}; }
  constexpr bool operator==(const Vec2&) const = default;
};

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(b - a); }

inline constexpr double kPi = 3.14159265358979323846;

constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Maps any angle in degrees onto [0, 360).
inline double normalize_degrees(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r < 0.0) r += 360.0;
  if (r >= 360.0) r -= 360.0;  // fmod(-tiny) + 360 can round up to 360
  return r;
}

/// Unit vector pointing along `deg` (0 = +x, counter-clockwise).
inline Vec2 heading_vector(double deg) {
  const double r = deg2rad(deg);
  return {std::cos(r), std::sin(r)};
}

/// Rotates `v` counter-clockwise by `deg`.
inline Vec2 rotate(Vec2 v, double deg) {
  const double r = deg2rad(deg);
  const double c = std::cos(r);
  const double s = std::sin(r);
  return {c * v.x - s * v.y, s * v.x + c * v.y};
}

}  // namespace radarint
