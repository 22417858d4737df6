#include "radarint/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "radarint/error.hpp"

namespace radarint {

namespace {
// Rounding allowance for the closed half-angle rule, relative to |v|.
constexpr double kFovSlack = 1e-12;
constexpr double kOutlineInset = 1e-6;
}  // namespace

bool in_fov(Vec2 origin, double boresight_deg, double fov_deg, Vec2 point) {
  const Vec2 v = point - origin;
  const double len = norm(v);
  if (len == 0.0) return false;
  if (fov_deg >= 360.0) return true;
  const Vec2 u = heading_vector(boresight_deg);
  const double half = deg2rad(fov_deg / 2.0);
  // Compare angles through cosines: cheap, and monotone on [0, pi].
  return dot(u, v) >= len * (std::cos(half) - kFovSlack);
}

bool in_fov(const RadarInstance& radar, Vec2 point) {
  return in_fov(radar.position(), radar.boresight, radar.fov, point);
}

bool segment_hits_vehicle(Vec2 a, Vec2 b, const VehicleState& vehicle) {
  // Work in the vehicle frame, where the footprint is an axis-aligned box.
  const Vec2 p = rotate(a - vehicle.center(), -vehicle.heading);
  const Vec2 q = rotate(b - vehicle.center(), -vehicle.heading);
  const Vec2 d = q - p;
  const double hx = vehicle.length / 2.0 - kOutlineInset;
  const double hy = vehicle.width / 2.0 - kOutlineInset;
  if (hx <= 0.0 || hy <= 0.0) return false;

  // Open slabs give open parameter intervals; the segment meets the open box
  // iff the intersection of those intervals with (0, 1) is non-empty.
  double lo = 0.0;
  double hi = 1.0;
  auto clip = [&](double start, double delta, double half) {
    if (delta == 0.0) return std::abs(start) < half;
    double t0 = (-half - start) / delta;
    double t1 = (half - start) / delta;
    if (t0 > t1) std::swap(t0, t1);
    lo = std::max(lo, t0);
    hi = std::min(hi, t1);
    return lo < hi;
  };
  return clip(p.x, d.x, hx) && clip(p.y, d.y, hy);
}

bool segment_blocked(Vec2 a, Vec2 b, std::span<const VehicleState> obstacles,
                     const std::set<std::int64_t>& exclude) {
  for (const auto& v : obstacles) {
    if (exclude.count(v.id)) continue;
    if (segment_hits_vehicle(a, b, v)) return true;
  }
  return false;
}

std::array<Vec2, 8> reflection_points(const VehicleState& v) {
  const double hl = v.length / 2.0;
  const double hw = v.width / 2.0;
  const std::array<Vec2, 8> local{{{hl, hw},
                                   {hl, -hw},
                                   {-hl, -hw},
                                   {-hl, hw},
                                   {hl, 0.0},
                                   {0.0, -hw},
                                   {-hl, 0.0},
                                   {0.0, hw}}};
  std::array<Vec2, 8> out{};
  for (std::size_t i = 0; i < local.size(); ++i) out[i] = v.to_world(local[i]);
  return out;
}

RayPath RayPath::direct(double d) { return RayPath{PathKind::Direct, d, 0.0, std::nullopt, std::nullopt}; }

RayPath RayPath::reflected(double d1, double d2, Vec2 point, std::int64_t reflector) {
  return RayPath{PathKind::Reflected, d1, d2, point, reflector};
}

const char* to_string(PathKind kind) { return kind == PathKind::Direct ? "direct" : "reflected"; }

}  // namespace radarint
