#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <span>

#include "radarint/scenario.hpp"
#include "radarint/vec2.hpp"

namespace radarint {

/// Closed field-of-view test: true iff the bearing from the radar to `point`
/// deviates from the boresight by at most fov/2. A point on the radar itself
/// is outside.
bool in_fov(const RadarInstance& radar, Vec2 point);
bool in_fov(Vec2 origin, double boresight_deg, double fov_deg, Vec2 point);

/// True iff the open segment (a, b) passes through the interior of the
/// vehicle footprint. Touching the outline (an edge or a corner) does not
/// count; a 1 micrometre inset absorbs rounding on points placed on outlines.
bool segment_hits_vehicle(Vec2 a, Vec2 b, const VehicleState& vehicle);

/// True iff the open segment (a, b) enters any obstacle whose id is not in
/// `exclude`.
bool segment_blocked(Vec2 a, Vec2 b, std::span<const VehicleState> obstacles,
                     const std::set<std::int64_t>& exclude = {});

/// The four footprint corners followed by the four edge midpoints, in world
/// coordinates: front-left, front-right, rear-right, rear-left, front, right,
/// rear, left.
std::array<Vec2, 8> reflection_points(const VehicleState& vehicle);

enum class PathKind { Direct, Reflected };

/// Propagation path from an attacker to a victim. A direct path has d2 = 0
/// and no reflection point.
struct RayPath {
  PathKind kind = PathKind::Direct;
  double d1 = 0.0;  ///< attacker -> reflection point, or the whole direct path
  double d2 = 0.0;  ///< reflection point -> victim
  std::optional<Vec2> reflection_point;
  std::optional<std::int64_t> reflector_id;

  static RayPath direct(double d);
  static RayPath reflected(double d1, double d2, Vec2 point, std::int64_t reflector);
};

const char* to_string(PathKind kind);

}  // namespace radarint
