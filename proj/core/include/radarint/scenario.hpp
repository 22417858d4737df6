#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "radarint/vec2.hpp"

namespace radarint {

/// Pose and rectangular footprint of one vehicle at one instant.
struct VehicleState {
  std::int64_t id = 0;
  double x = 0.0;        ///< footprint centre [m]
  double y = 0.0;        ///< footprint centre [m]
  double heading = 0.0;  ///< degrees in [0, 360), 0 = +x
  double length = 4.5;   ///< [m], along the heading
  double width = 1.8;    ///< [m]

  Vec2 center() const { return {x, y}; }
  /// Vehicle-frame point (forward, left) expressed in world coordinates.
  Vec2 to_world(Vec2 local) const { return center() + rotate(local, heading); }
};

/// Throws ValidationError unless length, width are positive and finite and the
/// heading lies in [0, 360).
void validate(const VehicleState& vehicle);

struct Snapshot {
  double time = 0.0;  ///< [s]
  std::vector<VehicleState> vehicles;
};

/// Throws ValidationError on duplicate vehicle ids or invalid vehicles.
void validate(const Snapshot& snapshot);

struct HighwayConfig {
  int lanes_per_direction = 3;
  double lane_width = 3.5;       ///< [m]
  double length = 8000.0;        ///< [m]
  double density = 150.0;        ///< vehicles/km summed over every lane
  double min_headway = 7.0;      ///< centre-to-centre spacing within a lane [m]
  double vehicle_length = 4.5;   ///< [m]
  double vehicle_width = 1.8;    ///< [m]
  std::uint64_t seed = 1;
  int snapshots = 1;             ///< independent draws, one per time step
  double snapshot_interval = 1.0;  ///< [s] between the time stamps of draws

  void validate() const;
  /// round(density * length / 1000)
  std::int64_t total_vehicles() const;
};

/// Places vehicles on a straight two-way highway along the x axis. Lanes of
/// heading 0 lie at y < 0, lanes of heading 180 at y > 0. The vehicle count is
/// split as evenly as possible over all lanes; within a lane the positions are
/// uniform subject to the minimum headway. Deterministic in `config.seed`.
/// Throws CapacityError if a lane cannot hold its share.
std::vector<Snapshot> generate_highway(const HighwayConfig& config);

enum class SnapshotFormat { Csv };

/// Reads `time,id,x,y,heading,length,width` rows (header required). Rows are
/// grouped into one snapshot per distinct time, ordered by time; headings are
/// normalised to [0, 360). Throws ParseError with the line number for a
/// malformed row, ValidationError for a duplicate (time, id) and IoError when
/// the file cannot be read.
std::vector<Snapshot> load_snapshots(const std::filesystem::path& path,
                                     SnapshotFormat format = SnapshotFormat::Csv);
std::vector<Snapshot> read_snapshots_csv(std::istream& in);

void write_snapshots_csv(std::ostream& out, const std::vector<Snapshot>& snapshots);
void save_snapshots(const std::filesystem::path& path, const std::vector<Snapshot>& snapshots);

/// Keeps the first snapshot and then every snapshot at least `interval`
/// seconds after the previously kept one. interval <= 0 keeps everything.
std::vector<Snapshot> sample_snapshots(const std::vector<Snapshot>& snapshots, double interval);

// ---------------------------------------------------------------------------
// Radars

enum class RadarKind { Front, Corner };

enum class MountPoint { FrontCenter, FrontLeft, FrontRight, RearLeft, RearRight };

/// Where radars sit on every vehicle of a scenario.
struct RadarLayout {
  RadarKind kind = RadarKind::Front;
  double fov = 30.0;                        ///< degrees, same for every radar
  std::vector<double> boresight_offsets;    ///< degrees relative to heading
  std::vector<MountPoint> mount_points;

  /// One forward-looking radar, 30 degree field of view.
  static RadarLayout front(double fov = 30.0);
  /// Four corner radars at +-45 / +-135 degrees, 60 degree field of view.
  static RadarLayout corner(double fov = 60.0);
  static RadarLayout for_kind(RadarKind kind);

  /// Front: exactly one radar. Corner: exactly four radars whose angular
  /// sectors do not overlap.
  void validate() const;
};

struct RadarInstance {
  std::int64_t vehicle_id = 0;
  double x = 0.0;
  double y = 0.0;
  double boresight = 0.0;  ///< absolute degrees in [0, 360)
  double fov = 30.0;       ///< degrees in (0, 360]
  RadarKind kind = RadarKind::Front;
  MountPoint mount = MountPoint::FrontCenter;

  Vec2 position() const { return {x, y}; }
};

/// Vehicle-frame coordinates of a mount point.
Vec2 mount_offset(MountPoint mount, double length, double width);

std::vector<RadarInstance> place_radars(const VehicleState& vehicle, const RadarLayout& layout);

const char* to_string(RadarKind kind);
const char* to_string(MountPoint mount);
RadarKind parse_radar_kind(const std::string& text);

}  // namespace radarint
