#include "radarint/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>
#include <sstream>
#include <string>
#include <utility>

#include "radarint/error.hpp"
#include "radarint/format.hpp"
#include "radarint/rng.hpp"

namespace radarint {

void validate(const VehicleState& v) {
  const auto id = std::to_string(v.id);
  if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
    throw ValidationError("vehicle " + id + ": position must be finite");
  }
  if (!(v.length > 0.0) || !std::isfinite(v.length)) {
    throw ValidationError("vehicle " + id + ": length must be > 0");
  }
  if (!(v.width > 0.0) || !std::isfinite(v.width)) {
    throw ValidationError("vehicle " + id + ": width must be > 0");
  }
  if (!(v.heading >= 0.0 && v.heading < 360.0)) {
    throw ValidationError("vehicle " + id + ": heading must lie in [0, 360)");
  }
}

void validate(const Snapshot& snapshot) {
  std::set<std::int64_t> ids;
  for (const auto& v : snapshot.vehicles) {
    validate(v);
    if (!ids.insert(v.id).second) {
      throw ValidationError("snapshot t=" + format_double(snapshot.time) +
                            ": duplicate vehicle id " + std::to_string(v.id));
    }
  }
}

// ---------------------------------------------------------------------------
// Highway generator

void HighwayConfig::validate() const {
  if (lanes_per_direction < 1) throw ValidationError("lanes_per_direction must be >= 1");
  if (!(lane_width > 0.0)) throw ValidationError("lane_width must be > 0");
  if (!(length > 0.0)) throw ValidationError("length must be > 0");
  if (!(density > 0.0) || !std::isfinite(density)) throw ValidationError("density must be > 0");
  if (!(vehicle_length > 0.0) || !(vehicle_width > 0.0)) {
    throw ValidationError("vehicle dimensions must be > 0");
  }
  if (!(min_headway >= vehicle_length)) {
    throw ValidationError("min_headway must be >= vehicle_length");
  }
  if (snapshots < 1) throw ValidationError("snapshots must be >= 1");
  if (!(snapshot_interval > 0.0)) throw ValidationError("snapshot_interval must be > 0");
}

std::int64_t HighwayConfig::total_vehicles() const {
  return static_cast<std::int64_t>(std::llround(density * length / 1000.0));
}

namespace {

// Centre positions of `count` vehicles in a lane of `length` metres, uniformly
// distributed among all arrangements with centre spacing >= headway. Drawing
// count points on the slack interval, sorting and re-inserting the mandatory
// gaps samples exactly that distribution, without rejection loops.
std::vector<double> place_in_lane(Rng& rng, std::int64_t count, double length, double headway) {
  const double slack = length - static_cast<double>(count) * headway;
  std::vector<double> xs(static_cast<std::size_t>(count));
  for (auto& x : xs) x = rng.uniform() * slack;
  std::sort(xs.begin(), xs.end());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    xs[i] += (static_cast<double>(i) + 0.5) * headway;
  }
  return xs;
}

}  // namespace

std::vector<Snapshot> generate_highway(const HighwayConfig& config) {
  config.validate();
  const std::int64_t total = config.total_vehicles();
  const int lanes = 2 * config.lanes_per_direction;
  const std::int64_t base = total / lanes;
  const std::int64_t extra = total % lanes;

  // Lane order alternates direction so a remainder is shared between them.
  std::vector<std::int64_t> per_lane(static_cast<std::size_t>(lanes));
  for (int lane = 0; lane < lanes; ++lane) {
    const int order = (lane % 2) * config.lanes_per_direction + lane / 2;
    per_lane[static_cast<std::size_t>(lane)] = base + (order < extra ? 1 : 0);
  }
  const std::int64_t busiest = *std::max_element(per_lane.begin(), per_lane.end());
  if (static_cast<double>(busiest) * config.min_headway > config.length) {
    throw CapacityError("density " + format_double(config.density) + " veh/km needs " +
                        std::to_string(busiest) + " vehicles per lane, but a " +
                        format_double(config.length) + " m lane holds at most " +
                        std::to_string(static_cast<std::int64_t>(config.length / config.min_headway)) +
                        " with min_headway " + format_double(config.min_headway) + " m");
  }

  std::vector<Snapshot> out;
  out.reserve(static_cast<std::size_t>(config.snapshots));
  for (int s = 0; s < config.snapshots; ++s) {
    Snapshot snap;
    snap.time = s * config.snapshot_interval;
    snap.vehicles.reserve(static_cast<std::size_t>(total));
    std::int64_t next_id = 0;
    for (int lane = 0; lane < lanes; ++lane) {
      Rng rng(stream_seed(config.seed, static_cast<std::uint64_t>(s) * 1024u +
                                           static_cast<std::uint64_t>(lane)));
      const bool eastbound = lane % 2 == 0;
      const int index = lane / 2;  // 0 = outermost-right lane of that direction
      const double offset = (config.lanes_per_direction - index - 0.5) * config.lane_width;
      const double y = eastbound ? -offset : offset;
      for (double along : place_in_lane(rng, per_lane[static_cast<std::size_t>(lane)],
                                        config.length, config.min_headway)) {
        VehicleState v;
        v.id = next_id++;
        v.x = eastbound ? along : config.length - along;
        v.y = y;
        v.heading = eastbound ? 0.0 : 180.0;
        v.length = config.vehicle_length;
        v.width = config.vehicle_width;
        snap.vehicles.push_back(v);
      }
    }
    out.push_back(std::move(snap));
  }
  return out;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

constexpr const char* kHeader = "time,id,x,y,heading,length,width";

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(trim(field));
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

}  // namespace

std::vector<Snapshot> read_snapshots_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    if (!trim(line).empty()) break;
  }
  std::string header = trim(line);
  if (header.size() >= 3 && static_cast<unsigned char>(header[0]) == 0xEF) header.erase(0, 3);
  if (header != kHeader) {
    throw ParseError(line_no, std::string("expected header '") + kHeader + "'");
  }

  std::map<double, Snapshot> by_time;
  std::set<std::pair<double, std::int64_t>> seen;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split_fields(line);
    if (f.size() != 7) {
      throw ParseError(line_no, "expected 7 fields, found " + std::to_string(f.size()));
    }
    VehicleState v;
    double time = 0.0;
    try {
      time = parse_double(f[0]);
      std::size_t used = 0;
      v.id = std::stoll(f[1], &used);
      if (used != f[1].size()) throw std::invalid_argument("bad id");
      v.x = parse_double(f[2]);
      v.y = parse_double(f[3]);
      v.heading = parse_double(f[4]);
      v.length = parse_double(f[5]);
      v.width = parse_double(f[6]);
    } catch (const std::exception& e) {
      throw ParseError(line_no, std::string("malformed row: ") + e.what());
    }
    if (!std::isfinite(time) || !std::isfinite(v.heading)) {
      throw ParseError(line_no, "time and heading must be finite");
    }
    v.heading = normalize_degrees(v.heading);
    try {
      validate(v);
    } catch (const ValidationError& e) {
      throw ParseError(line_no, e.what());
    }
    if (!seen.emplace(time, v.id).second) {
      throw ValidationError("line " + std::to_string(line_no) + ": duplicate (time, id) = (" +
                            format_double(time) + ", " + std::to_string(v.id) + ")");
    }
    auto& snap = by_time[time];
    snap.time = time;
    snap.vehicles.push_back(v);
  }

  std::vector<Snapshot> out;
  out.reserve(by_time.size());
  for (auto& [t, snap] : by_time) out.push_back(std::move(snap));
  return out;
}

std::vector<Snapshot> load_snapshots(const std::filesystem::path& path, SnapshotFormat format) {
  (void)format;  // CSV is the only format
  std::ifstream in(path);
  if (!in) throw IoError("cannot open scenario file " + path.string());
  return read_snapshots_csv(in);
}

void write_snapshots_csv(std::ostream& out, const std::vector<Snapshot>& snapshots) {
  out << kHeader << '\n';
  for (const auto& snap : snapshots) {
    const std::string t = format_double(snap.time);
    for (const auto& v : snap.vehicles) {
      out << t << ',' << v.id << ',' << format_double(v.x) << ',' << format_double(v.y) << ','
          << format_double(v.heading) << ',' << format_double(v.length) << ','
          << format_double(v.width) << '\n';
    }
  }
}

void save_snapshots(const std::filesystem::path& path, const std::vector<Snapshot>& snapshots) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_snapshots_csv(out, snapshots);
  if (!out) throw IoError("write failed for " + path.string());
}

std::vector<Snapshot> sample_snapshots(const std::vector<Snapshot>& snapshots, double interval) {
  if (!(interval > 0.0)) return snapshots;
  std::vector<Snapshot> out;
  double last = 0.0;
  for (const auto& s : snapshots) {
    // half-ulp slack so 0.1-step traces sampled at 1 s keep every tenth row
    if (out.empty() || s.time - last >= interval * (1.0 - 1e-9)) {
      out.push_back(s);
      last = s.time;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Radars

RadarLayout RadarLayout::front(double fov) {
  return RadarLayout{RadarKind::Front, fov, {0.0}, {MountPoint::FrontCenter}};
}

RadarLayout RadarLayout::corner(double fov) {
  return RadarLayout{RadarKind::Corner,
                     fov,
                     {45.0, -45.0, 135.0, -135.0},
                     {MountPoint::FrontLeft, MountPoint::FrontRight, MountPoint::RearLeft,
                      MountPoint::RearRight}};
}

RadarLayout RadarLayout::for_kind(RadarKind kind) {
  return kind == RadarKind::Front ? front() : corner();
}

void RadarLayout::validate() const {
  if (boresight_offsets.size() != mount_points.size()) {
    throw ValidationError("layout: boresight_offsets and mount_points differ in length");
  }
  if (!(fov > 0.0 && fov <= 360.0)) throw ValidationError("layout: fov must lie in (0, 360]");
  if (kind == RadarKind::Front && mount_points.size() != 1) {
    throw ValidationError("layout: a front layout has exactly one radar");
  }
  if (kind == RadarKind::Corner) {
    if (mount_points.size() != 4) {
      throw ValidationError("layout: a corner layout has exactly four radars");
    }
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = i + 1; j < 4; ++j) {
        const double d = normalize_degrees(boresight_offsets[i] - boresight_offsets[j]);
        const double sep = std::min(d, 360.0 - d);
        if (sep < fov) {
          throw ValidationError("layout: corner radar fields of view overlap");
        }
      }
    }
  }
}

Vec2 mount_offset(MountPoint mount, double length, double width) {
  const double hl = length / 2.0;
  const double hw = width / 2.0;
  switch (mount) {
    case MountPoint::FrontCenter: return {hl, 0.0};
    case MountPoint::FrontLeft: return {hl, hw};
    case MountPoint::FrontRight: return {hl, -hw};
    case MountPoint::RearLeft: return {-hl, hw};
    case MountPoint::RearRight: return {-hl, -hw};
  }
  return {};
}

std::vector<RadarInstance> place_radars(const VehicleState& vehicle, const RadarLayout& layout) {
  std::vector<RadarInstance> out;
  out.reserve(layout.mount_points.size());
  for (std::size_t i = 0; i < layout.mount_points.size(); ++i) {
    const MountPoint m = layout.mount_points[i];
    const Vec2 p = vehicle.to_world(mount_offset(m, vehicle.length, vehicle.width));
    RadarInstance r;
    r.vehicle_id = vehicle.id;
    r.x = p.x;
    r.y = p.y;
    r.boresight = normalize_degrees(vehicle.heading + layout.boresight_offsets[i]);
    r.fov = layout.fov;
    r.kind = layout.kind;
    r.mount = m;
    out.push_back(r);
  }
  return out;
}

const char* to_string(RadarKind kind) { return kind == RadarKind::Front ? "front" : "corner"; }

const char* to_string(MountPoint mount) {
  switch (mount) {
    case MountPoint::FrontCenter: return "front-center";
    case MountPoint::FrontLeft: return "front-left";
    case MountPoint::FrontRight: return "front-right";
    case MountPoint::RearLeft: return "rear-left";
    case MountPoint::RearRight: return "rear-right";
  }
  return "?";
}

RadarKind parse_radar_kind(const std::string& text) {
  if (text == "front") return RadarKind::Front;
  if (text == "corner") return RadarKind::Corner;
  throw ValidationError("unknown radar layout '" + text + "' (expected front or corner)");
}

}  // namespace radarint
