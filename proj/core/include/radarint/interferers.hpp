#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <span>
#include <vector>

#include "radarint/distribution.hpp"
#include "radarint/geometry.hpp"
#include "radarint/link_budget.hpp"
#include "radarint/scenario.hpp"
#include "radarint/spatial_index.hpp"

namespace radarint {

// ---------------------------------------------------------------------------
// Compass channel selection

enum class CompassMode {
  Off,
  Effective,            ///< attackers on another channel are dropped
  WorstCaseSameSector,  ///< every radar ends up in one sector: no attacker dropped
};

/// How two-sector compasses split the four corner radars of a vehicle
/// travelling along the x axis.
enum class CornerPairing { FrontVsBack, LeftVsRight };

struct CompassConfig {
  int n_sectors = 2;
  double sector_offset = 90.0;  ///< degrees; start of sector 0
  CompassMode mode = CompassMode::Off;
  CornerPairing corner_pairing = CornerPairing::FrontVsBack;

  static CompassConfig off() { return CompassConfig{}; }
  /// Sector layout used for a radar kind: front radars split east/west at
  /// 90 degrees; corner radars use 2 sectors (front corners apart from rear
  /// corners, or left from right) or 4 sectors centred on the corner
  /// boresights.
  static CompassConfig for_layout(RadarKind kind, int n_sectors, CompassMode mode,
                                  CornerPairing pairing = CornerPairing::FrontVsBack);

  bool enabled() const { return mode != CompassMode::Off; }
  /// n_sectors in {2, 4}; sector_offset finite.
  void validate() const;
};

/// Channel of a radar pointing at `boresight`:
/// floor(((boresight - offset) mod 360) / (360 / n_sectors)).
/// Sectors are half-open, [start, end). Throws std::logic_error when the
/// compass is off.
int compass_channel(double boresight, const CompassConfig& config);

const char* to_string(CompassMode mode);
CompassMode parse_compass_mode(const std::string& text);

// ---------------------------------------------------------------------------
// Potential interferers

struct PotentialInterferer {
  RadarInstance attacker;
  RayPath path;
  double equivalent_distance = 0.0;  ///< [m]
};

/// Radars and spatial indexes of one snapshot. Build once, then query any
/// number of victims; queries are const and may run concurrently.
class InterferenceScene {
 public:
  InterferenceScene(const Snapshot& snapshot, const RadarLayout& layout,
                    double rcs = kVehicleRcs);
  // The obstacle index points into vehicles_.
  InterferenceScene(const InterferenceScene&) = delete;
  InterferenceScene& operator=(const InterferenceScene&) = delete;

  std::span<const RadarInstance> radars() const { return radars_; }
  std::span<const VehicleState> vehicles() const { return vehicles_; }
  double rcs() const { return rcs_; }

  /// Potential interferers of radar `victim` (an index into radars()) with
  /// equivalent distance <= d_max, ordered by equivalent distance.
  std::vector<PotentialInterferer> find(std::size_t victim, double d_max,
                                        const CompassConfig& compass = CompassConfig::off()) const;

  /// Same for an arbitrary radar mounted on a vehicle of the snapshot.
  /// Throws ValidationError when no vehicle has the victim's vehicle id.
  std::vector<PotentialInterferer> find_for(const RadarInstance& victim, double d_max,
                                            const CompassConfig& compass = CompassConfig::off()) const;

 private:
  struct RadarGeom {
    Vec2 pos;
    Vec2 dir;
    double cos_half = -1.0;
    bool full = true;
  };
  static RadarGeom geom_of(const RadarInstance& r);
  static bool sees(const RadarGeom& g, Vec2 point);

  std::vector<VehicleState> vehicles_;
  std::vector<RadarInstance> radars_;
  std::vector<RadarGeom> geoms_;
  std::vector<std::size_t> radar_vehicle_;
  std::vector<std::array<Vec2, 8>> reflectors_;
  ObstacleIndex obstacles_;
  UniformGrid radar_grid_;
  double rcs_;
};

/// Every radar of another vehicle that reaches `victim` directly (clear line
/// of sight, each inside the other's field of view) or, failing that, by one
/// bounce off a reflection point of a third vehicle (both legs clear, the
/// point inside both fields of view; the bounce with the smallest d1*d2 is
/// kept). Entries beyond d_max are dropped, and with an effective compass so
/// are attackers on another channel.
std::vector<PotentialInterferer> find_potential_interferers(const RadarInstance& victim,
                                                            const Snapshot& snapshot,
                                                            const RadarLayout& layout, double d_max,
                                                            const CompassConfig& compass);

enum class CountSplit { All, DirectOnly };

struct CurvePoint {
  double d_max = 0.0;
  double mean_count = 0.0;
};

/// Interferer lists of every (snapshot, radar) pair up to a largest
/// equivalent distance. Distributions and curves for any smaller distance or
/// any compass setting are derived from it without repeating the geometry.
class InterfererCensus {
 public:
  struct Observation {
    std::size_t snapshot = 0;
    RadarInstance victim;
    std::vector<PotentialInterferer> interferers;
  };

  static InterfererCensus run(const std::vector<Snapshot>& snapshots, const RadarLayout& layout,
                              double d_max, unsigned threads = 1, double rcs = kVehicleRcs);

  double d_max() const { return d_max_; }
  const std::vector<Observation>& observations() const { return observations_; }

  /// Interferers of one observation that fall within d_bar and survive the
  /// compass (Effective drops other channels).
  std::size_t count(const Observation& obs, double d_bar, const CompassConfig& compass,
                    CountSplit split = CountSplit::All) const;
  std::vector<std::size_t> counts(double d_bar, const CompassConfig& compass,
                                  CountSplit split = CountSplit::All) const;

  InterfererDistribution distribution(double d_bar, const CompassConfig& compass) const;
  std::vector<CurvePoint> curve(std::span<const double> d_grid, CountSplit split,
                                const CompassConfig& compass) const;

 private:
  double d_max_ = 0.0;
  std::vector<Observation> observations_;
};

/// Empirical PMF of per-radar interferer counts over every (radar, snapshot).
/// Throws ValidationError when there is no radar at all.
InterfererDistribution interferer_distribution(const std::vector<Snapshot>& snapshots,
                                               const RadarLayout& layout, double d_max,
                                               const CompassConfig& compass, unsigned threads = 1);

/// Mean interferer count at each grid distance. The grid must be strictly
/// increasing and positive.
std::vector<CurvePoint> average_count_curve(const std::vector<Snapshot>& snapshots,
                                            const RadarLayout& layout,
                                            std::span<const double> d_grid, CountSplit split,
                                            const CompassConfig& compass, unsigned threads = 1);

void validate_distance_grid(std::span<const double> d_grid);

/// `d_max_m,mean_count_all,mean_count_direct`; both curves share the grid.
void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& all,
                     const std::vector<CurvePoint>& direct);

}  // namespace radarint
