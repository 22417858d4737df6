#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "radarint/distribution.hpp"
#include "radarint/interferers.hpp"
#include "radarint/link_budget.hpp"
#include "radarint/scenario.hpp"
#include "radarint/timing.hpp"
#include "radarint/validation.hpp"

namespace radarint::cli {

enum class SweepAxis { Bandwidth, Density, Kch, DutyCycle, MaxDistanceGrid };

const char* to_string(SweepAxis axis);
SweepAxis parse_sweep_axis(const std::string& text);

struct ScenarioSource {
  std::optional<std::filesystem::path> trace;  ///< CSV trace instead of a generated road
  HighwayConfig highway;
  double sample_interval_s = 1.0;
};

struct CompassSettings {
  std::vector<CompassMode> modes{CompassMode::Off};
  int n_sectors = 2;
  std::optional<double> sector_offset;  ///< default depends on the radar kind
  CornerPairing corner_pairing = CornerPairing::FrontVsBack;
};

struct SweepSettings {
  SweepAxis axis = SweepAxis::Bandwidth;
  std::vector<double> values;
};

/// Everything a command needs. Built from defaults, then the config file,
/// then command-line flags.
struct RunConfig {
  ScenarioSource scenario;
  RadarLayout layout = RadarLayout::front();
  RadarTimingSpec timing = RadarTimingSpec::front();
  LinkBudgetSpec link_budget = LinkBudgetSpec::front();
  std::optional<double> d_max_m;  ///< overrides the link budget
  CompassSettings compass;
  std::vector<Scheme> schemes{Scheme::Baseline, Scheme::FrameHopping, Scheme::ChirpHopping};
  std::optional<InterfererDistribution> distribution;  ///< skips the geometry when set
  std::vector<double> d_grid_m;  ///< empty: 40 even steps up to d_max
  SweepSettings sweep;
  FrameOverlap frame_overlap = FrameOverlap::Approximate;
  ValidationOptions validation;
  std::filesystem::path out_dir = "out";
  unsigned threads = 0;
  std::uint64_t seed = 1;

  /// Largest equivalent distance that still matters.
  double d_max() const;
  CompassConfig compass_config(CompassMode mode) const;
  std::vector<double> distance_grid() const;
  void validate() const;
};

/// Parses a JSON config document. Unknown keys and wrong types raise
/// ValidationError; a missing file raises IoError.
RunConfig parse_config(const std::string& json_text);
RunConfig load_config(const std::filesystem::path& path);

}  // namespace radarint::cli
