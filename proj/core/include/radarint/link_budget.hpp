#pragma once

#include "radarint/timing.hpp"

namespace radarint {

inline constexpr double kSpeedOfLight = 299792458.0;   // m/s
inline constexpr double kBoltzmann = 1.380649e-23;      // J/K
inline constexpr double kReferenceTemperature = 290.0;  // K
/// Radar cross section assumed for every reflecting vehicle [m^2].
inline constexpr double kVehicleRcs = 10.0;

/// Parameters that bound how far away an interferer can still matter.
struct LinkBudgetSpec {
  double eirp_dbm = 35.0;
  double rx_gain_db = 30.0;
  double noise_figure_db = 15.0;
  double carrier_hz = 140e9;
  double adc_bandwidth_hz = 100e6;
  double min_inr_db = 0.0;
  double rcs_m2 = kVehicleRcs;
  double boltzmann = kBoltzmann;
  double ref_temp_k = kReferenceTemperature;
  double light_speed = kSpeedOfLight;

  static LinkBudgetSpec front();
  static LinkBudgetSpec corner();
  void validate() const;
};

/// Line-of-sight distance that would deliver the same power as a single
/// bounce off a scatterer of cross section `rcs`:  sqrt(4 pi d1^2 d2^2 / rcs).
/// Throws std::domain_error unless every argument is positive.
double equivalent_distance(double d1, double d2, double rcs);

/// Largest equivalent distance at which an interferer still reaches the
/// minimum interference-to-noise ratio.
double max_equivalent_distance(const LinkBudgetSpec& spec);

struct RadarMetrics {
  double r_max_m = 0.0;            ///< unambiguous range
  double range_resolution_m = 0.0;
  double v_max_mps = 0.0;
  double velocity_resolution_mps = 0.0;
  double tau_max_s = 0.0;          ///< largest one-way delay that is detected
};

RadarMetrics derived_radar_metrics(const RadarTimingSpec& timing, double carrier_hz,
                                   double light_speed = kSpeedOfLight);

}  // namespace radarint
