#include "radarint/link_budget.hpp"

#include <cmath>
#include <stdexcept>

#include "radarint/error.hpp"
#include "radarint/vec2.hpp"

namespace radarint {

LinkBudgetSpec LinkBudgetSpec::front() { return LinkBudgetSpec{}; }

LinkBudgetSpec LinkBudgetSpec::corner() {
  LinkBudgetSpec s;
  s.eirp_dbm = 15.0;
  s.rx_gain_db = 23.0;
  return s;
}

void LinkBudgetSpec::validate() const {
  if (!(carrier_hz > 0.0)) throw ValidationError("link budget: carrier frequency must be > 0");
  if (!(adc_bandwidth_hz > 0.0)) throw ValidationError("link budget: ADC bandwidth must be > 0");
  if (!(rcs_m2 > 0.0)) throw ValidationError("link budget: RCS must be > 0");
  if (!(boltzmann > 0.0) || !(ref_temp_k > 0.0) || !(light_speed > 0.0)) {
    throw ValidationError("link budget: physical constants must be > 0");
  }
  for (double db : {eirp_dbm, rx_gain_db, noise_figure_db, min_inr_db}) {
    if (!std::isfinite(db)) throw ValidationError("link budget: dB values must be finite");
  }
}

double equivalent_distance(double d1, double d2, double rcs) {
  if (!(d1 > 0.0) || !(d2 > 0.0) || !(rcs > 0.0)) {
    throw std::domain_error("equivalent_distance: d1, d2 and rcs must be > 0");
  }
  return d1 * d2 * std::sqrt(4.0 * kPi / rcs);
}

double max_equivalent_distance(const LinkBudgetSpec& s) {
  s.validate();
  const double noise_dbw = 10.0 * std::log10(s.boltzmann * s.ref_temp_k * s.adc_bandwidth_hz);
  const double margin_db =
      s.eirp_dbm - 30.0 + s.rx_gain_db - noise_dbw - s.noise_figure_db - s.min_inr_db;
  return s.light_speed / (4.0 * kPi * s.carrier_hz) * std::pow(10.0, margin_db / 20.0);
}

RadarMetrics derived_radar_metrics(const RadarTimingSpec& t, double carrier_hz, double c) {
  RadarMetrics m;
  m.r_max_m = c / 4.0 * (2.0 * t.f_beat_max_hz * t.t_chirp_s / t.b_chirp_hz);
  m.range_resolution_m = c / (2.0 * t.b_chirp_hz);
  m.v_max_mps = c / (4.0 * carrier_hz * t.t_rep_chirp_s);
  const double frame_duration = t.t_rep_chirp_s * t.n_chirps;
  m.velocity_resolution_mps = c / (2.0 * carrier_hz * frame_duration);
  m.tau_max_s = t.t_chirp_s * t.f_beat_max_hz / t.b_chirp_hz;
  return m;
}

}  // namespace radarint
