#include "radarint/timing.hpp"

#include <cmath>
#include <string>

#include "radarint/error.hpp"

namespace radarint {

RadarTimingSpec RadarTimingSpec::front() { return RadarTimingSpec{}; }

RadarTimingSpec RadarTimingSpec::corner() {
  RadarTimingSpec s;
  s.b_total_hz = 3e9;
  s.b_chirp_hz = 1.5e9;
  s.b_adc_hz = 100e6;
  s.f_beat_max_hz = 97.29e6;
  s.t_chirp_s = 10.3e-6;
  s.t_rep_chirp_s = 12.8e-6;
  s.n_chirps = 1555;
  s.duty_cycle = 0.25;
  s.x_f = 0.5;
  s.k_ch = 78;
  s.m_consecutive = 3;
  return s;
}

void RadarTimingSpec::validate() const {
  auto fail = [](const std::string& what) { throw ValidationError("timing: " + what); };
  if (!(t_chirp_s > 0.0)) fail("T_ch must be > 0");
  if (!(t_chirp_s <= t_rep_chirp_s)) fail("T_ch must not exceed T_rch");
  if (!(b_chirp_hz > 0.0)) fail("B_ch must be > 0");
  if (!(b_chirp_hz <= b_total_hz)) fail("B_ch must not exceed B_TOT");
  if (!(b_adc_hz > 0.0)) fail("B_ADC must be > 0");
  if (!(f_beat_max_hz > 0.0)) fail("maximum beat frequency must be > 0");
  if (n_chirps < 1) fail("N_ch must be >= 1");
  if (k_ch < 1 || k_ch > n_chirps) fail("K_ch must lie in [1, N_ch]");
  if (m_consecutive < 1) fail("M must be >= 1");
  if (!(duty_cycle > 0.0 && duty_cycle <= 1.0)) fail("duty cycle must lie in (0, 1]");
  if (!(x_f >= 0.0 && x_f <= 1.0)) fail("x_f must lie in [0, 1]");
  const double slots = n_chirps / duty_cycle;
  if (std::abs(slots - std::round(slots)) > 1e-9 * slots) {
    fail("N_ch / duty cycle must be an integer (frame repetition time a multiple of T_rch)");
  }
}

std::int64_t RadarTimingSpec::frame_slots() const {
  return static_cast<std::int64_t>(std::llround(n_chirps / duty_cycle));
}

FrameShape FrameShape::of(const RadarTimingSpec& spec) {
  return FrameShape{spec.n_chirps, spec.frame_slots(), spec.k_ch};
}

void FrameShape::validate() const {
  if (n_chirps < 1) throw ValidationError("frame: N_ch must be >= 1");
  if (slots < n_chirps) throw ValidationError("frame: slots per period must be >= N_ch");
  if (k_ch < 1) throw ValidationError("frame: K_ch must be >= 1");
}

double frame_repetition_time(const RadarTimingSpec& spec) {
  return spec.t_rep_chirp_s * spec.n_chirps / spec.duty_cycle;
}

const char* to_string(Scheme scheme) {
  switch (scheme) {
    case Scheme::Baseline: return "baseline";
    case Scheme::FrameHopping: return "frame_hopping";
    case Scheme::ChirpHopping: return "chirp_hopping";
  }
  return "?";
}

Scheme parse_scheme(const std::string& text) {
  if (text == "baseline") return Scheme::Baseline;
  if (text == "frame_hopping" || text == "frame") return Scheme::FrameHopping;
  if (text == "chirp_hopping" || text == "chirp") return Scheme::ChirpHopping;
  throw ValidationError("unknown scheme '" + text + "'");
}

}  // namespace radarint
