#pragma once

#include <cstdint>
#include <string>

namespace radarint {

/// Chirp and frame parameters of an FMCW radar, as used by the collision
/// models. All quantities are SI (Hz, seconds).
struct RadarTimingSpec {
  double b_total_hz = 3e9;        ///< spectrum shared by all radars
  double b_chirp_hz = 150e6;      ///< swept bandwidth of one chirp
  double b_adc_hz = 100e6;        ///< ADC (IF) bandwidth
  double f_beat_max_hz = 68.1e6;  ///< maximum beat frequency
  double t_chirp_s = 5.14e-6;     ///< chirp duration (the FFT window equals it)
  double t_rep_chirp_s = 6.42e-6; ///< chirp repetition interval
  int n_chirps = 2000;            ///< chirps per frame
  double duty_cycle = 0.5;        ///< active share of the frame repetition time
  double x_f = 0.5;               ///< minimum band overlap fraction that counts
  int k_ch = 100;                 ///< collided chirps that make a frame lost
  int m_consecutive = 3;          ///< lost frames in a row that make a failure

  /// 140 GHz front radar defaults.
  static RadarTimingSpec front();
  /// 140 GHz corner radar defaults.
  static RadarTimingSpec corner();

  /// Throws ValidationError naming the first violated invariant:
  /// 0 < T_ch <= T_rch, B_ch <= B_TOT, 1 <= K_ch <= N_ch, M >= 1,
  /// duty cycle in (0, 1], x_f in [0, 1], N_ch / duty cycle integral.
  void validate() const;

  /// Chirp repetition slots in one frame repetition period, N_ch / duty cycle.
  std::int64_t frame_slots() const;
};

/// Frame structure as seen by the time-domain collision model: a frame of
/// `n_chirps` active slots repeating every `slots` slots, lost when at least
/// `k_ch` slots collide.
struct FrameShape {
  int n_chirps = 1;
  std::int64_t slots = 2;
  int k_ch = 1;

  static FrameShape of(const RadarTimingSpec& spec);
  void validate() const;
  double duty_cycle() const { return static_cast<double>(n_chirps) / static_cast<double>(slots); }
};

/// Interference mitigation strategies.
enum class Scheme {
  Baseline,      ///< every radar keeps one random start frequency
  FrameHopping,  ///< start frequency redrawn every frame
  ChirpHopping,  ///< start frequency redrawn every chirp
};

/// How the attacker frame offset is weighted when counting overlapping
/// chirp slots. Approximate gives every overlap z = 1..N_ch two offsets out
/// of N_ch / duty cycle (full overlap is counted twice); Exact enumerates the
/// offsets one by one.
enum class FrameOverlap { Approximate, Exact };

const char* to_string(Scheme scheme);
Scheme parse_scheme(const std::string& text);

/// T_rf = T_rch * N_ch / duty cycle.
double frame_repetition_time(const RadarTimingSpec& spec);

}  // namespace radarint
