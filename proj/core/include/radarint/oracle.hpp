#pragma once

#include <cstdint>

#include "radarint/distribution.hpp"
#include "radarint/timing.hpp"

// Independent simulators for the closed-form models. Nothing here calls the
// models module: every probability is produced by drawing events or by
// enumerating them.

namespace radarint {

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
};

/// Collision parameters seen by one victim frame.
struct CollisionModel {
  double p_f = 1.0;        ///< two chirps of hopping radars overlap in band
  double p_t_chirp = 1.0;  ///< two overlapping-band chirps collide in time
  FrameShape shape;
  int m = 1;               ///< consecutive frames that make a failure
  FrameOverlap overlap = FrameOverlap::Approximate;

  void validate() const;
};

/// Signal-level test for one attacker chirp against one victim chirp with
/// identical slope: they overlap in time, share at least x_f of the band,
/// and the beat tone lands inside the ADC bandwidth.
/// dt = attacker minus victim start time, |dt| <= T_rch; df likewise in Hz.
bool chirp_pair_collides(double dt, double df, const RadarTimingSpec& spec);

/// Uniform start-frequency pairs on [0, B_TOT - B_ch]; counts
/// |x - y| < (1 - x_f) B_ch, or every pair when the band has no slack.
McEstimate mc_freq_overlap(double b_total, double b_chirp, double x_f, std::uint64_t trials,
                           std::uint64_t seed, unsigned threads = 1);

/// chirp_pair_collides over dt uniform on [-T_rch, T_rch] with df = 0.
McEstimate mc_chirp_collision(const RadarTimingSpec& spec, std::uint64_t trials,
                              std::uint64_t seed, unsigned threads = 1);

/// Frames of one victim against one attacker: draw the attacker slot offset,
/// count overlapping chirps z, draw z collisions at per_chirp_p, record a
/// loss when at least K_ch collide. Exact draws the offset uniformly over
/// the frame period; Approximate gives every z = 1..N_ch probability
/// 2 / slots and needs slots >= 2 N_ch.
McEstimate mc_frame_loss(const FrameShape& shape, double per_chirp_p, std::uint64_t trials,
                         std::uint64_t seed, FrameOverlap overlap = FrameOverlap::Exact,
                         unsigned threads = 1);
McEstimate mc_frame_loss(const RadarTimingSpec& spec, double per_chirp_p, std::uint64_t trials,
                         std::uint64_t seed, FrameOverlap overlap = FrameOverlap::Exact,
                         unsigned threads = 1);

/// M consecutive frames of one victim among n ~ dist attackers. Baseline
/// draws each attacker's band overlap once and keeps it, frame hopping
/// redraws it every frame, chirp hopping every chirp. A frame is lost when
/// some attacker ruins K_ch of its chirps; a trial fails when all M are.
McEstimate mc_system_failure(const InterfererDistribution& dist, const CollisionModel& model,
                             Scheme scheme, std::uint64_t trials, std::uint64_t seed,
                             unsigned threads = 1);

/// Exact frame loss probability by listing every slot offset and every
/// collision pattern of the overlapping chirps. N_ch is limited to 20.
double enumerate_frame_loss(const FrameShape& shape, double per_chirp_p,
                            FrameOverlap overlap = FrameOverlap::Exact);

/// |mc - analytic| <= 3 max(SE_mc, sqrt(a (1 - a) / trials)) + 1e-12. The
/// analytic standard error keeps the test meaningful when the sample mean
/// sits at 0 or 1.
bool within_three_sigma(const McEstimate& mc, double analytic);

}  // namespace radarint
