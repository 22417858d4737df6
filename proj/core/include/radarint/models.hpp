#pragma once

#include <cstdint>
#include <limits>

#include "radarint/distribution.hpp"
#include "radarint/interferers.hpp"
#include "radarint/timing.hpp"

namespace radarint {

/// Car usage per week, 8 h 22 min [s].
inline constexpr double kCarUseWeekS = 30120.0;
/// Car usage per year at the weekly rate [s].
inline constexpr double kCarUseYearS = kCarUseWeekS * 365.0 / 7.0;
inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Probability that two independently hopping chirps overlap by at least a
/// fraction x_f of the chirp bandwidth, start frequencies uniform on
/// [0, B_TOT - B_ch]. Throws std::domain_error if b_chirp > b_total or an
/// argument is out of range.
double freq_overlap_prob(double b_total, double b_chirp, double x_f);

/// Binomial thinning: keeps each interferer independently with probability
/// p_f. Throws ValidationError for p_f outside [0, 1].
InterfererDistribution effective_interferer_distribution(const InterfererDistribution& dist,
                                                         double p_f);

/// (T_ch / T_rch) * min(1, B_ADC / B_ch).
double chirp_collision_prob(const RadarTimingSpec& spec);
double chirp_collision_prob(double t_chirp, double t_rep_chirp, double b_adc, double b_chirp);

/// P(X = k) and P(X >= k) for X ~ Binomial(n, p), in log space so that
/// n up to 1e4 and more stay finite.
double binomial_pmf(std::int64_t n, std::int64_t k, double p);
double binomial_upper_tail(std::int64_t n, std::int64_t k, double p);

/// Probability that one attacker, colliding with each overlapping chirp
/// independently with probability `per_chirp_p`, ruins at least K_ch chirps
/// of a frame. Approximate is the closed form used by the failure models and
/// is clamped to 1; Exact averages over every slot offset.
double frame_loss_prob_single(const FrameShape& shape, double per_chirp_p,
                              FrameOverlap overlap = FrameOverlap::Approximate);
double frame_loss_prob_single(const RadarTimingSpec& spec, double per_chirp_p,
                              FrameOverlap overlap = FrameOverlap::Approximate);

/// Number of overlapping chirp slots when the attacker frame starts `offset`
/// slots after the victim's, offset in [0, slots).
std::int64_t overlapping_slots(const FrameShape& shape, std::int64_t offset);

// ---------------------------------------------------------------------------
// System failure: M consecutive lost frames

/// sum_{n>=1} P*_n (1 - (1 - p_t_frame)^n)^M with P* thinned by p_f.
double baseline_failure(const InterfererDistribution& dist, double p_f, double p_t_frame, int m);
/// sum_{n>=1} P_n (1 - (1 - p_f p_t_frame)^n)^M.
double frame_hopping_failure(const InterfererDistribution& dist, double p_f, double p_t_frame,
                             int m);
/// sum_{n>=1} P_n (1 - (1 - p1)^n)^M, p1 = frame loss at per-chirp p_f p_t_chirp.
double chirp_hopping_failure(const InterfererDistribution& dist, double p_f, double p_t_chirp,
                             const FrameShape& shape, int m,
                             FrameOverlap overlap = FrameOverlap::Approximate);

struct ModelOptions {
  FrameOverlap overlap = FrameOverlap::Approximate;
};

struct FailureResult {
  Scheme scheme = Scheme::Baseline;
  CompassConfig compass;
  double p_f = 0.0;
  double p_fail = 0.0;
  double t_fail_s = kInfinity;
  double t_rf_s = 0.0;
  /// False when the band (or compass sector) is no wider than one chirp, so
  /// there is nothing to hop over; p_f is then 1.
  bool hopping_possible = true;
};

FailureResult failure_prob_baseline(const InterfererDistribution& dist,
                                    const RadarTimingSpec& spec, const ModelOptions& opts = {});
FailureResult failure_prob_frame_hopping(const InterfererDistribution& dist,
                                         const RadarTimingSpec& spec,
                                         const ModelOptions& opts = {});
FailureResult failure_prob_chirp_hopping(const InterfererDistribution& dist,
                                         const RadarTimingSpec& spec,
                                         const ModelOptions& opts = {});
FailureResult failure_prob(const InterfererDistribution& dist, const RadarTimingSpec& spec,
                           Scheme scheme, const ModelOptions& opts = {});

/// Evaluates `scheme` on a sector of B_TOT / n_sectors with the distribution
/// already filtered by the compass (or the raw one for the worst case). When
/// the sector cannot hold a chirp the result is the p_f = 1 regime with
/// hopping_possible = false. With the compass off this is failure_prob().
FailureResult failure_prob_with_compass(const InterfererDistribution& dist_compass,
                                        const RadarTimingSpec& spec,
                                        const CompassConfig& compass, Scheme scheme,
                                        const ModelOptions& opts = {});

/// t_rf / p_fail, infinite when p_fail = 0. Throws ValidationError for
/// p_fail outside [0, 1] or t_rf <= 0.
double time_between_failures(double p_fail, double t_rf);

}  // namespace radarint
