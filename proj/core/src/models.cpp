#include "radarint/models.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "radarint/error.hpp"
#include "radarint/format.hpp"

namespace radarint {

namespace {

void check_probability(double p, const char* name) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ValidationError(std::string(name) + " must lie in [0, 1], got " + format_double(p));
  }
}

// 1 - (1 - q)^n, accurate for tiny q.
double any_of(std::size_t n, double q) {
  if (n == 0 || q <= 0.0) return 0.0;
  if (q >= 1.0) return 1.0;
  return -std::expm1(static_cast<double>(n) * std::log1p(-q));
}

// sum_{n>=1} P_n (1 - (1 - q)^n)^M
double consecutive_loss(const std::vector<double>& pmf, double q, int m) {
  double sum = 0.0;
  for (std::size_t n = 1; n < pmf.size(); ++n) {
    if (pmf[n] == 0.0) continue;
    sum += pmf[n] * std::pow(any_of(n, q), m);
  }
  return std::clamp(sum, 0.0, 1.0);
}

}  // namespace

double freq_overlap_prob(double b_total, double b_chirp, double x_f) {
  if (!(b_chirp > 0.0) || !std::isfinite(b_total)) {
    throw std::domain_error("chirp bandwidth must be positive and total bandwidth finite");
  }
  if (b_chirp > b_total) throw std::domain_error("chirp bandwidth exceeds total bandwidth");
  if (!(x_f >= 0.0 && x_f <= 1.0)) throw std::domain_error("x_f must lie in [0, 1]");
  const double margin = b_total - b_chirp;
  const double delta = (1.0 - x_f) * b_chirp;
  if (delta >= margin) return 1.0;
  // |x - y| < delta for x, y uniform on [0, margin]: triangle density.
  return delta * (2.0 * margin - delta) / (margin * margin);
}

double binomial_pmf(std::int64_t n, std::int64_t k, double p) {
  if (n < 0 || k < 0 || k > n) return 0.0;
  if (p <= 0.0) return k == 0 ? 1.0 : 0.0;
  if (p >= 1.0) return k == n ? 1.0 : 0.0;
  const double dn = static_cast<double>(n);
  const double dk = static_cast<double>(k);
  const double log_c = std::lgamma(dn + 1.0) - std::lgamma(dk + 1.0) - std::lgamma(dn - dk + 1.0);
  return std::exp(log_c + dk * std::log(p) + (dn - dk) * std::log1p(-p));
}

double binomial_upper_tail(std::int64_t n, std::int64_t k, double p) {
  if (k <= 0) return 1.0;
  if (k > n) return 0.0;
  if (p <= 0.0) return 0.0;
  if (p >= 1.0) return 1.0;
  const double odds = p / (1.0 - p);
  const double mean = static_cast<double>(n) * p;
  if (static_cast<double>(k - 1) >= mean) {
    // Terms shrink above the mean: sum them directly.
    double term = binomial_pmf(n, k, p);
    double sum = term;
    for (std::int64_t j = k; j < n && term > sum * 1e-17; ++j) {
      term *= static_cast<double>(n - j) / static_cast<double>(j + 1) * odds;
      sum += term;
    }
    return std::min(sum, 1.0);
  }
  // Otherwise the lower tail is the small side; walk down from k - 1.
  double term = binomial_pmf(n, k - 1, p);
  double lower = term;
  for (std::int64_t j = k - 1; j > 0 && term > lower * 1e-17; --j) {
    term *= static_cast<double>(j) / static_cast<double>(n - j + 1) / odds;
    lower += term;
  }
  return std::clamp(1.0 - lower, 0.0, 1.0);
}

InterfererDistribution effective_interferer_distribution(const InterfererDistribution& dist,
                                                         double p_f) {
  check_probability(p_f, "p_f");
  const auto& p = dist.probabilities();
  std::vector<double> out(p.size(), 0.0);
  for (std::size_t j = 0; j < p.size(); ++j) {
    if (p[j] == 0.0) continue;
    for (std::size_t n = 0; n <= j; ++n) {
      out[n] += p[j] * binomial_pmf(static_cast<std::int64_t>(j), static_cast<std::int64_t>(n), p_f);
    }
  }
  // Rounding may leave the total a few ulps off 1; renormalise.
  double sum = 0.0;
  for (double v : out) sum += v;
  for (double& v : out) v /= sum;
  return InterfererDistribution::from_probabilities(std::move(out), dist.max_equivalent_distance(),
                                                    dist.sample_count());
}

double chirp_collision_prob(double t_chirp, double t_rep_chirp, double b_adc, double b_chirp) {
  if (!(t_chirp > 0.0 && t_chirp <= t_rep_chirp)) {
    throw ValidationError("chirp duration must lie in (0, T_rch]");
  }
  if (!(b_adc > 0.0 && b_chirp > 0.0)) throw ValidationError("bandwidths must be positive");
  return (t_chirp / t_rep_chirp) * std::min(1.0, b_adc / b_chirp);
}

double chirp_collision_prob(const RadarTimingSpec& spec) {
  return chirp_collision_prob(spec.t_chirp_s, spec.t_rep_chirp_s, spec.b_adc_hz, spec.b_chirp_hz);
}

std::int64_t overlapping_slots(const FrameShape& shape, std::int64_t offset) {
  const std::int64_t n = shape.n_chirps;
  const std::int64_t l = shape.slots;
  return std::max<std::int64_t>(0, n - offset) + std::max<std::int64_t>(0, offset + n - l);
}

double frame_loss_prob_single(const FrameShape& shape, double per_chirp_p, FrameOverlap overlap) {
  shape.validate();
  check_probability(per_chirp_p, "per-chirp collision probability");
  if (shape.k_ch > shape.n_chirps || per_chirp_p == 0.0) return 0.0;
  const double slots = static_cast<double>(shape.slots);
  if (overlap == FrameOverlap::Approximate) {
    double sum = 0.0;
    for (std::int64_t z = shape.k_ch; z <= shape.n_chirps; ++z) {
      sum += binomial_upper_tail(z, shape.k_ch, per_chirp_p);
    }
    return std::min(1.0, 2.0 / slots * sum);
  }
  std::vector<std::int64_t> offsets_with(static_cast<std::size_t>(shape.n_chirps) + 1, 0);
  for (std::int64_t s = 0; s < shape.slots; ++s) ++offsets_with[overlapping_slots(shape, s)];
  double sum = 0.0;
  for (std::int64_t z = shape.k_ch; z <= shape.n_chirps; ++z) {
    if (offsets_with[z] == 0) continue;
    sum += static_cast<double>(offsets_with[z]) * binomial_upper_tail(z, shape.k_ch, per_chirp_p);
  }
  return std::min(1.0, sum / slots);
}

double frame_loss_prob_single(const RadarTimingSpec& spec, double per_chirp_p,
                              FrameOverlap overlap) {
  spec.validate();
  return frame_loss_prob_single(FrameShape::of(spec), per_chirp_p, overlap);
}

double baseline_failure(const InterfererDistribution& dist, double p_f, double p_t_frame, int m) {
  check_probability(p_t_frame, "frame collision probability");
  if (m < 1) throw ValidationError("M must be >= 1");
  return consecutive_loss(effective_interferer_distribution(dist, p_f).probabilities(), p_t_frame,
                          m);
}

double frame_hopping_failure(const InterfererDistribution& dist, double p_f, double p_t_frame,
                             int m) {
  check_probability(p_f, "p_f");
  check_probability(p_t_frame, "frame collision probability");
  if (m < 1) throw ValidationError("M must be >= 1");
  return consecutive_loss(dist.probabilities(), p_f * p_t_frame, m);
}

double chirp_hopping_failure(const InterfererDistribution& dist, double p_f, double p_t_chirp,
                             const FrameShape& shape, int m, FrameOverlap overlap) {
  check_probability(p_f, "p_f");
  check_probability(p_t_chirp, "chirp collision probability");
  if (m < 1) throw ValidationError("M must be >= 1");
  const double p1 = frame_loss_prob_single(shape, p_f * p_t_chirp, overlap);
  return consecutive_loss(dist.probabilities(), p1, m);
}

double time_between_failures(double p_fail, double t_rf) {
  check_probability(p_fail, "p_fail");
  if (!(t_rf > 0.0)) throw ValidationError("frame repetition time must be positive");
  if (p_fail == 0.0) return kInfinity;
  return t_rf / p_fail;
}

namespace {

FailureResult evaluate(const InterfererDistribution& dist, const RadarTimingSpec& spec,
                       Scheme scheme, double p_f, bool hopping_possible,
                       const ModelOptions& opts) {
  FailureResult r;
  r.scheme = scheme;
  r.p_f = p_f;
  r.hopping_possible = hopping_possible;
  r.t_rf_s = frame_repetition_time(spec);
  const FrameShape shape = FrameShape::of(spec);
  const double p_tc = chirp_collision_prob(spec);
  switch (scheme) {
    case Scheme::Baseline:
      r.p_fail = baseline_failure(dist, p_f, frame_loss_prob_single(shape, p_tc, opts.overlap),
                                  spec.m_consecutive);
      break;
    case Scheme::FrameHopping:
      r.p_fail = frame_hopping_failure(dist, p_f,
                                       frame_loss_prob_single(shape, p_tc, opts.overlap),
                                       spec.m_consecutive);
      break;
    case Scheme::ChirpHopping:
      r.p_fail = chirp_hopping_failure(dist, p_f, p_tc, shape, spec.m_consecutive, opts.overlap);
      break;
  }
  r.t_fail_s = time_between_failures(r.p_fail, r.t_rf_s);
  return r;
}

}  // namespace

FailureResult failure_prob(const InterfererDistribution& dist, const RadarTimingSpec& spec,
                           Scheme scheme, const ModelOptions& opts) {
  spec.validate();
  const double p_f = freq_overlap_prob(spec.b_total_hz, spec.b_chirp_hz, spec.x_f);
  return evaluate(dist, spec, scheme, p_f, spec.b_total_hz > spec.b_chirp_hz, opts);
}

FailureResult failure_prob_baseline(const InterfererDistribution& dist,
                                    const RadarTimingSpec& spec, const ModelOptions& opts) {
  return failure_prob(dist, spec, Scheme::Baseline, opts);
}

FailureResult failure_prob_frame_hopping(const InterfererDistribution& dist,
                                         const RadarTimingSpec& spec, const ModelOptions& opts) {
  return failure_prob(dist, spec, Scheme::FrameHopping, opts);
}

FailureResult failure_prob_chirp_hopping(const InterfererDistribution& dist,
                                         const RadarTimingSpec& spec, const ModelOptions& opts) {
  return failure_prob(dist, spec, Scheme::ChirpHopping, opts);
}

FailureResult failure_prob_with_compass(const InterfererDistribution& dist_compass,
                                        const RadarTimingSpec& spec,
                                        const CompassConfig& compass, Scheme scheme,
                                        const ModelOptions& opts) {
  if (!compass.enabled()) return failure_prob(dist_compass, spec, scheme, opts);
  compass.validate();
  spec.validate();
  RadarTimingSpec sector = spec;
  sector.b_total_hz = spec.b_total_hz / compass.n_sectors;
  FailureResult r;
  if (sector.b_total_hz < spec.b_chirp_hz) {
    // The sector cannot hold a chirp: every radar of the sector overlaps.
    sector.b_total_hz = spec.b_chirp_hz;
    r = evaluate(dist_compass, sector, scheme, 1.0, false, opts);
  } else {
    r = failure_prob(dist_compass, sector, scheme, opts);
  }
  r.compass = compass;
  return r;
}

}  // namespace radarint
