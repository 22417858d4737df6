#include "radarint/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

#include "radarint/error.hpp"
#include "radarint/parallel.hpp"
#include "radarint/rng.hpp"

namespace radarint {

namespace {

constexpr std::uint64_t kChunk = 4096;

void check_probability(double p, const char* what) {
  if (!(p >= 0.0 && p <= 1.0)) throw ValidationError(std::string(what) + " must lie in [0, 1]");
}

// Runs `trials` Bernoulli experiments in fixed chunks; chunk c draws from
// stream c, so the estimate does not depend on the thread count.
template <class Trial>
McEstimate run_trials(std::uint64_t trials, std::uint64_t seed, unsigned threads, Trial trial) {
  if (trials == 0) throw ValidationError("Monte Carlo needs at least one trial");
  const std::uint64_t chunks = (trials + kChunk - 1) / kChunk;
  std::vector<std::uint64_t> hits(chunks, 0);
  parallel_for(chunks, threads, [&](std::size_t c) {
    Rng rng(stream_seed(seed, c));
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(trials, begin + kChunk);
    std::uint64_t h = 0;
    for (std::uint64_t t = begin; t < end; ++t) h += trial(rng) ? 1 : 0;
    hits[c] = h;
  });
  std::uint64_t total = 0;
  for (auto h : hits) total += h;
  McEstimate e;
  e.trials = trials;
  e.seed = seed;
  e.mean = static_cast<double>(total) / static_cast<double>(trials);
  e.std_error = std::sqrt(e.mean * (1.0 - e.mean) / static_cast<double>(trials));
  return e;
}

// Overlapping chirps when the attacker frame starts `offset` slots late.
std::int64_t overlap_at(const FrameShape& shape, std::int64_t offset) {
  std::int64_t z = 0;
  for (std::int64_t i = 0; i < shape.n_chirps; ++i) {
    // Victim chirp i meets an attacker chirp iff slot i is active for the
    // attacker, whose active slots are offset .. offset + N_ch - 1 mod slots.
    const std::int64_t rel = ((i - offset) % shape.slots + shape.slots) % shape.slots;
    if (rel < shape.n_chirps) ++z;
  }
  return z;
}

class OverlapSampler {
 public:
  OverlapSampler(const FrameShape& shape, FrameOverlap mode) : shape_(shape), mode_(mode) {
    if (mode == FrameOverlap::Exact) {
      table_.resize(static_cast<std::size_t>(shape.slots));
      for (std::int64_t s = 0; s < shape.slots; ++s) {
        table_[static_cast<std::size_t>(s)] = static_cast<int>(overlap_at(shape, s));
      }
    } else if (shape.slots < 2 * static_cast<std::int64_t>(shape.n_chirps)) {
      throw ValidationError("approximate frame overlap needs a duty cycle of at most 0.5");
    }
  }

  int draw(Rng& rng) const {
    const auto u = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(shape_.slots)));
    if (mode_ == FrameOverlap::Exact) return table_[static_cast<std::size_t>(u)];
    // Two slots out of every frame period for each z = 1..N_ch.
    return u < 2 * shape_.n_chirps ? static_cast<int>(u / 2) + 1 : 0;
  }

 private:
  FrameShape shape_;
  FrameOverlap mode_;
  std::vector<int> table_;
};

// At least k of z chirps collide, each with probability p (or p * q drawn as
// two independent events when q < 1).
bool ruins_frame(Rng& rng, int z, int k, double p, double q = 1.0) {
  if (z < k) return false;
  int hits = 0;
  for (int i = 0; i < z; ++i) {
    const bool hit = q < 1.0 ? (rng.bernoulli(q) && rng.bernoulli(p)) : rng.bernoulli(p);
    if (hit && ++hits >= k) return true;
    if (hits + (z - i - 1) < k) return false;
  }
  return false;
}

std::size_t draw_count(Rng& rng, const std::vector<double>& cdf) {
  const double u = rng.uniform();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
}

}  // namespace

void CollisionModel::validate() const {
  check_probability(p_f, "p_f");
  check_probability(p_t_chirp, "chirp collision probability");
  shape.validate();
  if (m < 1) throw ValidationError("M must be >= 1");
}

bool chirp_pair_collides(double dt, double df, const RadarTimingSpec& spec) {
  const bool in_time = spec.t_chirp_s - std::abs(dt) > 0.0;
  const bool in_band = 1.0 - std::abs(df) / spec.b_chirp_hz >= spec.x_f;
  const double beat = df - spec.b_chirp_hz / spec.t_chirp_s * dt;
  const bool in_adc = std::abs(beat) <= spec.b_adc_hz;
  return in_time && in_band && in_adc;
}

McEstimate mc_freq_overlap(double b_total, double b_chirp, double x_f, std::uint64_t trials,
                           std::uint64_t seed, unsigned threads) {
  if (!(b_chirp > 0.0 && b_chirp <= b_total)) {
    throw ValidationError("need 0 < chirp bandwidth <= total bandwidth");
  }
  check_probability(x_f, "x_f");
  const double span = b_total - b_chirp;
  const double delta = (1.0 - x_f) * b_chirp;
  return run_trials(trials, seed, threads, [&](Rng& rng) {
    if (span == 0.0) return true;  // every chirp occupies the whole band
    const double x = rng.uniform(0.0, span);
    const double y = rng.uniform(0.0, span);
    return std::abs(x - y) < delta;
  });
}

McEstimate mc_chirp_collision(const RadarTimingSpec& spec, std::uint64_t trials,
                              std::uint64_t seed, unsigned threads) {
  spec.validate();
  const double t = spec.t_rep_chirp_s;
  return run_trials(trials, seed, threads, [&](Rng& rng) {
    return chirp_pair_collides(rng.uniform(-t, t), 0.0, spec);
  });
}

McEstimate mc_frame_loss(const FrameShape& shape, double per_chirp_p, std::uint64_t trials,
                         std::uint64_t seed, FrameOverlap overlap, unsigned threads) {
  shape.validate();
  check_probability(per_chirp_p, "per-chirp collision probability");
  const OverlapSampler sampler(shape, overlap);
  return run_trials(trials, seed, threads, [&](Rng& rng) {
    return ruins_frame(rng, sampler.draw(rng), shape.k_ch, per_chirp_p);
  });
}

McEstimate mc_frame_loss(const RadarTimingSpec& spec, double per_chirp_p, std::uint64_t trials,
                         std::uint64_t seed, FrameOverlap overlap, unsigned threads) {
  spec.validate();
  return mc_frame_loss(FrameShape::of(spec), per_chirp_p, trials, seed, overlap, threads);
}

McEstimate mc_system_failure(const InterfererDistribution& dist, const CollisionModel& model,
                             Scheme scheme, std::uint64_t trials, std::uint64_t seed,
                             unsigned threads) {
  model.validate();
  const OverlapSampler sampler(model.shape, model.overlap);
  std::vector<double> cdf;
  double acc = 0.0;
  for (double p : dist.probabilities()) cdf.push_back(acc += p);
  const int k = model.shape.k_ch;

  return run_trials(trials, seed, threads, [&](Rng& rng) {
    const std::size_t n = draw_count(rng, cdf);
    if (n == 0) return false;
    // Baseline: start frequencies are fixed, so band overlap is too.
    std::vector<char> overlapping(n, 1);
    if (scheme == Scheme::Baseline) {
      for (auto& o : overlapping) o = rng.bernoulli(model.p_f) ? 1 : 0;
    }
    for (int frame = 0; frame < model.m; ++frame) {
      bool lost = false;
      for (std::size_t a = 0; a < n && !lost; ++a) {
        switch (scheme) {
          case Scheme::Baseline:
            lost = overlapping[a] && ruins_frame(rng, sampler.draw(rng), k, model.p_t_chirp);
            break;
          case Scheme::FrameHopping:
            lost = rng.bernoulli(model.p_f) &&
                   ruins_frame(rng, sampler.draw(rng), k, model.p_t_chirp);
            break;
          case Scheme::ChirpHopping:
            lost = ruins_frame(rng, sampler.draw(rng), k, model.p_t_chirp, model.p_f);
            break;
        }
      }
      if (!lost) return false;
    }
    return true;
  });
}

double enumerate_frame_loss(const FrameShape& shape, double per_chirp_p, FrameOverlap overlap) {
  shape.validate();
  check_probability(per_chirp_p, "per-chirp collision probability");
  if (shape.n_chirps > 20) throw ValidationError("enumeration is limited to 20 chirps per frame");

  // Probability that a frame with z overlapping chirps loses at least K_ch.
  auto loss_given = [&](int z) {
    double sum = 0.0;
    for (std::uint32_t mask = 0; mask < (1u << z); ++mask) {
      const int hits = std::popcount(mask);
      if (hits < shape.k_ch) continue;
      sum += std::pow(per_chirp_p, hits) * std::pow(1.0 - per_chirp_p, z - hits);
    }
    return sum;
  };

  std::vector<double> loss(static_cast<std::size_t>(shape.n_chirps) + 1);
  for (int z = 0; z <= shape.n_chirps; ++z) loss[static_cast<std::size_t>(z)] = loss_given(z);

  const double slots = static_cast<double>(shape.slots);
  double total = 0.0;
  if (overlap == FrameOverlap::Exact) {
    for (std::int64_t s = 0; s < shape.slots; ++s) {
      total += loss[static_cast<std::size_t>(overlap_at(shape, s))] / slots;
    }
  } else {
    for (int z = 1; z <= shape.n_chirps; ++z) total += 2.0 / slots * loss[static_cast<std::size_t>(z)];
  }
  return std::min(total, 1.0);
}

bool within_three_sigma(const McEstimate& mc, double analytic) {
  const double a = std::clamp(analytic, 0.0, 1.0);
  const double se_analytic = std::sqrt(a * (1.0 - a) / static_cast<double>(mc.trials));
  return std::abs(mc.mean - analytic) <= 3.0 * std::max(mc.std_error, se_analytic) + 1e-12;
}

}  // namespace radarint
