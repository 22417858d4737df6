#include "radarint/interferers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "radarint/error.hpp"
#include "radarint/format.hpp"
#include "radarint/parallel.hpp"

namespace radarint {

// ---------------------------------------------------------------------------
// Compass

CompassConfig CompassConfig::for_layout(RadarKind kind, int n_sectors, CompassMode mode,
                                        CornerPairing pairing) {
  CompassConfig c;
  c.n_sectors = n_sectors;
  c.mode = mode;
  c.corner_pairing = pairing;
  if (kind == RadarKind::Front) {
    c.sector_offset = 90.0;
  } else if (n_sectors == 2) {
    // Sector 0 = [270, 90) puts the front corners of an eastbound vehicle
    // (45, 315) together; [0, 180) puts its left corners (45, 135) together.
    c.sector_offset = pairing == CornerPairing::FrontVsBack ? 270.0 : 0.0;
  } else {
    c.sector_offset = 0.0;
  }
  return c;
}

void CompassConfig::validate() const {
  if (n_sectors != 2 && n_sectors != 4) {
    throw ValidationError("compass n_sectors must be 2 or 4, got " + std::to_string(n_sectors));
  }
  if (!std::isfinite(sector_offset)) throw ValidationError("compass sector_offset must be finite");
}

int compass_channel(double boresight, const CompassConfig& config) {
  if (!config.enabled()) throw std::logic_error("compass_channel called with the compass off");
  const double width = 360.0 / config.n_sectors;
  const double rel = normalize_degrees(boresight - config.sector_offset);
  const int ch = static_cast<int>(std::floor(rel / width));
  return std::min(ch, config.n_sectors - 1);
}

const char* to_string(CompassMode mode) {
  switch (mode) {
    case CompassMode::Off: return "off";
    case CompassMode::Effective: return "effective";
    case CompassMode::WorstCaseSameSector: return "worst_case";
  }
  return "?";
}

CompassMode parse_compass_mode(const std::string& text) {
  if (text == "off" || text == "none") return CompassMode::Off;
  if (text == "effective") return CompassMode::Effective;
  if (text == "worst_case" || text == "worst_case_same_sector") {
    return CompassMode::WorstCaseSameSector;
  }
  throw ValidationError("unknown compass mode '" + text + "'");
}

namespace {

bool same_channel(const RadarInstance& a, const RadarInstance& b, const CompassConfig& compass) {
  return compass_channel(a.boresight, compass) == compass_channel(b.boresight, compass);
}

bool keeps(const RadarInstance& victim, const RadarInstance& attacker,
           const CompassConfig& compass) {
  return compass.mode != CompassMode::Effective || same_channel(victim, attacker, compass);
}

}  // namespace

// ---------------------------------------------------------------------------
// Scene

InterferenceScene::RadarGeom InterferenceScene::geom_of(const RadarInstance& r) {
  RadarGeom g;
  g.pos = r.position();
  g.full = r.fov >= 360.0;
  g.dir = heading_vector(r.boresight);
  g.cos_half = std::cos(deg2rad(r.fov / 2.0)) - 1e-12;
  return g;
}

// Same arithmetic as in_fov() with the trigonometry hoisted out.
bool InterferenceScene::sees(const RadarGeom& g, Vec2 point) {
  const Vec2 v = point - g.pos;
  const double len = norm(v);
  if (len == 0.0) return false;
  if (g.full) return true;
  return dot(g.dir, v) >= len * g.cos_half;
}

InterferenceScene::InterferenceScene(const Snapshot& snapshot, const RadarLayout& layout,
                                     double rcs)
    : vehicles_(snapshot.vehicles), obstacles_(vehicles_), rcs_(rcs) {
  layout.validate();
  if (!(rcs > 0.0)) throw ValidationError("radar cross section must be positive");
  Vec2 lo{std::numeric_limits<double>::max(), std::numeric_limits<double>::max()};
  Vec2 hi{-lo.x, -lo.y};
  for (std::size_t v = 0; v < vehicles_.size(); ++v) {
    for (const auto& r : place_radars(vehicles_[v], layout)) {
      radars_.push_back(r);
      geoms_.push_back(geom_of(r));
      radar_vehicle_.push_back(v);
      lo = {std::min(lo.x, r.x), std::min(lo.y, r.y)};
      hi = {std::max(hi.x, r.x), std::max(hi.y, r.y)};
    }
    reflectors_.push_back(reflection_points(vehicles_[v]));
  }
  if (!radars_.empty()) {
    radar_grid_ = UniformGrid(lo, hi, 8.0);
    for (std::size_t i = 0; i < radars_.size(); ++i) {
      const Vec2 p = radars_[i].position();
      radar_grid_.insert(static_cast<std::uint32_t>(i), p, p);
    }
  }
}

std::vector<PotentialInterferer> InterferenceScene::find(std::size_t victim, double d_max,
                                                         const CompassConfig& compass) const {
  if (victim >= radars_.size()) throw ValidationError("victim radar index out of range");
  return find_for(radars_[victim], d_max, compass);
}

std::vector<PotentialInterferer> InterferenceScene::find_for(const RadarInstance& victim,
                                                             double d_max,
                                                             const CompassConfig& compass) const {
  if (!(d_max > 0.0)) throw ValidationError("d_max must be positive");
  if (compass.enabled()) compass.validate();
  const auto owner = std::find_if(vehicles_.begin(), vehicles_.end(),
                                  [&](const VehicleState& v) { return v.id == victim.vehicle_id; });
  if (owner == vehicles_.end()) {
    throw ValidationError("victim vehicle " + std::to_string(victim.vehicle_id) +
                          " is not part of the snapshot");
  }
  const std::size_t vv = static_cast<std::size_t>(owner - vehicles_.begin());
  const RadarGeom vg = geom_of(victim);
  const Vec2 vpos = vg.pos;

  enum : std::uint8_t { kUnknown, kNoMutualFov, kBlocked, kClear };
  std::vector<std::uint8_t> direct(radars_.size(), kUnknown);
  auto direct_state = [&](std::size_t a) {
    if (direct[a] == kUnknown) {
      const RadarGeom& ag = geoms_[a];
      if (!sees(vg, ag.pos) || !sees(ag, vpos)) {
        direct[a] = kNoMutualFov;
      } else {
        direct[a] = obstacles_.blocked(ag.pos, vpos, radar_vehicle_[a], vv) ? kBlocked : kClear;
      }
    }
    return direct[a];
  };

  std::vector<PotentialInterferer> out;

  // Direct paths.
  const Vec2 reach{d_max, d_max};
  radar_grid_.for_each_in_box(vpos - reach, vpos + reach, [&](std::uint32_t a) {
    if (radar_vehicle_[a] == vv) return;
    const double d = distance(geoms_[a].pos, vpos);
    if (d > d_max || d == 0.0) return;
    if (direct_state(a) != kClear) return;
    out.push_back({radars_[a], RayPath::direct(d), d});
  });

  // Single bounces. d_ref <= d_max  <=>  d1 * d2 <= d_max / sqrt(4 pi / rcs).
  const double product_cap = d_max / std::sqrt(4.0 * kPi / rcs_) * (1.0 + 1e-12);
  constexpr double kNone = std::numeric_limits<double>::infinity();
  std::vector<double> best(radars_.size(), kNone);
  std::vector<std::pair<std::uint32_t, std::uint8_t>> best_at(radars_.size());

  for (std::size_t r = 0; r < vehicles_.size(); ++r) {
    if (r == vv) continue;
    const auto& points = reflectors_[r];
    for (std::uint8_t k = 0; k < points.size(); ++k) {
      const Vec2 p = points[k];
      if (!sees(vg, p)) continue;
      const double d2 = distance(p, vpos);
      if (d2 == 0.0) continue;
      const double radius = product_cap / d2;
      int leg2 = -1;  // clear line of sight P -> victim, evaluated on demand
      const Vec2 box{radius, radius};
      radar_grid_.for_each_in_box(p - box, p + box, [&](std::uint32_t a) {
        if (leg2 == 0) return;
        const std::size_t va = radar_vehicle_[a];
        if (va == vv || va == r) return;
        const RadarGeom& ag = geoms_[a];
        const double d1 = distance(ag.pos, p);
        if (d1 == 0.0 || d1 > radius) return;
        const double prod = d1 * d2;
        if (!(prod < best[a])) return;
        if (!sees(ag, p)) return;
        if (direct_state(a) == kClear) return;
        if (leg2 < 0) leg2 = obstacles_.blocked(p, vpos, vv) ? 0 : 1;
        if (leg2 == 0) return;
        if (obstacles_.blocked(ag.pos, p, va)) return;
        best[a] = prod;
        best_at[a] = {static_cast<std::uint32_t>(r), k};
      });
    }
  }

  for (std::size_t a = 0; a < radars_.size(); ++a) {
    if (best[a] == kNone) continue;
    const auto [r, k] = best_at[a];
    const Vec2 p = reflectors_[r][k];
    const double d1 = distance(geoms_[a].pos, p);
    const double d2 = distance(p, vpos);
    const double d_ref = equivalent_distance(d1, d2, rcs_);
    if (d_ref > d_max) continue;
    out.push_back({radars_[a], RayPath::reflected(d1, d2, p, vehicles_[r].id), d_ref});
  }

  std::erase_if(out, [&](const PotentialInterferer& pi) { return !keeps(victim, pi.attacker, compass); });
  std::sort(out.begin(), out.end(), [](const PotentialInterferer& x, const PotentialInterferer& y) {
    if (x.equivalent_distance != y.equivalent_distance) {
      return x.equivalent_distance < y.equivalent_distance;
    }
    if (x.attacker.vehicle_id != y.attacker.vehicle_id) {
      return x.attacker.vehicle_id < y.attacker.vehicle_id;
    }
    return x.attacker.mount < y.attacker.mount;
  });
  return out;
}

std::vector<PotentialInterferer> find_potential_interferers(const RadarInstance& victim,
                                                            const Snapshot& snapshot,
                                                            const RadarLayout& layout, double d_max,
                                                            const CompassConfig& compass) {
  const InterferenceScene scene(snapshot, layout);
  return scene.find_for(victim, d_max, compass);
}

// ---------------------------------------------------------------------------
// Census

InterfererCensus InterfererCensus::run(const std::vector<Snapshot>& snapshots,
                                       const RadarLayout& layout, double d_max, unsigned threads,
                                       double rcs) {
  if (!(d_max > 0.0) || !std::isfinite(d_max)) {
    throw ValidationError("d_max must be positive and finite");
  }
  InterfererCensus census;
  census.d_max_ = d_max;
  for (std::size_t s = 0; s < snapshots.size(); ++s) {
    const InterferenceScene scene(snapshots[s], layout, rcs);
    const std::size_t base = census.observations_.size();
    const auto radars = scene.radars();
    census.observations_.resize(base + radars.size());
    parallel_for(radars.size(), threads, [&](std::size_t i) {
      auto& obs = census.observations_[base + i];
      obs.snapshot = s;
      obs.victim = radars[i];
      obs.interferers = scene.find(i, d_max);
    });
  }
  return census;
}

std::size_t InterfererCensus::count(const Observation& obs, double d_bar,
                                    const CompassConfig& compass, CountSplit split) const {
  std::size_t n = 0;
  for (const auto& pi : obs.interferers) {
    if (pi.equivalent_distance > d_bar) break;  // sorted by distance
    if (split == CountSplit::DirectOnly && pi.path.kind != PathKind::Direct) continue;
    if (!keeps(obs.victim, pi.attacker, compass)) continue;
    ++n;
  }
  return n;
}

namespace {

void check_within(double d_bar, double d_max) {
  if (!(d_bar > 0.0)) throw ValidationError("d_max must be positive");
  if (d_bar > d_max * (1.0 + 1e-12)) {
    throw ValidationError("distance " + format_double(d_bar) + " m exceeds the census range " +
                          format_double(d_max) + " m");
  }
}

}  // namespace

std::vector<std::size_t> InterfererCensus::counts(double d_bar, const CompassConfig& compass,
                                                  CountSplit split) const {
  check_within(d_bar, d_max_);
  if (compass.enabled()) compass.validate();
  std::vector<std::size_t> out;
  out.reserve(observations_.size());
  for (const auto& obs : observations_) out.push_back(count(obs, d_bar, compass, split));
  return out;
}

InterfererDistribution InterfererCensus::distribution(double d_bar,
                                                      const CompassConfig& compass) const {
  if (observations_.empty()) throw ValidationError("no radar observed in any snapshot");
  std::vector<std::uint64_t> hist;
  for (std::size_t n : counts(d_bar, compass)) {
    if (n >= hist.size()) hist.resize(n + 1, 0);
    ++hist[n];
  }
  return InterfererDistribution::from_histogram(hist, d_bar);
}

std::vector<CurvePoint> InterfererCensus::curve(std::span<const double> d_grid, CountSplit split,
                                                const CompassConfig& compass) const {
  validate_distance_grid(d_grid);
  if (observations_.empty()) throw ValidationError("no radar observed in any snapshot");
  std::vector<CurvePoint> out;
  for (double d : d_grid) {
    std::size_t total = 0;
    for (std::size_t n : counts(d, compass, split)) total += n;
    out.push_back({d, static_cast<double>(total) / static_cast<double>(observations_.size())});
  }
  return out;
}

void validate_distance_grid(std::span<const double> d_grid) {
  if (d_grid.empty()) throw ValidationError("distance grid is empty");
  for (std::size_t i = 0; i < d_grid.size(); ++i) {
    if (!(d_grid[i] > 0.0) || !std::isfinite(d_grid[i])) {
      throw ValidationError("distance grid entries must be positive and finite");
    }
    if (i > 0 && !(d_grid[i] > d_grid[i - 1])) {
      throw ValidationError("distance grid must be strictly increasing");
    }
  }
}

InterfererDistribution interferer_distribution(const std::vector<Snapshot>& snapshots,
                                               const RadarLayout& layout, double d_max,
                                               const CompassConfig& compass, unsigned threads) {
  return InterfererCensus::run(snapshots, layout, d_max, threads).distribution(d_max, compass);
}

std::vector<CurvePoint> average_count_curve(const std::vector<Snapshot>& snapshots,
                                            const RadarLayout& layout,
                                            std::span<const double> d_grid, CountSplit split,
                                            const CompassConfig& compass, unsigned threads) {
  validate_distance_grid(d_grid);
  return InterfererCensus::run(snapshots, layout, d_grid.back(), threads)
      .curve(d_grid, split, compass);
}

void write_curve_csv(std::ostream& out, const std::vector<CurvePoint>& all,
                     const std::vector<CurvePoint>& direct) {
  if (all.size() != direct.size()) throw ValidationError("curves must share one distance grid");
  out << "d_max_m,mean_count_all,mean_count_direct\n";
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].d_max != direct[i].d_max) {
      throw ValidationError("curves must share one distance grid");
    }
    out << format_double(all[i].d_max) << ',' << format_double(all[i].mean_count) << ','
        << format_double(direct[i].mean_count) << '\n';
  }
}

}  // namespace radarint
