#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>

#include "radarint/error.hpp"
#include "radarint/geometry.hpp"
#include "radarint/interferers.hpp"
#include "radarint/rng.hpp"

using namespace radarint;

namespace {

VehicleState car(std::int64_t id, double x, double y, double heading) {
  VehicleState v;
  v.id = id;
  v.x = x;
  v.y = y;
  v.heading = heading;
  return v;
}

// Two cars whose front radars face each other `gap` metres apart.
Snapshot face_to_face(double gap) {
  return Snapshot{0.0, {car(1, 0.0, 0.0, 0.0), car(2, 4.5 + gap, 0.0, 180.0)}};
}

const RadarInstance& radar_of(const InterferenceScene& scene, std::int64_t vehicle) {
  for (const auto& r : scene.radars()) {
    if (r.vehicle_id == vehicle) return r;
  }
  throw std::logic_error("no radar");
}

// Independent recount: every (attacker, reflector, point) combination with
// linear-scan blocking.
std::vector<double> brute_force(const Snapshot& snap, const RadarLayout& layout,
                                const RadarInstance& victim, double d_max, std::size_t* direct) {
  std::vector<RadarInstance> radars;
  for (const auto& v : snap.vehicles) {
    for (const auto& r : place_radars(v, layout)) radars.push_back(r);
  }
  const auto& all = snap.vehicles;
  std::vector<double> out;
  *direct = 0;
  for (const auto& a : radars) {
    if (a.vehicle_id == victim.vehicle_id) continue;
    const bool los = in_fov(victim, a.position()) && in_fov(a, victim.position()) &&
                     !segment_blocked(a.position(), victim.position(), all,
                                      {a.vehicle_id, victim.vehicle_id});
    if (los) {
      const double d = distance(a.position(), victim.position());
      if (d <= d_max) {
        out.push_back(d);
        ++*direct;
      }
      continue;
    }
    double best = INFINITY;
    for (const auto& r : all) {
      if (r.id == a.vehicle_id || r.id == victim.vehicle_id) continue;
      for (const Vec2 p : reflection_points(r)) {
        const double d1 = distance(a.position(), p);
        const double d2 = distance(p, victim.position());
        if (d1 == 0.0 || d2 == 0.0 || d1 * d2 >= best) continue;
        if (!in_fov(victim, p) || !in_fov(a, p)) continue;
        if (segment_blocked(a.position(), p, all, {a.vehicle_id})) continue;
        if (segment_blocked(p, victim.position(), all, {victim.vehicle_id})) continue;
        best = d1 * d2;
      }
    }
    if (best < INFINITY) {
      const double d = best * std::sqrt(4.0 * kPi / kVehicleRcs);
      if (d <= d_max) out.push_back(d);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Snapshot random_scene(std::uint64_t seed, int n, double length, double heading_jitter) {
  Rng rng(seed);
  Snapshot s;
  for (int i = 0; i < n; ++i) {
    const bool east = rng.bernoulli(0.5);
    const double lane = static_cast<double>(rng.below(3)) + 0.5;
    s.vehicles.push_back(car(i, rng.uniform(0, length), (east ? -1 : 1) * lane * 3.5,
                             normalize_degrees((east ? 0.0 : 180.0) +
                                               rng.uniform(-heading_jitter, heading_jitter))));
  }
  return s;
}

}  // namespace

TEST(Compass, ChannelIntervals) {
  CompassConfig c;
  c.mode = CompassMode::Effective;
  c.n_sectors = 2;
  c.sector_offset = 0.0;
  EXPECT_EQ(compass_channel(10.0, c), 0);
  EXPECT_EQ(compass_channel(190.0, c), 1);
  EXPECT_EQ(compass_channel(180.0, c), 1);
  EXPECT_EQ(compass_channel(0.0, c), 0);
  EXPECT_EQ(compass_channel(359.999, c), 1);
  c.n_sectors = 4;
  EXPECT_EQ(compass_channel(100.0, c), 1);
  EXPECT_EQ(compass_channel(-10.0, c), 3);
}

TEST(Compass, OffIsContractViolation) {
  EXPECT_THROW(compass_channel(0.0, CompassConfig::off()), std::logic_error);
}

TEST(Compass, FrontDefaultSplitsTheTwoDirections) {
  const auto c = CompassConfig::for_layout(RadarKind::Front, 2, CompassMode::Effective);
  EXPECT_EQ(c.sector_offset, 90.0);
  EXPECT_NE(compass_channel(0.0, c), compass_channel(180.0, c));
}

TEST(Compass, CornerFrontVsBack) {
  const auto c = CompassConfig::for_layout(RadarKind::Corner, 2, CompassMode::Effective);
  const auto east = place_radars(car(1, 0, 0, 0.0), RadarLayout::corner());
  // FL, FR, RL, RR
  EXPECT_EQ(compass_channel(east[0].boresight, c), 0);
  EXPECT_EQ(compass_channel(east[1].boresight, c), 0);
  EXPECT_EQ(compass_channel(east[2].boresight, c), 1);
  EXPECT_EQ(compass_channel(east[3].boresight, c), 1);
  const auto west = place_radars(car(2, 0, 0, 180.0), RadarLayout::corner());
  EXPECT_EQ(compass_channel(west[0].boresight, c), compass_channel(west[1].boresight, c));
  EXPECT_EQ(compass_channel(west[2].boresight, c), compass_channel(west[3].boresight, c));
  EXPECT_NE(compass_channel(west[0].boresight, c), compass_channel(west[2].boresight, c));
}

TEST(Compass, CornerLeftVsRightAndFourSectors) {
  const auto lr = CompassConfig::for_layout(RadarKind::Corner, 2, CompassMode::Effective,
                                            CornerPairing::LeftVsRight);
  const auto east = place_radars(car(1, 0, 0, 0.0), RadarLayout::corner());
  EXPECT_EQ(compass_channel(east[0].boresight, lr), compass_channel(east[2].boresight, lr));
  EXPECT_NE(compass_channel(east[0].boresight, lr), compass_channel(east[1].boresight, lr));
  const auto four = CompassConfig::for_layout(RadarKind::Corner, 4, CompassMode::Effective);
  std::set<int> channels;
  for (const auto& r : east) channels.insert(compass_channel(r.boresight, four));
  EXPECT_EQ(channels.size(), 4u);
}

TEST(Compass, Validation) {
  CompassConfig c;
  c.mode = CompassMode::Effective;
  c.n_sectors = 3;
  EXPECT_THROW(c.validate(), ValidationError);
  EXPECT_EQ(parse_compass_mode("worst_case"), CompassMode::WorstCaseSameSector);
  EXPECT_THROW(parse_compass_mode("sideways"), ValidationError);
}

TEST(Interferers, FaceToFaceIsOneDirect) {
  const auto snap = face_to_face(50.0);
  const InterferenceScene scene(snap, RadarLayout::front());
  const auto found = scene.find_for(radar_of(scene, 1), 2000.0);
  ASSERT_EQ(found.size(), 1u);
  EXPECT_EQ(found[0].path.kind, PathKind::Direct);
  EXPECT_NEAR(found[0].equivalent_distance, 50.0, 1e-9);
  EXPECT_EQ(found[0].attacker.vehicle_id, 2);
  EXPECT_TRUE(scene.find_for(radar_of(scene, 1), 49.0).empty());
}

TEST(Interferers, CarInBetweenBlocksEverything) {
  auto snap = face_to_face(50.0);
  snap.vehicles.push_back(car(3, 27.25, 0.0, 0.0));
  const auto victim = place_radars(snap.vehicles[0], RadarLayout::front())[0];
  EXPECT_TRUE(find_potential_interferers(victim, snap, RadarLayout::front(), 3000.0,
                                         CompassConfig::off())
                  .empty());
}

TEST(Interferers, SingleBounceAroundABlocker) {
  // Victim front radar at the origin looking east, attacker looking west.
  const double theta = deg2rad(10.0);
  const Vec2 p{20.0 * std::cos(theta), 20.0 * std::sin(theta)};
  const double xa = p.x + std::sqrt(900.0 - p.y * p.y);
  Snapshot snap{0.0,
                {car(1, -2.25, 0.0, 0.0), car(2, xa + 2.25, 0.0, 180.0), car(3, 34.0, 0.0, 0.0),
                 // p is the rear-right corner of this car
                 car(4, p.x + 2.25, p.y + 0.9, 0.0)}};
  const InterferenceScene scene(snap, RadarLayout::front());
  const auto found = scene.find_for(radar_of(scene, 1), 3000.0);
  ASSERT_EQ(found.size(), 1u);
  const auto& pi = found[0];
  EXPECT_EQ(pi.attacker.vehicle_id, 2);
  EXPECT_EQ(pi.path.kind, PathKind::Reflected);
  EXPECT_NEAR(pi.path.d1, 30.0, 1e-9);
  EXPECT_NEAR(pi.path.d2, 20.0, 1e-9);
  EXPECT_EQ(*pi.path.reflector_id, 4);
  EXPECT_NEAR(pi.equivalent_distance, 672.6, 0.05);
  EXPECT_TRUE(scene.find_for(radar_of(scene, 1), 672.0).empty());
}

TEST(Interferers, VictimMustBelongToSnapshot) {
  const auto snap = face_to_face(50.0);
  RadarInstance ghost;
  ghost.vehicle_id = 99;
  EXPECT_THROW(find_potential_interferers(ghost, snap, RadarLayout::front(), 100.0,
                                          CompassConfig::off()),
               ValidationError);
  const InterferenceScene scene(snap, RadarLayout::front());
  EXPECT_THROW(scene.find(0, 0.0), ValidationError);
}

TEST(Interferers, EffectiveCompassDropsOtherChannel) {
  const auto snap = face_to_face(50.0);
  const InterferenceScene scene(snap, RadarLayout::front());
  const auto c = CompassConfig::for_layout(RadarKind::Front, 2, CompassMode::Effective);
  EXPECT_TRUE(scene.find(0, 100.0, c).empty());
  auto worst = c;
  worst.mode = CompassMode::WorstCaseSameSector;
  EXPECT_EQ(scene.find(0, 100.0, worst).size(), 1u);
}

TEST(Interferers, MatchesBruteForceFront) {
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const auto snap = random_scene(seed, 40, 400.0, seed == 4 ? 30.0 : 0.0);
    const InterferenceScene scene(snap, RadarLayout::front());
    for (std::size_t v = 0; v < scene.radars().size(); ++v) {
      std::size_t direct = 0;
      const auto expect = brute_force(snap, RadarLayout::front(), scene.radars()[v], 2700.0, &direct);
      const auto got = scene.find(v, 2700.0);
      ASSERT_EQ(got.size(), expect.size()) << "seed " << seed << " victim " << v;
      std::size_t got_direct = 0;
      for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_NEAR(got[i].equivalent_distance, expect[i], 1e-9 * expect[i]);
        got_direct += got[i].path.kind == PathKind::Direct;
      }
      EXPECT_EQ(got_direct, direct);
    }
  }
}

TEST(Interferers, MatchesBruteForceCorner) {
  for (std::uint64_t seed = 11; seed <= 13; ++seed) {
    const auto snap = random_scene(seed, 16, 120.0, seed == 13 ? 45.0 : 0.0);
    const InterferenceScene scene(snap, RadarLayout::corner());
    for (std::size_t v = 0; v < scene.radars().size(); ++v) {
      std::size_t direct = 0;
      const auto expect = brute_force(snap, RadarLayout::corner(), scene.radars()[v], 120.0, &direct);
      const auto got = scene.find(v, 120.0);
      ASSERT_EQ(got.size(), expect.size()) << "seed " << seed << " victim " << v;
      for (std::size_t i = 0; i < got.size(); ++i) {
        EXPECT_NEAR(got[i].equivalent_distance, expect[i], 1e-9 * expect[i]);
      }
    }
  }
}

TEST(Interferers, ReflectedPathsAreConsistent) {
  const auto snap = random_scene(21, 60, 600.0, 0.0);
  const InterferenceScene scene(snap, RadarLayout::front());
  std::size_t reflected = 0;
  for (std::size_t v = 0; v < scene.radars().size(); ++v) {
    const auto& victim = scene.radars()[v];
    for (const auto& pi : scene.find(v, 2700.0)) {
      if (pi.path.kind == PathKind::Direct) {
        EXPECT_DOUBLE_EQ(pi.equivalent_distance, distance(pi.attacker.position(), victim.position()));
        continue;
      }
      ++reflected;
      const Vec2 p = *pi.path.reflection_point;
      EXPECT_FALSE(segment_blocked(pi.attacker.position(), p, snap.vehicles, {pi.attacker.vehicle_id}));
      EXPECT_FALSE(segment_blocked(p, victim.position(), snap.vehicles, {victim.vehicle_id}));
      EXPECT_TRUE(in_fov(victim, p));
      EXPECT_TRUE(in_fov(pi.attacker, p));
      EXPECT_NEAR(pi.equivalent_distance, equivalent_distance(pi.path.d1, pi.path.d2, kVehicleRcs),
                  1e-9 * pi.equivalent_distance);
      if (kVehicleRcs < 4.0 * kPi * pi.path.d2 * pi.path.d2) {
        EXPECT_GT(pi.equivalent_distance, pi.path.d1 + pi.path.d2);
      }
    }
  }
  EXPECT_GT(reflected, 0u);
}

TEST(Distribution, SingleVehicleAndPair) {
  const std::vector<Snapshot> one{{0.0, {car(1, 0, 0, 0)}}};
  const auto d1 = interferer_distribution(one, RadarLayout::front(), 2700.0, CompassConfig::off());
  EXPECT_EQ(d1.probabilities(), std::vector<double>{1.0});
  const std::vector<Snapshot> two{face_to_face(50.0)};
  const auto d2 = interferer_distribution(two, RadarLayout::front(), 2700.0, CompassConfig::off());
  EXPECT_EQ(d2.probabilities(), (std::vector<double>{0.0, 1.0}));
  EXPECT_EQ(d2.sample_count(), 2u);
}

TEST(Distribution, NoRadarsIsAnError) {
  const std::vector<Snapshot> empty{{0.0, {}}};
  EXPECT_THROW(interferer_distribution(empty, RadarLayout::front(), 100.0, CompassConfig::off()),
               ValidationError);
}

TEST(Distribution, MatchesPerRadarRecount) {
  const std::vector<Snapshot> snaps{random_scene(31, 30, 300.0, 0.0), random_scene(32, 30, 300.0, 10.0)};
  const auto dist = interferer_distribution(snaps, RadarLayout::front(), 1500.0, CompassConfig::off(), 3);
  std::vector<std::uint64_t> hist;
  for (const auto& s : snaps) {
    for (const auto& v : s.vehicles) {
      const auto victim = place_radars(v, RadarLayout::front())[0];
      std::size_t direct = 0;
      const auto n = brute_force(s, RadarLayout::front(), victim, 1500.0, &direct).size();
      if (n >= hist.size()) hist.resize(n + 1, 0);
      ++hist[n];
    }
  }
  const auto expect = InterfererDistribution::from_histogram(hist, 1500.0);
  EXPECT_EQ(dist.probabilities(), expect.probabilities());
}

TEST(Census, CompassNeverAddsAndCurvesBehave) {
  HighwayConfig cfg;
  cfg.length = 1500.0;
  cfg.density = 150.0;
  cfg.snapshots = 2;
  const auto snaps = generate_highway(cfg);
  for (RadarKind kind : {RadarKind::Front, RadarKind::Corner}) {
    const auto layout = RadarLayout::for_kind(kind);
    const double d_max = max_equivalent_distance(kind == RadarKind::Front ? LinkBudgetSpec::front()
                                                                        : LinkBudgetSpec::corner());
    const auto census = InterfererCensus::run(snaps, layout, d_max, 2);
    const auto compass = CompassConfig::for_layout(kind, 2, CompassMode::Effective);
    const auto plain = census.counts(d_max, CompassConfig::off());
    const auto sectored = census.counts(d_max, compass);
    for (std::size_t i = 0; i < plain.size(); ++i) EXPECT_LE(sectored[i], plain[i]);

    std::vector<double> grid;
    for (int i = 1; i <= 20; ++i) grid.push_back(d_max * i / 20.0);
    grid.insert(grid.begin(), 1.0);  // below any radar spacing
    const auto all = census.curve(grid, CountSplit::All, CompassConfig::off());
    const auto direct = census.curve(grid, CountSplit::DirectOnly, CompassConfig::off());
    EXPECT_EQ(all.front().mean_count, 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      EXPECT_GE(all[i].mean_count, direct[i].mean_count);
      if (i > 0) {
        EXPECT_GE(all[i].mean_count, all[i - 1].mean_count);
        EXPECT_GE(direct[i].mean_count, direct[i - 1].mean_count);
      }
    }
    const auto dist = census.distribution(d_max, CompassConfig::off());
    EXPECT_NEAR(dist.mean(), all.back().mean_count, 1e-12);
    double sum = 0.0;
    for (double p : dist.probabilities()) sum += p;
    EXPECT_NEAR(sum, 1.0, 1e-9);
  }
}

TEST(Census, IndependentOfThreadCount) {
  const std::vector<Snapshot> snaps{random_scene(41, 50, 500.0, 5.0)};
  const auto a = InterfererCensus::run(snaps, RadarLayout::corner(), 120.0, 1);
  const auto b = InterfererCensus::run(snaps, RadarLayout::corner(), 120.0, 4);
  EXPECT_EQ(a.counts(120.0, CompassConfig::off()), b.counts(120.0, CompassConfig::off()));
}

TEST(Census, RejectsDistanceBeyondItsRange) {
  const std::vector<Snapshot> snaps{face_to_face(50.0)};
  const auto census = InterfererCensus::run(snaps, RadarLayout::front(), 100.0);
  EXPECT_THROW(census.distribution(200.0, CompassConfig::off()), ValidationError);
  const std::vector<double> bad{10.0, 5.0};
  EXPECT_THROW(census.curve(bad, CountSplit::All, CompassConfig::off()), ValidationError);
}

TEST(Census, AverageCountCurveWrapper) {
  const std::vector<Snapshot> snaps{face_to_face(50.0)};
  const std::vector<double> grid{10.0, 49.0, 50.0, 60.0};
  const auto curve = average_count_curve(snaps, RadarLayout::front(), grid, CountSplit::All,
                                         CompassConfig::off());
  ASSERT_EQ(curve.size(), 4u);
  EXPECT_EQ(curve[1].mean_count, 0.0);
  EXPECT_EQ(curve[2].mean_count, 1.0);
}

TEST(CurveCsv, HeaderAndRows) {
  std::ostringstream out;
  write_curve_csv(out, {{10.0, 1.5}, {20.0, 2.0}}, {{10.0, 1.0}, {20.0, 1.0}});
  EXPECT_EQ(out.str(), "d_max_m,mean_count_all,mean_count_direct\n10,1.5,1\n20,2,1\n");
  EXPECT_THROW(write_curve_csv(out, {{10.0, 1.0}}, {}), ValidationError);
}
