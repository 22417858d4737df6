#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "radarint/error.hpp"
#include "radarint/scenario.hpp"

using namespace radarint;

namespace {

HighwayConfig small_highway(double density = 60.0) {
  HighwayConfig c;
  c.density = density;
  c.length = 8000.0;
  return c;
}

// Vehicles per lane, keyed by y, sorted along x.
std::map<double, std::vector<double>> lanes_of(const Snapshot& s) {
  std::map<double, std::vector<double>> lanes;
  for (const auto& v : s.vehicles) lanes[v.y].push_back(v.x);
  for (auto& [y, xs] : lanes) std::sort(xs.begin(), xs.end());
  return lanes;
}

}  // namespace

TEST(Highway, CountMatchesDensityTimesLength) {
  const auto snaps = generate_highway(small_highway(60.0));
  ASSERT_EQ(snaps.size(), 1u);
  EXPECT_EQ(snaps[0].vehicles.size(), 480u);
  EXPECT_EQ(generate_highway(small_highway(150.0))[0].vehicles.size(), 1200u);
}

TEST(Highway, SixtyPerKmGivesHundredMetreLaneSpacing) {
  const auto lanes = lanes_of(generate_highway(small_highway(60.0))[0]);
  ASSERT_EQ(lanes.size(), 6u);
  for (const auto& [y, xs] : lanes) {
    EXPECT_EQ(xs.size(), 80u);
    EXPECT_DOUBLE_EQ(8000.0 / xs.size(), 100.0);
  }
}

TEST(Highway, RespectsHeadwayAndRoad) {
  auto cfg = small_highway(270.0);
  cfg.snapshots = 3;
  for (const auto& snap : generate_highway(cfg)) {
    for (const auto& [y, xs] : lanes_of(snap)) {
      for (std::size_t i = 0; i < xs.size(); ++i) {
        EXPECT_GE(xs[i], cfg.min_headway / 2 - 1e-9);
        EXPECT_LE(xs[i], cfg.length - cfg.min_headway / 2 + 1e-9);
        if (i > 0) EXPECT_GE(xs[i] - xs[i - 1], cfg.min_headway - 1e-9);
      }
    }
  }
}

TEST(Highway, DirectionsAndLanes) {
  const auto snap = generate_highway(small_highway(150.0))[0];
  std::size_t east = 0, west = 0;
  for (const auto& v : snap.vehicles) {
    if (v.heading == 0.0) {
      ++east;
      EXPECT_LT(v.y, 0.0);
    } else {
      EXPECT_EQ(v.heading, 180.0);
      EXPECT_GT(v.y, 0.0);
      ++west;
    }
  }
  EXPECT_EQ(east, 600u);
  EXPECT_EQ(west, 600u);
}

TEST(Highway, RemainderSharedAcrossDirections) {
  auto cfg = small_highway();
  cfg.density = 0.875;  // 7 vehicles over 6 lanes
  const auto snap = generate_highway(cfg)[0];
  EXPECT_EQ(snap.vehicles.size(), 7u);
}

TEST(Highway, DeterministicInSeed) {
  auto cfg = small_highway(150.0);
  cfg.snapshots = 2;
  const auto a = generate_highway(cfg);
  const auto b = generate_highway(cfg);
  std::ostringstream sa, sb;
  write_snapshots_csv(sa, a);
  write_snapshots_csv(sb, b);
  EXPECT_EQ(sa.str(), sb.str());
  cfg.seed = 2;
  std::ostringstream sc;
  write_snapshots_csv(sc, generate_highway(cfg));
  EXPECT_NE(sa.str(), sc.str());
}

TEST(Highway, SnapshotsDifferAndAreTimed) {
  auto cfg = small_highway(60.0);
  cfg.snapshots = 3;
  cfg.snapshot_interval = 2.0;
  const auto snaps = generate_highway(cfg);
  ASSERT_EQ(snaps.size(), 3u);
  EXPECT_EQ(snaps[2].time, 4.0);
  EXPECT_NE(snaps[0].vehicles[0].x, snaps[1].vehicles[0].x);
}

TEST(Highway, InfeasibleDensityIsCapacityError) {
  EXPECT_THROW(generate_highway(small_highway(1e6)), CapacityError);
  auto cfg = small_highway();
  cfg.min_headway = 3.0;  // shorter than a car
  EXPECT_THROW(generate_highway(cfg), ValidationError);
  cfg = small_highway();
  cfg.lanes_per_direction = 0;
  EXPECT_THROW(cfg.validate(), ValidationError);
}

TEST(Highway, ExactCapacityIsAccepted) {
  HighwayConfig cfg;
  cfg.lanes_per_direction = 1;
  cfg.length = 70.0;
  cfg.density = 2 * 10 / 0.07;  // 10 vehicles per 70 m lane
  cfg.min_headway = 7.0;
  const auto snap = generate_highway(cfg)[0];
  EXPECT_EQ(snap.vehicles.size(), 20u);
}

TEST(SnapshotCsv, GroupsRowsByTime) {
  std::istringstream in(
      "time,id,x,y,heading,length,width\n"
      "1.0,1,0,0,0,4.5,1.8\n"
      "0.0,1,0,0,0,4.5,1.8\n"
      "0.0,2,10,0,450,4.5,1.8\n");
  const auto snaps = read_snapshots_csv(in);
  ASSERT_EQ(snaps.size(), 2u);
  EXPECT_EQ(snaps[0].time, 0.0);
  EXPECT_EQ(snaps[0].vehicles.size(), 2u);
  EXPECT_EQ(snaps[0].vehicles[1].heading, 90.0);
  EXPECT_EQ(snaps[1].vehicles.size(), 1u);
}

TEST(SnapshotCsv, TwoRowsOneSnapshot) {
  std::istringstream in("time,id,x,y,heading,length,width\n0,1,0,0,0,4,2\n0,2,5,5,90,4,2\n");
  const auto snaps = read_snapshots_csv(in);
  ASSERT_EQ(snaps.size(), 1u);
  EXPECT_EQ(snaps[0].vehicles.size(), 2u);
}

TEST(SnapshotCsv, MalformedRowReportsLine) {
  std::istringstream in("time,id,x,y,heading,length,width\n0,1,0,0,0,4,2\n0,2,abc,0,0,4,2\n");
  try {
    read_snapshots_csv(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
  std::istringstream short_row("time,id,x,y,heading,length,width\n0,1,0,0\n");
  EXPECT_THROW(read_snapshots_csv(short_row), ParseError);
  std::istringstream bad_size("time,id,x,y,heading,length,width\n0,1,0,0,0,-4,2\n");
  EXPECT_THROW(read_snapshots_csv(bad_size), ParseError);
  std::istringstream no_header("0,1,0,0,0,4,2\n");
  EXPECT_THROW(read_snapshots_csv(no_header), ParseError);
}

TEST(SnapshotCsv, DuplicateTimeIdIsValidationError) {
  std::istringstream in("time,id,x,y,heading,length,width\n0,1,0,0,0,4,2\n0,1,9,0,0,4,2\n");
  try {
    read_snapshots_csv(in);
    FAIL();
  } catch (const ParseError&) {
    FAIL() << "duplicate ids are not a parse error";
  } catch (const ValidationError&) {
  }
}

TEST(SnapshotCsv, AcceptsBomAndCrlf) {
  std::istringstream in("\xEF\xBB\xBFtime,id,x,y,heading,length,width\r\n0,1,0,0,0,4,2\r\n");
  EXPECT_EQ(read_snapshots_csv(in).size(), 1u);
}

TEST(SnapshotCsv, RoundTripIsIdentity) {
  auto cfg = small_highway(60.0);
  cfg.snapshots = 2;
  const auto snaps = generate_highway(cfg);
  std::stringstream io;
  write_snapshots_csv(io, snaps);
  const auto back = read_snapshots_csv(io);
  ASSERT_EQ(back.size(), snaps.size());
  for (std::size_t s = 0; s < snaps.size(); ++s) {
    ASSERT_EQ(back[s].vehicles.size(), snaps[s].vehicles.size());
    for (std::size_t i = 0; i < snaps[s].vehicles.size(); ++i) {
      const auto& a = snaps[s].vehicles[i];
      const auto& b = back[s].vehicles[i];
      EXPECT_EQ(a.id, b.id);
      EXPECT_EQ(a.x, b.x);
      EXPECT_EQ(a.y, b.y);
      EXPECT_EQ(a.heading, b.heading);
    }
  }
}

TEST(SnapshotCsv, MissingFileIsIoError) {
  EXPECT_THROW(load_snapshots("/nonexistent/trace.csv"), IoError);
}

TEST(Sampling, KeepsOneSnapshotPerInterval) {
  std::vector<Snapshot> snaps;
  for (int i = 0; i < 25; ++i) snaps.push_back({i * 0.1, {}});
  const auto kept = sample_snapshots(snaps, 1.0);
  ASSERT_EQ(kept.size(), 3u);
  EXPECT_NEAR(kept[1].time, 1.0, 1e-9);
  EXPECT_NEAR(kept[2].time, 2.0, 1e-9);
  EXPECT_EQ(sample_snapshots(snaps, 0.0).size(), 25u);
}

TEST(Snapshot, DuplicateIdsRejected) {
  Snapshot s{0.0, {VehicleState{}, VehicleState{}}};
  EXPECT_THROW(validate(s), ValidationError);
}

TEST(Radars, FrontMountAndBoresight) {
  VehicleState v;
  v.length = 4.5;
  const auto r = place_radars(v, RadarLayout::front());
  ASSERT_EQ(r.size(), 1u);
  EXPECT_DOUBLE_EQ(r[0].x, 2.25);
  EXPECT_DOUBLE_EQ(r[0].y, 0.0);
  EXPECT_EQ(r[0].boresight, 0.0);
  EXPECT_EQ(r[0].fov, 30.0);
  EXPECT_EQ(r[0].kind, RadarKind::Front);
}

TEST(Radars, CornerSectorsAreDisjoint) {
  VehicleState v;
  const auto radars = place_radars(v, RadarLayout::corner());
  ASSERT_EQ(radars.size(), 4u);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_EQ(radars[i].fov, 60.0);
    for (std::size_t j = i + 1; j < 4; ++j) {
      const double d = std::abs(radars[i].boresight - radars[j].boresight);
      EXPECT_GE(std::min(d, 360.0 - d), 60.0);
    }
  }
  EXPECT_EQ(radars[0].boresight, 45.0);
  EXPECT_EQ(radars[1].boresight, 315.0);
  EXPECT_EQ(radars[2].boresight, 135.0);
  EXPECT_EQ(radars[3].boresight, 225.0);
  EXPECT_DOUBLE_EQ(radars[0].x, 2.25);
  EXPECT_DOUBLE_EQ(radars[0].y, 0.9);
}

TEST(Radars, RotationAndTranslationEquivariance) {
  VehicleState v;
  v.id = 5;
  const auto base = place_radars(v, RadarLayout::corner());
  VehicleState w = v;
  w.heading = 90.0;
  w.x = 10.0;
  w.y = -3.0;
  const auto moved = place_radars(w, RadarLayout::corner());
  for (std::size_t i = 0; i < base.size(); ++i) {
    const Vec2 expect = rotate(base[i].position(), 90.0) + Vec2{10.0, -3.0};
    EXPECT_NEAR(moved[i].x, expect.x, 1e-12);
    EXPECT_NEAR(moved[i].y, expect.y, 1e-12);
    EXPECT_DOUBLE_EQ(moved[i].boresight, normalize_degrees(base[i].boresight + 90.0));
  }
}

TEST(Radars, LayoutValidation) {
  auto bad = RadarLayout::corner(100.0);
  EXPECT_THROW(bad.validate(), ValidationError);
  auto two = RadarLayout::front();
  two.boresight_offsets.push_back(180.0);
  two.mount_points.push_back(MountPoint::RearLeft);
  EXPECT_THROW(two.validate(), ValidationError);
  EXPECT_EQ(parse_radar_kind("corner"), RadarKind::Corner);
  EXPECT_THROW(parse_radar_kind("side"), ValidationError);
}
