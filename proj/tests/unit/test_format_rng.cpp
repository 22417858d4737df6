#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <set>
#include <thread>

#include "radarint/error.hpp"
#include "radarint/format.hpp"
#include "radarint/parallel.hpp"
#include "radarint/rng.hpp"

using namespace radarint;

TEST(Format, RoundTripsShortest) {
  for (double v : {0.0, 1.0, -2.5, 0.1, 1e-300, 2693.0360243171854, 3e9}) {
    EXPECT_EQ(parse_double(format_double(v)), v) << format_double(v);
  }
  EXPECT_EQ(format_double(0.1), "0.1");
  EXPECT_EQ(format_double(-0.0), "0");
}

TEST(Format, InfinityIsSpelledOut) {
  const double inf = std::numeric_limits<double>::infinity();
  EXPECT_EQ(format_double(inf), "inf");
  EXPECT_EQ(format_double(-inf), "-inf");
  EXPECT_EQ(parse_double("inf"), inf);
}

TEST(Format, RejectsGarbage) {
  EXPECT_THROW(parse_double("1.5x"), std::invalid_argument);
  EXPECT_THROW(parse_double(""), std::invalid_argument);
}

TEST(Rng, SameSeedSameStream) {
  Rng a(42), b(42), c(43);
  for (int i = 0; i < 100; ++i) {
    const auto x = a.next();
    EXPECT_EQ(x, b.next());
    (void)c;
  }
  EXPECT_NE(Rng(42).next(), Rng(43).next());
}

TEST(Rng, UniformStaysInUnitInterval) {
  Rng r(7);
  double lo = 1.0, hi = 0.0, sum = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double u = r.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    sum += u;
  }
  EXPECT_NEAR(sum / n, 0.5, 4.0 * std::sqrt(1.0 / 12.0 / n));
  EXPECT_LT(lo, 1e-3);
  EXPECT_GT(hi, 1.0 - 1e-3);
}

TEST(Rng, BelowIsUnbiasedOverSmallRange) {
  Rng r(3);
  std::array<int, 6> counts{};
  const int n = 60000;
  for (int i = 0; i < n; ++i) ++counts[r.below(6)];
  for (int c : counts) EXPECT_NEAR(c, n / 6.0, 5.0 * std::sqrt(n / 6.0));
  EXPECT_EQ(r.below(1), 0u);
}

TEST(Rng, StreamSeedsAreDistinct) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 10000; ++i) seen.insert(stream_seed(1, i));
  EXPECT_EQ(seen.size(), 10000u);
  EXPECT_NE(stream_seed(1, 0), stream_seed(2, 0));
}

TEST(Parallel, VisitsEveryIndexOnce) {
  for (unsigned threads : {1u, 3u, 8u}) {
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), threads, [&](std::size_t i) { ++hits[i]; });
    for (int h : hits) EXPECT_EQ(h, 1);
  }
}

TEST(Parallel, RethrowsWorkerException) {
  EXPECT_THROW(parallel_for(100, 4,
                            [](std::size_t i) {
                              if (i == 57) throw ValidationError("boom");
                            }),
               ValidationError);
}

TEST(Parallel, ResolvesZeroToHardware) { EXPECT_GE(resolve_threads(0), 1u); }
