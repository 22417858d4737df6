#include <benchmark/benchmark.h>

#include "radarint/interferers.hpp"
#include "radarint/link_budget.hpp"
#include "radarint/models.hpp"
#include "radarint/oracle.hpp"
#include "radarint/scenario.hpp"

using namespace radarint;

namespace {

std::vector<Snapshot> highway(double length_m) {
  HighwayConfig cfg;
  cfg.length = length_m;
  cfg.density = 150.0;
  cfg.seed = 3;
  return generate_highway(cfg);
}

void BM_CensusFront(benchmark::State& state) {
  const auto snaps = highway(static_cast<double>(state.range(0)));
  const double d_max = max_equivalent_distance(LinkBudgetSpec::front());
  for (auto _ : state) {
    auto census = InterfererCensus::run(snaps, RadarLayout::front(), d_max, 1);
    benchmark::DoNotOptimize(census.observations().size());
  }
  state.counters["vehicles"] = static_cast<double>(snaps.front().vehicles.size());
}
BENCHMARK(BM_CensusFront)->Arg(1000)->Arg(4000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_CensusCorner(benchmark::State& state) {
  const auto snaps = highway(static_cast<double>(state.range(0)));
  const double d_max = max_equivalent_distance(LinkBudgetSpec::corner());
  for (auto _ : state) {
    auto census = InterfererCensus::run(snaps, RadarLayout::corner(), d_max, 1);
    benchmark::DoNotOptimize(census.observations().size());
  }
}
BENCHMARK(BM_CensusCorner)->Arg(1000)->Arg(8000)->Unit(benchmark::kMillisecond);

void BM_FrameLossDefault(benchmark::State& state) {
  const auto overlap = state.range(0) == 0 ? FrameOverlap::Approximate : FrameOverlap::Exact;
  const auto spec = RadarTimingSpec::front();
  for (auto _ : state) {
    benchmark::DoNotOptimize(frame_loss_prob_single(spec, 0.027, overlap));
  }
}
BENCHMARK(BM_FrameLossDefault)->Arg(0)->Arg(1);

void BM_BinomialTail(benchmark::State& state) {
  const auto n = state.range(0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(binomial_upper_tail(n, n / 20, 0.03));
  }
}
BENCHMARK(BM_BinomialTail)->Arg(2000)->Arg(10000);

void BM_FailureAllSchemes(benchmark::State& state) {
  std::vector<double> p(40, 1.0 / 40.0);
  const auto dist = InterfererDistribution::from_probabilities(p);
  const auto spec = RadarTimingSpec::front();
  for (auto _ : state) {
    for (Scheme s : {Scheme::Baseline, Scheme::FrameHopping, Scheme::ChirpHopping}) {
      benchmark::DoNotOptimize(failure_prob(dist, spec, s).p_fail);
    }
  }
}
BENCHMARK(BM_FailureAllSchemes);

void BM_McSystemFailure(benchmark::State& state) {
  CollisionModel model;
  model.shape = FrameShape{20, 40, 2};
  model.p_f = 0.3;
  model.p_t_chirp = 0.5;
  model.m = 3;
  const auto dist = InterfererDistribution::from_probabilities({0.2, 0.3, 0.3, 0.2});
  for (auto _ : state) {
    benchmark::DoNotOptimize(mc_system_failure(dist, model, Scheme::ChirpHopping, 100000, 1).mean);
  }
}
BENCHMARK(BM_McSystemFailure)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
