#include <benchmark/benchmark.h>

#include <random>

#include "zipshift/zipshift.hpp"

using namespace zipshift;

namespace {

ZipShiftSpace fixture(const char* name) { return load_space(std::string(ZIPSHIFT_FIXTURES) + "/" + name); }

std::vector<EpPoint> sample(const ZipShiftSpace& sp, std::size_t count) {
  std::mt19937_64 rng(1);
  std::vector<EpPoint> out;
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_point(sp, rng));
  return out;
}

void BM_Shift(benchmark::State& state) {
  auto sp = fixture("abc3.json");
  auto pts = sample(sp, 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(shift(sp, pts[i++ % pts.size()]));
}
BENCHMARK(BM_Shift);

void BM_Preimages(benchmark::State& state) {
  auto sp = fixture(state.range(0) ? "sofic6.json" : "sigma_g.json");
  auto pts = sample(sp, 64);
  std::size_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(preimages(sp, pts[i++ % pts.size()]));
}
BENCHMARK(BM_Preimages)->Arg(0)->Arg(1);

void BM_PreimagesK(benchmark::State& state) {
  auto sp = fixture("sigma_f.json");
  auto x = sample(sp, 1)[0];
  for (auto _ : state) benchmark::DoNotOptimize(preimages_k(sp, x, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_PreimagesK)->DenseRange(1, 6);

void BM_CountPeriodic(benchmark::State& state) {
  auto sp = coding_space(2);
  for (auto _ : state) benchmark::DoNotOptimize(count_periodic(sp, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_CountPeriodic)->Arg(4)->Arg(8)->Arg(16);

void BM_PeriodicPoints(benchmark::State& state) {
  auto sp = coding_space(2);
  for (auto _ : state) benchmark::DoNotOptimize(periodic_points(sp, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_PeriodicPoints)->DenseRange(1, 4);

void BM_Metrics(benchmark::State& state) {
  auto sp = fixture("primed4.json");
  auto pts = sample(sp, 64);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(metrics(pts[i % pts.size()], pts[(i + 1) % pts.size()]));
    ++i;
  }
}
BENCHMARK(BM_Metrics);

void BM_HigherBlock(benchmark::State& state) {
  auto sp = fixture("abc3.json");
  for (auto _ : state) benchmark::DoNotOptimize(HigherBlock(sp, static_cast<std::size_t>(state.range(0))));
}
BENCHMARK(BM_HigherBlock)->DenseRange(2, 4);

void BM_Decode(benchmark::State& state) {
  HorseshoeModel m(2, Rational(1, 2));
  std::size_t depth = static_cast<std::size_t>(state.range(0));
  ItineraryCode code{Word(depth, 1), Word(depth, 3)};
  for (auto _ : state) benchmark::DoNotOptimize(decode(m, code));
}
BENCHMARK(BM_Decode)->Arg(4)->Arg(8)->Arg(16);

void BM_VerifyConjugacy(benchmark::State& state) {
  HorseshoeModel m(2, Rational(1, 2));
  auto sp = coding_space(2);
  for (auto _ : state) benchmark::DoNotOptimize(verify_conjugacy(m, sp, static_cast<std::size_t>(state.range(0)), 20));
}
BENCHMARK(BM_VerifyConjugacy)->Arg(3)->Arg(6);

}  // namespace

BENCHMARK_MAIN();
