#include <benchmark/benchmark.h>

#include "hmsrep/hms.hpp"
#include "hmsrep/spin.hpp"

using namespace hmsrep;

namespace {

constexpr std::uint64_t kSamples = 100000;

void BM_SampleThreshold(benchmark::State& state) {
  const auto h = threshold_hms(parse_weights("1/2,1/3,1/6"));
  for (auto _ : state) benchmark::DoNotOptimize(sample(h, std::size_t{0}, 1, kSamples));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kSamples));
}
BENCHMARK(BM_SampleThreshold);

void BM_SampleCountable(benchmark::State& state) {
  const auto h = countable_hms_from_finite(parse_weights("1/2,1/3,1/6"));
  for (auto _ : state) benchmark::DoNotOptimize(sample(h, std::size_t{0}, 1, kSamples));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kSamples));
}
BENCHMARK(BM_SampleCountable);

void BM_SampleSpin(benchmark::State& state) {
  const BlochVector u{0.0, 0.0, 1.0};
  const auto h = state.range(0) == 0 ? aerts_hms(u) : reduced_hms(u);
  const auto s = SpinState::at_overlap(u, Rational(1, 3));
  for (auto _ : state) benchmark::DoNotOptimize(sample(h, s, 1, kSamples));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * kSamples));
}
BENCHMARK(BM_SampleSpin)->Arg(0)->Arg(1);

void BM_SigmaMorphism(benchmark::State& state) {
  const auto m = parse_weights("1/2,1/4,1/8,1/16,1/16");
  const auto h = countable_hms_from_finite(m);
  for (auto _ : state) benchmark::DoNotOptimize(verify_sigma_morphism(h, m, static_cast<Index>(state.range(0))));
}
BENCHMARK(BM_SigmaMorphism)->Arg(6)->Arg(10);

void BM_BandLayout(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(band_layout(static_cast<Index>(state.range(0))));
}
BENCHMARK(BM_BandLayout)->Arg(8)->Arg(12);

}  // namespace
