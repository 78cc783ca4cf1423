#include <benchmark/benchmark.h>

#include "hmsrep/dyadic.hpp"
#include "hmsrep/order.hpp"

using namespace hmsrep;

namespace {

// Uniform source against a target with k atoms of mass 1/k each.
void BM_LeqFinite(benchmark::State& state) {
  const auto k = state.range(0);
  std::vector<Rational> target(static_cast<std::size_t>(k), Rational(1, k));
  const auto t = make_finite(target);
  const auto s = make_finite({Rational(1, 2), Rational(1, 2)});
  for (auto _ : state) benchmark::DoNotOptimize(leq_finite(s, t));
}
BENCHMARK(BM_LeqFinite)->DenseRange(2, 12, 2);

// Odd source against an even uniform target: no morphism, full search.
void BM_LeqFiniteFailure(benchmark::State& state) {
  const auto k = state.range(0);
  std::vector<Rational> target(static_cast<std::size_t>(k), Rational(1, k));
  const auto t = make_finite(target);
  const auto s = parse_weights("1/3,1/3,1/3");
  for (auto _ : state) benchmark::DoNotOptimize(leq_finite(s, t));
}
BENCHMARK(BM_LeqFiniteFailure)->DenseRange(4, 10, 2);

void BM_Coarsenings(benchmark::State& state) {
  const auto n = state.range(0);
  std::vector<Rational> w;
  long total = n * (n + 1) / 2;
  for (long i = 1; i <= n; ++i) w.push_back(Rational(i, total));
  const auto m = make_finite(w);
  for (auto _ : state) benchmark::DoNotOptimize(coarsenings(m));
}
BENCHMARK(BM_Coarsenings)->DenseRange(4, 10, 2);

void BM_NoLub(benchmark::State& state) {
  const std::vector<FiniteMeasure> family{parse_weights("2/3,1/3"), parse_weights("3/4,1/4")};
  const auto ub1 = parse_weights("2/3,1/4,1/12");
  const auto ub2 = parse_weights("5/12,1/3,1/4");
  for (auto _ : state) benchmark::DoNotOptimize(verify_no_least_upper_bound(family, ub1, ub2));
}
BENCHMARK(BM_NoLub);

void BM_ExpandGreedy(benchmark::State& state) {
  const Rational a(1, state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(expand_greedy(a));
}
BENCHMARK(BM_ExpandGreedy)->Arg(7)->Arg(101)->Arg(1009)->Arg(10007);

void BM_UniqueSums(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(unique_sums_check(static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_UniqueSums)->Arg(12)->Arg(16);

void BM_DyadicSearch(benchmark::State& state) {
  const auto m = parse_weights("7/12,1/4,1/6");
  for (auto _ : state) benchmark::DoNotOptimize(dyadic_partition_search(m));
}
BENCHMARK(BM_DyadicSearch);

}  // namespace
