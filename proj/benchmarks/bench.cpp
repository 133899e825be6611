// Microbenchmarks for the hot paths: matching enumeration, random family
// draws, the per-family witness scan, preorder construction, the full
// perfect-matching scan, and monotone-family enumeration.

#include <benchmark/benchmark.h>

#include <utility>
#include <vector>

#include "shatter/counterexamples.hpp"
#include "shatter/family.hpp"
#include "shatter/matching.hpp"
#include "shatter/random_mif.hpp"
#include "shatter/separability.hpp"

using namespace shatter;

namespace {

void BM_EnumerateMatchings(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = static_cast<int>(state.range(1));
  std::uint64_t total = 0;
  for (auto _ : state) {
    std::uint64_t seen = 0;
    enumerate_matchings(n, k, [&](std::uint64_t, const Matching&) {
      ++seen;
      return true;
    });
    total += seen;
    benchmark::DoNotOptimize(seen);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(total));
}
BENCHMARK(BM_EnumerateMatchings)->Args({10, 4})->Args({12, 5})->Args({14, 6});

void BM_RandomMif(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    Family f = random_mif({n, seed++});
    benchmark::DoNotOptimize(f.size());
  }
}
BENCHMARK(BM_RandomMif)->Arg(10)->Arg(12)->Arg(14);

// Cost of testing every snake of one matching against a fixed family,
// measured per matching over a deterministic sample.
void BM_WitnessScanPerMatching(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int k = n / 2 - 1;
  const Family f = random_mif({n, 7});
  std::vector<Matching> sample;
  enumerate_matchings(n, k, [&](std::uint64_t rank, const Matching& m) {
    if (rank % 97 == 0) sample.push_back(m);
    return sample.size() < 512;
  });
  std::size_t next = 0;
  for (auto _ : state) {
    const auto uncarved = first_uncarved_snake(f, sample[next]);
    benchmark::DoNotOptimize(uncarved.has_value());
    next = (next + 1) % sample.size();
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations()));
}
BENCHMARK(BM_WitnessScanPerMatching)->Arg(10)->Arg(12)->Arg(14);

void BM_SeparationPreorder(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Family f = random_mif({n, 11});
  for (auto _ : state) {
    const SeparationPreorder pre = separation_preorder(f);
    const int width = quotient_width(pre);
    benchmark::DoNotOptimize(width);
  }
}
BENCHMARK(BM_SeparationPreorder)->Arg(10)->Arg(12)->Arg(14);

void BM_PerfectMatchingScan(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Family base = random_mif({n - 1, 5});
  const OddCounterexample c = build_odd_counterexample(base, n);
  for (auto _ : state) {
    const auto witness = verify_conjecture_B(c, 1);
    benchmark::DoNotOptimize(witness.has_value());
  }
}
BENCHMARK(BM_PerfectMatchingScan)->Arg(9)->Arg(11);

void BM_MonotoneEnumeration(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t total = 0;
  for (auto _ : state) {
    std::uint64_t count = 0;
    enumerate_monotone_families(n, [&](const Family&) {
      ++count;
      return true;
    });
    total += count;
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(total));
}
BENCHMARK(BM_MonotoneEnumeration)->Arg(4)->Arg(5);

}  // namespace

BENCHMARK_MAIN();
