#include <benchmark/benchmark.h>

#include "causality/generator.hpp"
#include "causality/harness.hpp"
#include "causality/itc.hpp"
#include "causality/vector_clock.hpp"

using namespace causality;

namespace {

void BM_VectorMerge(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back(default_node_name(i));
  auto u = make_universe(names);
  std::vector<std::uint64_t> a(n), b(n);
  for (std::size_t i = 0; i < n; ++i) {
    a[i] = i;
    b[i] = n - i;
  }
  VectorClock x(u, a), y(u, b);
  for (auto _ : state) benchmark::DoNotOptimize(vc_merge(x, y));
}
BENCHMARK(BM_VectorMerge)->Arg(4)->Arg(64)->Arg(1024);

void BM_ItcEventJoin(benchmark::State& state) {
  auto [l, r] = itc_fork(itc_seed());
  auto [rl, rr] = itc_fork(r);
  for (int i = 0; i < 20; ++i) {
    l = itc_event(l);
    rl = itc_event(rl);
    rr = itc_event(rr);
  }
  for (auto _ : state) {
    auto j = itc_join(l, itc_peek(rl));
    benchmark::DoNotOptimize(itc_event(itc_join(j, itc_peek(rr))));
  }
}
BENCHMARK(BM_ItcEventJoin);

void BM_Conformance(benchmark::State& state, const char* mechanism) {
  auto trace = generate_trace(6, static_cast<std::size_t>(state.range(0)), 0.3, 1.0, 1);
  auto m = Mechanism::parse(mechanism);
  for (auto _ : state) benchmark::DoNotOptimize(conformance(trace, m));
}
BENCHMARK_CAPTURE(BM_Conformance, vc, "vc")->Arg(50)->Arg(300);
BENCHMARK_CAPTURE(BM_Conformance, itc, "itc")->Arg(50)->Arg(300);
BENCHMARK_CAPTURE(BM_Conformance, ch, "ch")->Arg(50)->Arg(300);

}  // namespace

BENCHMARK_MAIN();
