#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "jacobel/abel.hpp"
#include "jacobel/stability.hpp"
#include "jacobel/twister.hpp"

using namespace jacobel;

namespace {

// Cycle of n rational components with one extra node between the first two.
NodalCurve cycle(std::size_t n) {
  CurveDescription d;
  for (std::size_t k = 0; k < n; ++k) d.components.push_back(Component{"c" + std::to_string(k), 0});
  for (std::size_t k = 0; k < n; ++k) {
    d.nodes.push_back({"n" + std::to_string(k), d.components[k].name, d.components[(k + 1) % n].name});
  }
  d.nodes.push_back({"x", d.components[0].name, d.components[1].name});
  return build_curve(d);
}

SheafClass spread(const NodalCurve& c, const Polarization& e, long long amplitude) {
  SheafClass d = SheafClass::zero(c.component_count());
  for (std::size_t k = 0; k < d.size(); ++k) d[k] = (k % 2 == 0 ? amplitude : -amplitude);
  d[0] += quasistable_degree(c, e) - d.total();
  return d;
}

void BM_Classify(benchmark::State& state) {
  const NodalCurve c = cycle(static_cast<std::size_t>(state.range(0)));
  const Polarization e = Polarization::trivial(c.component_count());
  const BetaContext ctx(c, e);
  const SheafClass d = spread(c, e, 0);
  for (auto _ : state) benchmark::DoNotOptimize(classify(ctx, d, 0));
}
BENCHMARK(BM_Classify)->DenseRange(4, 16, 4);

void BM_QuasistableTwister(benchmark::State& state) {
  const NodalCurve c = cycle(static_cast<std::size_t>(state.range(0)));
  const Polarization e = Polarization::trivial(c.component_count());
  const SheafClass d = spread(c, e, 3);
  for (auto _ : state) benchmark::DoNotOptimize(find_quasistable_twister(c, e, d, 0));
}
BENCHMARK(BM_QuasistableTwister)->DenseRange(4, 10, 2);

void BM_ResolveAbel(benchmark::State& state) {
  const NodalCurve c = cycle(static_cast<std::size_t>(state.range(0)));
  const Polarization e = Polarization::trivial(c.component_count());
  SheafClass l = spread(c, e, 1);
  l[0] += 1;
  for (auto _ : state) benchmark::DoNotOptimize(resolve_abel_map(c, e, l, 0, DesingularizationChoice{}));
}
BENCHMARK(BM_ResolveAbel)->DenseRange(3, 7, 2);

}  // namespace

BENCHMARK_MAIN();
