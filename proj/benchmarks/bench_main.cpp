#include <benchmark/benchmark.h>

#include <random>

#include "srgkit/geom/region.hpp"
#include "srgkit/lang/pipeline.hpp"
#include "srgkit/lti/nyquist.hpp"
#include "srgkit/lti/srg.hpp"
#include "srgkit/sim/word_sim.hpp"

namespace {

srg::geom::GeomSettings settings(benchmark::State& st) {
  srg::geom::GeomSettings s;
  s.raster = int(st.range(0));
  return s;
}

void BM_DiskInverse(benchmark::State& st) {
  auto d = srg::geom::disk_region(-1.0, 3.0, settings(st));
  for (auto _ : st) benchmark::DoNotOptimize(srg::geom::mobius_inverse(d));
}
BENCHMARK(BM_DiskInverse)->Arg(512)->Arg(1024)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_MinkowskiSum(benchmark::State& st) {
  auto s = settings(st);
  auto a = srg::geom::disk_region(0.0, 1.0, s), b = srg::geom::disk_region(1.0, 3.0, s);
  for (auto _ : st) benchmark::DoNotOptimize(srg::geom::minkowski_sum(a, b));
}
BENCHMARK(BM_MinkowskiSum)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_SetProduct(benchmark::State& st) {
  auto s = settings(st);
  auto a = srg::geom::disk_region(1.0, 2.0, s), b = srg::geom::disk_region(0.5, 3.0, s);
  for (auto _ : st) benchmark::DoNotOptimize(srg::geom::set_product(a, b));
}
BENCHMARK(BM_SetProduct)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_NyquistCurve(benchmark::State& st) {
  auto f = srg::lti::parse_tf("5+1/s+2*s/(s/10+1)");
  for (auto _ : st) benchmark::DoNotOptimize(srg::lti::nyquist_curve(f));
}
BENCHMARK(BM_NyquistCurve)->Unit(benchmark::kMillisecond);

void BM_SrgLti(benchmark::State& st) {
  auto f = srg::lti::parse_tf("3/((s+1)*(s^2+0.4*s+4))");
  auto s = settings(st);
  for (auto _ : st) benchmark::DoNotOptimize(srg::lti::srg_lti(f, s));
}
BENCHMARK(BM_SrgLti)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_ExtendedSrg(benchmark::State& st) {
  auto f = srg::lti::parse_tf("1/(s^2+0.3*s-1)");
  auto s = settings(st);
  for (auto _ : st) benchmark::DoNotOptimize(srg::lti::extended_srg(f, s));
}
BENCHMARK(BM_ExtendedSrg)->Arg(512)->Arg(2048)->Unit(benchmark::kMillisecond);

void BM_WordSimulation(benchmark::State& st) {
  srg::lang::OperatorTable t;
  t.add_lti("G", srg::lti::parse_tf("3/((s+2)*(s/10+1))"));
  t.add_lti("K", srg::lti::parse_tf("1/(s+1)"));
  t.add_nonlinearity("p", srg::nonlin::saturation());
  auto e = srg::lang::parse_expr("(1+(G p K)^-1)^-1");
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n;
  std::vector<double> u(std::size_t(st.range(0)));
  for (auto& x : u) x = n(rng);
  for (auto _ : st) {
    srg::sim::WordSimulator sim(e, t, 1e-3);
    benchmark::DoNotOptimize(sim.run(u));
  }
  st.SetItemsProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_WordSimulation)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
