#include <benchmark/benchmark.h>

#include "hconvex/ch_verifier.hpp"
#include "hconvex/cone_builder.hpp"

namespace {

using namespace hconvex;

std::vector<Point3> points(std::size_t n)
{
  Rng rng(1);
  std::vector<Point3> out(n);
  for (auto& p : out) {
    p = Box::centered(3, 3, 3).sample(rng);
  }
  return out;
}

void BM_GroupMul(benchmark::State& state)
{
  const auto pts = points(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(group_mul(pts[i & 1023], pts[(i + 1) & 1023]));
    ++i;
  }
}
BENCHMARK(BM_GroupMul);

void BM_KoranyiNorm(benchmark::State& state)
{
  const auto pts = points(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(koranyi_norm(pts[i++ & 1023]));
  }
}
BENCHMARK(BM_KoranyiNorm);

void BM_ConeEval(benchmark::State& state)
{
  const ConeFunction c = ConeFunction::build(gallery("koranyi_ball"));
  const auto pts = points(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cone_eval(c, pts[i++ & 1023]));
  }
}
BENCHMARK(BM_ConeEval);

void BM_SolveTau(benchmark::State& state)
{
  const auto pts = points(1024);
  std::size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(solve_tau(pts[i & 1023], pts[(i + 7) & 1023]));
    ++i;
  }
}
BENCHMARK(BM_SolveTau);

void BM_FalsifyCylinder(benchmark::State& state)
{
  const SetOracle k = gallery("cylinder");
  for (auto _ : state) {
    benchmark::DoNotOptimize(falsify_ch(k, 100000, 101, 7));
  }
}
BENCHMARK(BM_FalsifyCylinder)->Unit(benchmark::kMillisecond);

void BM_FalsifyKoranyi(benchmark::State& state)
{
  const SetOracle k = gallery("koranyi_ball");
  for (auto _ : state) {
    benchmark::DoNotOptimize(falsify_ch(k, state.range(0), 33, 1));
  }
}
BENCHMARK(BM_FalsifyKoranyi)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
