#include <benchmark/benchmark.h>

#include <array>
#include <cmath>

#include "bbm/chaos/expansion.hpp"
#include "bbm/chaos/operators.hpp"
#include "bbm/hierarchy/kernels.hpp"
#include "bbm/numerics/field.hpp"
#include "bbm/pde/fkpp.hpp"
#include "bbm/sim/simulate.hpp"

namespace {

void BM_SimulateTrial(benchmark::State& state) {
  bbm::sim::SimConfig c;
  c.t_final = static_cast<double>(state.range(0));
  std::uint64_t trial = 0;
  for (auto _ : state) benchmark::DoNotOptimize(bbm::sim::simulate(c, trial++));
}
BENCHMARK(BM_SimulateTrial)->Arg(1)->Arg(2)->Arg(4);

void BM_EvalGn(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const std::array<double, 4> y{-0.4, 0.1, 0.5, 1.2};
  for (auto _ : state)
    benchmark::DoNotOptimize(bbm::hierarchy::eval_gn(n, 1.0, 0.0, std::span(y.data(), static_cast<std::size_t>(n))));
}
BENCHMARK(BM_EvalGn)->DenseRange(2, 4)->Unit(benchmark::kMillisecond);

void BM_WickProduct(benchmark::State& state) {
  const bbm::numerics::Grid1D g(-5.0, 5.0, static_cast<std::size_t>(state.range(0)));
  const auto f = bbm::chaos::TestFunction::gaussian_bump(g, 0.8, 0.2, 0.5);
  const auto h = bbm::chaos::TestFunction::gaussian_bump(g, 0.5, -0.3, 0.6);
  const auto X = bbm::chaos::stochastic_exponential(f, 4);
  const auto Y = bbm::chaos::stochastic_exponential(h, 4);
  for (auto _ : state) benchmark::DoNotOptimize(bbm::chaos::wick_product(X, Y, 4));
}
BENCHMARK(BM_WickProduct)->Arg(21)->Arg(41)->Unit(benchmark::kMillisecond);

void BM_SolveFkpp(benchmark::State& state) {
  const bbm::numerics::Grid1D g(-10.0, 10.0, static_cast<std::size_t>(state.range(0)));
  const auto f0 = bbm::numerics::Field1D::from_function(g, [](double x) { return 0.9 * std::exp(-x * x); });
  for (auto _ : state) benchmark::DoNotOptimize(bbm::pde::solve_fkpp(f0, 1.0));
}
BENCHMARK(BM_SolveFkpp)->Arg(501)->Arg(1001)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
