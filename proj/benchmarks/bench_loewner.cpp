#include <benchmark/benchmark.h>

#include <cmath>

#include "loewner/chains.hpp"
#include "loewner/flow.hpp"
#include "loewner/operators.hpp"
#include "loewner/range.hpp"
#include "loewner/sampling.hpp"
#include "loewner/shapes.hpp"

using namespace loewner;

namespace {

HerglotzFieldSpec cayley_bp() {
  return HerglotzFieldSpec::berkson_porta(0.0, RationalFunction({1.0, -1.0}, {1.0, 1.0}));
}

HerglotzFieldSpec radial_ball(std::size_t n) {
  return HerglotzFieldSpec::radial(n == 1 ? DomainSpec::unit_disc() : DomainSpec::unit_ball(n),
                                   LinearOperator::scalar(n, Complex(-1.0, 0.5)));
}

}  // namespace

static void BM_FlowRK45(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto spec = radial_ball(n);
  const ComplexVector z = ComplexVector::Constant(static_cast<Eigen::Index>(n), 0.5 / std::sqrt(double(n)));
  for (auto _ : state) benchmark::DoNotOptimize(integrate_flow(spec, z, 0.0, 5.0).endpoint);
}
BENCHMARK(BM_FlowRK45)->Arg(1)->Arg(2)->Arg(4)->Arg(8);

static void BM_FlowRK4(benchmark::State& state) {
  IntegratorConfig cfg;
  cfg.method = IntegratorMethod::RK4Fixed;
  cfg.step_h = 1.0 / static_cast<double>(state.range(0));
  const auto spec = cayley_bp();
  const ComplexVector z = make_vector({Complex(0.3, 0.2)});
  for (auto _ : state) benchmark::DoNotOptimize(integrate_flow(spec, z, 0.0, 2.0, cfg).endpoint);
}
BENCHMARK(BM_FlowRK4)->RangeMultiplier(4)->Range(16, 1024);

static void BM_ChainEval(benchmark::State& state) {
  const ChainHandle chain(cayley_bp(), static_cast<double>(state.range(0)));
  const ComplexVector z = make_vector({Complex(0.3, 0.2)});
  for (auto _ : state) benchmark::DoNotOptimize(chain.eval(0.5, z));
}
BENCHMARK(BM_ChainEval)->Arg(2)->Arg(8)->Arg(32);

static void BM_Dissipativity(benchmark::State& state) {
  const auto spec = radial_ball(2);
  SampleStream rng(1);
  std::vector<std::pair<ComplexVector, ComplexVector>> pairs;
  for (int k = 0; k < state.range(0); ++k) pairs.emplace_back(rng.in_ball(2, 0.9), rng.in_ball(2, 0.9));
  for (auto _ : state) benchmark::DoNotOptimize(check_dissipativity(spec, pairs, {0.0, 1.0}).max_derivative);
}
BENCHMARK(BM_Dissipativity)->Arg(100)->Arg(1000);

static void BM_ClassifyRange(benchmark::State& state) {
  const auto spec = HerglotzFieldSpec::ball_diagonal(
      {PiecewiseConstant::constant(Complex(0.0, 1.0)), PiecewiseConstant::constant(-1.0)});
  const std::vector<ComplexVector> base{make_vector({0.0, 0.0}), make_vector({0.2, 0.3})};
  for (auto _ : state) benchmark::DoNotOptimize(classify_range(spec, {0.0}, base).classification);
}
BENCHMARK(BM_ClassifyRange)->Unit(benchmark::kMillisecond);

static void BM_LiftedEvolution(benchmark::State& state) {
  const LiftedChainSpec lift(ChainHandle(cayley_bp(), 2.0), static_cast<std::size_t>(state.range(0)));
  SampleStream rng(2);
  const ComplexVector z = rng.in_ball(lift.target_dimension(), 0.8);
  for (auto _ : state) benchmark::DoNotOptimize(lifted_evolution_eval(lift, 0.2, 1.1, z));
}
BENCHMARK(BM_LiftedEvolution)->Arg(2)->Arg(4);

static void BM_StarCriterion(benchmark::State& state) {
  const auto map = MapUnderTest::roper_suffridge(DiscMap::koebe(), 2);
  const auto probes = shape_probes(2, static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(star_criterion(map, probes).min_margin);
}
BENCHMARK(BM_StarCriterion)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

static void BM_RoucheCount(benchmark::State& state) {
  const DiscMap f = DiscMap::koebe();
  for (auto _ : state) benchmark::DoNotOptimize(count_preimages(f, 0.0, 0.95, Complex(0.4, 0.1)));
}
BENCHMARK(BM_RoucheCount);
BENCHMARK_MAIN();
