// Serial reference vs OpenMP for the replicate loops. The benchmark argument
// is the worker count; 1 runs the serial path.
#include <benchmark/benchmark.h>

#include <algorithm>

#include "ppcurve/bootstrap.hpp"
#include "ppcurve/experiments.hpp"
#include "ppcurve/limit.hpp"
#include "ppcurve/margins.hpp"

namespace {

using namespace ppcurve;

Execution exec_of(const benchmark::State& state) {
  return Execution{static_cast<int>(state.range(0))};
}

void BM_LimitNorms(benchmark::State& state) {
  const PPCurve curve(MarginModel::normal(0, 1), MarginModel::normal(1, 1));
  const LimitSampler sampler(LimitSpec{curve, CopulaModel::product(), 1.0, 256});
  for (auto _ : state) {
    benchmark::DoNotOptimize(limit_norm_samples(sampler, 2000, 1, stream_tag("limit"),
                                                exec_of(state)));
  }
}

void BM_BootstrapReplicates(benchmark::State& state) {
  const PPCurve curve(MarginModel::normal(0, 1), MarginModel::normal(1, 1));
  RngStream stream(3);
  const PPPlotData data(draw_paired_sample(curve, CopulaModel::product(), 2048, stream));
  BootstrapRequest request;
  request.replicates = 400;
  request.seed = 5;
  for (auto _ : state) {
    benchmark::DoNotOptimize(bootstrap_replicates(data, request, exec_of(state)));
  }
}

void BM_Convergence(benchmark::State& state) {
  ExperimentConfig config;
  config.fx = "normal:0,1";
  config.gy = "normal:1,1";
  config.n_list = {256, 1024};
  config.replicates = 400;
  config.limit_draws = 2000;
  config.grid = 256;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_convergence_experiment(config, exec_of(state)));
  }
}

void thread_args(benchmark::internal::Benchmark* b) {
  // Always at least one OpenMP case, even on a single core.
  b->Arg(1);
  const int top = std::max(available_threads(), 2);
  int t = 2;
  for (; t < top; t *= 2) b->Arg(t);
  b->Arg(top);
  b->Unit(benchmark::kMillisecond)->UseRealTime();
}

BENCHMARK(BM_LimitNorms)->Apply(thread_args);
BENCHMARK(BM_BootstrapReplicates)->Apply(thread_args);
BENCHMARK(BM_Convergence)->Apply(thread_args);

}  // namespace

BENCHMARK_MAIN();
