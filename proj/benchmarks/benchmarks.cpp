#include <benchmark/benchmark.h>

#include "stump/descent.hpp"
#include "stump/driver.hpp"
#include "stump/generators.hpp"
#include "stump/persistence.hpp"
#include "stump/transfer.hpp"

namespace {

using namespace stump;

void bm_persistence(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  ScalarField field = gen_blobs(n, n, 7);
  ScalarField generic = make_generic(field);
  for (auto _ : state) {
    PersistenceDiagram diag = diagram_of(generic);
    benchmark::DoNotOptimize(diag.dots.data());
  }
  state.SetComplexityN(n * n);
}
BENCHMARK(bm_persistence)->RangeMultiplier(2)->Range(16, 256)->Complexity();

void bm_step(benchmark::State& state, int patch, double eps) {
  int n = static_cast<int>(state.range(0));
  ScalarField reference = gen_blobs(n, n, 7);
  ScalarField field = negated(reference);

  StepConfig config;
  config.functional = preset_run_config(Task::blobs).functional;
  config.down.patch = patch;
  config.noise_eps = eps;
  config.alpha = 1.0 - 1.0 / (n * n);
  config.negated = true;

  AdamState adam(n, n);
  Rng rng(42);
  for (auto _ : state) {
    StepRecord rec = stump_step(field, reference, config, adam, rng);
    benchmark::DoNotOptimize(rec.total_loss);
  }
}
void bm_stump_step(benchmark::State& state) { bm_step(state, 5, 50.0); }
void bm_vanilla_step(benchmark::State& state) { bm_step(state, 1, 0.0); }
BENCHMARK(bm_stump_step)->Arg(64)->Arg(100)->Arg(128);
BENCHMARK(bm_vanilla_step)->Arg(64)->Arg(100)->Arg(128);

void bm_downsample(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  ScalarField field = gen_blobs(n, n, 7);
  DownsampleSpec spec;
  spec.patch = 5;
  Rng rng(42);
  for (auto _ : state) {
    Weighting w = sample_weighting(spec, n, n, rng);
    ScalarField coarse = downsample(field, w);
    benchmark::DoNotOptimize(coarse.values().data());
  }
}
BENCHMARK(bm_downsample)->Arg(100)->Arg(256);

void bm_sliced_matching(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  ScalarField field = gen_circle(n, n, 7);
  PersistenceDiagram ref = diagram_of(make_generic(negated(field)));
  Rng noise_rng(11);
  ScalarField perturbed = add_uniform_noise(negated(field), 50.0, noise_rng);
  PersistenceDiagram sample = diagram_of(make_generic(perturbed));
  Rng rng(42);
  for (auto _ : state) {
    DiagramMatching m = sliced_matching(ref, sample, 1, 20, rng);
    benchmark::DoNotOptimize(m.src_to_dst.data());
  }
}
BENCHMARK(bm_sliced_matching)->Arg(64)->Arg(100);

}  // namespace

BENCHMARK_MAIN();
