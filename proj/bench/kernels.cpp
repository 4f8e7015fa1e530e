// Serial vs parallel kernels. Run with --benchmark_filter to pick a pair.

#include <benchmark/benchmark.h>

#include <filesystem>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "oim/bench.hpp"
#include "oim/oracle.hpp"

using namespace oim;

namespace {

PuboProblem instance(std::uint32_t n) { return formula_to_pubo(random_3cnf(n, (n * 43) / 10, 17)); }

std::vector<std::string> data_files(std::size_t count) {
  auto files = expand_instance_paths({OIM_DATA_DIR "/uf20-91"});
  files.resize(std::min(files.size(), count));
  return files;
}

BenchConfig grid_config() {
  BenchConfig c;
  c.instances = data_files(4);
  c.trials = 4;
  c.integrator.t_final = 5.0;
  return c;
}

void set_threads(benchmark::State& state) {
#ifdef _OPENMP
  state.counters["threads"] = omp_get_max_threads();
#else
  state.counters["threads"] = 1;
#endif
}

void BM_OracleGrayParallel(benchmark::State& state) {
  const PuboProblem p = instance(static_cast<std::uint32_t>(state.range(0)));
  set_threads(state);
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_ground(p).energy);
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}

void BM_OracleNaiveSerial(benchmark::State& state) {
  const PuboProblem p = instance(static_cast<std::uint32_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(brute_force_ground_reference(p, 24).energy);
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << state.range(0)));
}

void BM_VerifyMappingParallel(benchmark::State& state) {
  const CnfFormula f = random_3cnf(static_cast<std::uint32_t>(state.range(0)), 4 * state.range(0), 3);
  set_threads(state);
  for (auto _ : state) benchmark::DoNotOptimize(verify_mapping(f));
}

void BM_TrialGridParallel(benchmark::State& state) {
  const BenchConfig c = grid_config();
  set_threads(state);
  for (auto _ : state) benchmark::DoNotOptimize(run_bench(c).total_trials());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.instances.size() * c.trials));
}

void BM_TrialGridSerial(benchmark::State& state) {
  const BenchConfig c = grid_config();
  for (auto _ : state) benchmark::DoNotOptimize(run_bench_serial(c).total_trials());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.instances.size() * c.trials));
}

void BM_RhsProposed(benchmark::State& state) {
  const auto n = static_cast<std::uint32_t>(state.range(0));
  const PuboProblem p = instance(n);
  const ComplexState z = initialize(n, 1);
  std::vector<cplx> out(n);
  for (auto _ : state) {
    rhs_proposed(p, PotentialSpec::hopf(), z.z, LocalDynamicsParams{}, out);
    benchmark::DoNotOptimize(out.data());
  }
}

}  // namespace

BENCHMARK(BM_OracleGrayParallel)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_OracleNaiveSerial)->Arg(12)->Arg(16)->Arg(20)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_VerifyMappingParallel)->Arg(12)->Arg(16)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialGridParallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_TrialGridSerial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_RhsProposed)->Arg(20)->Arg(100)->Arg(250);

BENCHMARK_MAIN();
