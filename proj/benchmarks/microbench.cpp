#include <benchmark/benchmark.h>

#include <limits>
#include <string>

#include "tessim/simulation.hpp"
#include "tessim/solver.hpp"
#include "tessim/sorbent.hpp"
#include "tessim/tess.hpp"

using namespace tessim;

namespace {

std::string freezer_text(double duration_s = 259200, double interval_s = 30,
                         const std::string& extra = "") {
  return "run.label = bench\n"
         "run.duration_s = " + std::to_string(duration_s) + "\n" +
         "run.output_interval_s = " + std::to_string(interval_s) + "\n" +
         "environment.kind = constant\n"
         "environment.temperature_K = 241\n" +
         extra;
}

// One controller-period frame of the four-node shell, the inner loop of
// every scenario run.
void BM_TransientFrame(benchmark::State& state) {
  auto cfg = ScenarioConfig::load(freezer_text(3600));
  Network network = build_network(cfg);
  EnvironmentProfile env = cfg.environment.profile;
  TransientSolver solver(network);
  NetworkState start = solver.initial_state(env);
  for (auto _ : state) {
    NetworkState s = start;
    solver.advance(s, 10.0, env);
    benchmark::DoNotOptimize(s.temperatures.data());
  }
}
BENCHMARK(BM_TransientFrame);

// The full 72-hour cold soak, storage bed included: the headline end-to-end
// cost of one scenario invocation.
void BM_FreezerRunWithBed(benchmark::State& state) {
  auto cfg = ScenarioConfig::load(freezer_text(259200, 30,
                                  "tess.enabled = true\ntess.open_delay_s = 7200\n"));
  for (auto _ : state) {
    auto result = run_scenario(cfg);
    benchmark::DoNotOptimize(result.summary.residual_J);
  }
  state.SetLabel(std::to_string(static_cast<int>(cfg.run.duration_s / 3600.0)) + " sim-hours");
}
BENCHMARK(BM_FreezerRunWithBed)->Unit(benchmark::kMillisecond);

// Newton solve for the settled temperature field.
void BM_SteadyState(benchmark::State& state) {
  auto cfg = ScenarioConfig::load(freezer_text());
  Network network = build_network(cfg);
  for (auto _ : state) {
    auto steady = steady_state(network, 241.0);
    benchmark::DoNotOptimize(steady.data());
  }
}
BENCHMARK(BM_SteadyState);

// Kinetics evaluation: called four times per integrator stage when a bed is
// active.
void BM_BedRates(benchmark::State& state) {
  TessState s;
  s.bed.sorbent = find_sorbent(builtin_sorbents(), "LiCl");
  s.bed.dry_mass_g = 25.0;
  s.bed.degradation = 1.0;
  s.reservoir.mass_g = 17.0;
  s.hydration = 1.3;
  s.water_absorbed_g = 8.0;
  for (auto _ : state) {
    TessRates r = heat_release_rates(s, std::numeric_limits<double>::infinity(), 255.0);
    benchmark::DoNotOptimize(r.net_heat_W);
  }
}
BENCHMARK(BM_BedRates);

// Ladder interpolation underneath every kinetics call.
void BM_CumulativeHeat(benchmark::State& state) {
  const SorbentSpec& licl = find_sorbent(builtin_sorbents(), "LiCl");
  double x = 0.0;
  for (auto _ : state) {
    x += 0.001;
    if (x > 5.0) x = 0.0;
    benchmark::DoNotOptimize(licl.cumulative_heat(x));
  }
}
BENCHMARK(BM_CumulativeHeat);

// Emitting and re-reading the sampled series, the cost of --out plus a
// post-hoc summary rebuild.
void BM_SeriesCsvRoundTrip(benchmark::State& state) {
  auto cfg = ScenarioConfig::load(freezer_text(86400, 60));
  auto result = run_scenario(cfg);
  for (auto _ : state) {
    std::string csv = result.series.to_csv();
    SeriesTable back = SeriesTable::from_csv(csv);
    benchmark::DoNotOptimize(back.rows.data());
  }
  state.SetLabel(std::to_string(result.series.rows.size()) + " rows");
}
BENCHMARK(BM_SeriesCsvRoundTrip)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
