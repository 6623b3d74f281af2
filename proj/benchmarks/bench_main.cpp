#include <benchmark/benchmark.h>

#include "tsnsim/sim.hpp"
#include "tsnsim/tas.hpp"

using namespace tsnsim;

namespace {

GatewayConfig reference_gateway() {
  GatewayConfig cfg;
  cfg.schedule.base_period = duration_from_millis(200);
  cfg.schedule.windows = {{Duration{0}, duration_from_millis(25), 0b10}};
  cfg.rules = {{"10.10.0.10", 100, 5, 1, "S1"}};
  return cfg;
}

void BM_SimulateEndToEnd(benchmark::State& state) {
  const auto frames = static_cast<std::uint64_t>(state.range(0));
  BridgeConfig bridge;
  bridge.delay.law = UniformBoundedDelay{duration_from_micros(3150), duration_from_micros(16550)};
  TrafficSpec traffic;
  traffic.dst = "10.10.0.10";
  traffic.pattern = PeriodicTraffic{duration_from_millis(1), 1000, frames, Duration{0}};
  const Duration horizon{frames * 1'000'000 + 500'000'000};
  for (auto _ : state) {
    auto out = simulate(reference_gateway(), bridge, traffic, horizon, 42);
    benchmark::DoNotOptimize(out.counters.delivered);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * frames));
}
BENCHMARK(BM_SimulateEndToEnd)->Arg(1'000)->Arg(10'000)->Arg(100'000);

void BM_SampleDelayLognormal(benchmark::State& state) {
  DelayModel m;
  m.law = TruncatedLognormalDelay::fit(duration_from_micros(3150), duration_from_micros(16550),
                                       duration_from_micros(5680));
  Rng rng(7);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sample_delay(m, Instant{0}, rng).ticks);
  }
}
BENCHMARK(BM_SampleDelayLognormal);

void BM_NextTransmitInstant(benchmark::State& state) {
  GateSchedule s;
  s.base_period = duration_from_millis(200);
  s.windows = {{Duration{0}, duration_from_millis(25), 0b10},
               {duration_from_millis(100), duration_from_millis(10), 0b01}};
  const Duration tx = serialization_time(1500, 100'000'000);
  std::uint64_t t = 0;
  for (auto _ : state) {
    t = (t + 777'777) % 400'000'000;
    benchmark::DoNotOptimize(next_transmit_instant(s, 1, Instant{t}, tx));
  }
}
BENCHMARK(BM_NextTransmitInstant);

}  // namespace

BENCHMARK_MAIN();
