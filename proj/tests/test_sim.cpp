#include <doctest.h>

#include "tsnsim/capture_io.hpp"
#include "tsnsim/sim.hpp"

using namespace tsnsim;

namespace {

GatewayConfig paper_gateway() {
  GatewayConfig cfg;
  cfg.schedule.base_period = duration_from_millis(200);
  cfg.schedule.windows = {{Duration{0}, duration_from_millis(25), 0b10}};
  cfg.rules = {{"10.10.0.10", 100, 5, 1, "S1"}};
  return cfg;
}

TrafficSpec periodic(Duration period, std::uint64_t count, Duration phase = Duration{0},
                     std::uint32_t size = 1000) {
  TrafficSpec t;
  t.pattern = PeriodicTraffic{period, size, count, phase};
  t.dst = "10.10.0.10";
  return t;
}

}  // namespace

TEST_CASE("traffic generation") {
  Rng rng(1);
  SUBCASE("periodic arithmetic sequence") {
    const auto arrivals = generate(periodic(duration_from_millis(200), 3), rng);
    REQUIRE(arrivals.size() == 3);
    CHECK(arrivals[0].first == Instant{0});
    CHECK(arrivals[1].first == Instant{duration_from_millis(200).ticks});
    CHECK(arrivals[2].first == Instant{duration_from_millis(400).ticks});
  }
  SUBCASE("periodic with phase") {
    const auto arrivals =
        generate(periodic(duration_from_millis(100), 2, duration_from_millis(5)), rng);
    REQUIRE(arrivals.size() == 2);
    CHECK(arrivals[0].first == Instant{duration_from_millis(5).ticks});
    CHECK(arrivals[1].first == Instant{duration_from_millis(105).ticks});
  }
  SUBCASE("cbr at exact nominal spacing") {
    TrafficSpec t;
    t.pattern = CbrTraffic{8'000'000, 1000, duration_from_millis(10), Duration{0}};
    const auto arrivals = generate(t, rng);
    REQUIRE(arrivals.size() == 10);
    for (std::size_t k = 0; k < arrivals.size(); ++k)
      CHECK(arrivals[k].first == Instant{k * 1'000'000});
  }
  SUBCASE("cbr jitter stays within the bound") {
    TrafficSpec t;
    t.pattern = CbrTraffic{8'000'000, 1000, duration_from_millis(100), duration_from_micros(200)};
    const auto arrivals = generate(t, rng);
    REQUIRE(arrivals.size() == 100);
    for (std::size_t k = 0; k < arrivals.size(); ++k) {
      const std::uint64_t nominal = k * 1'000'000;
      const std::uint64_t lo = nominal >= 200'000 ? nominal - 200'000 : 0;
      CHECK(arrivals[k].first.ticks >= lo);
      CHECK(arrivals[k].first.ticks <= nominal + 200'000);
    }
  }
}

TEST_CASE("constant-delay run keeps exact base-period spacing at the core") {
  BridgeConfig bridge;
  bridge.delay.law = ConstantDelay{duration_from_micros(5680)};
  const auto out = simulate(paper_gateway(), bridge, periodic(duration_from_millis(200), 20),
                            duration_from_seconds(4), 1);
  CHECK(out.counters.generated == 20);
  CHECK(out.counters.delivered == 20);
  const auto& core = out.captures.at(ObservationPoint::CoreArrival);
  REQUIRE(core.size() == 20);
  for (std::size_t k = 1; k < core.size(); ++k)
    CHECK(core[k].t - core[k - 1].t == duration_from_millis(200));
}

TEST_CASE("zero-count generator yields an empty run") {
  const auto out = simulate(paper_gateway(), BridgeConfig{}, periodic(duration_from_millis(200), 0),
                            duration_from_seconds(1), 1);
  CHECK(out.counters.generated == 0);
  CHECK(out.counters.delivered == 0);
  for (int p = 0; p < 3; ++p)
    CHECK(out.captures.records[p].empty());
}

TEST_CASE("same seed twice gives byte-identical captures") {
  BridgeConfig bridge;
  bridge.delay.law = UniformBoundedDelay{duration_from_micros(3150), duration_from_micros(16550)};
  const auto a = simulate(paper_gateway(), bridge, periodic(duration_from_millis(200), 30),
                          duration_from_seconds(6), 77);
  const auto b = simulate(paper_gateway(), bridge, periodic(duration_from_millis(200), 30),
                          duration_from_seconds(6), 77);
  CHECK(write_capture_csv(a.captures) == write_capture_csv(b.captures));
}

TEST_CASE("egress seqs form a subsequence of ingress seqs") {
  GatewayConfig gw = paper_gateway();
  gw.queue_capacity = 2;
  TrafficSpec t;
  t.pattern = CbrTraffic{20'000'000, 1000, duration_from_millis(400), duration_from_micros(300)};
  t.dst = "10.10.0.10";
  const auto out = simulate(gw, BridgeConfig{}, t, duration_from_seconds(1), 5);
  const auto& in = out.captures.at(ObservationPoint::GatewayIngress);
  const auto& eg = out.captures.at(ObservationPoint::GatewayEgress);
  std::size_t i = 0;
  for (const auto& r : eg) {
    while (i < in.size() && in[i].seq != r.seq) ++i;
    REQUIRE(i < in.size());  // subsequence property
    ++i;
  }
  // conservation under drops
  const auto& c = out.counters;
  CHECK(c.generated == c.delivered + c.dropped_gateway + c.dropped_bridge + c.queued_at_end +
                           c.in_flight_at_end);
}

TEST_CASE("monotone taps along the path") {
  BridgeConfig bridge;
  bridge.delay.law = UniformBoundedDelay{duration_from_micros(3150), duration_from_micros(16550)};
  const auto out = simulate(paper_gateway(), bridge, periodic(duration_from_millis(50), 40),
                            duration_from_seconds(4), 9);
  const auto& in = out.captures.at(ObservationPoint::GatewayIngress);
  const auto& eg = out.captures.at(ObservationPoint::GatewayEgress);
  const auto& core = out.captures.at(ObservationPoint::CoreArrival);
  for (const auto& r : eg) {
    const auto it = std::find_if(in.begin(), in.end(),
                                 [&](const CaptureRecord& x) { return x.seq == r.seq; });
    REQUIRE(it != in.end());
    CHECK(it->t <= r.t);
  }
  for (const auto& r : core) {
    const auto it = std::find_if(eg.begin(), eg.end(),
                                 [&](const CaptureRecord& x) { return x.seq == r.seq; });
    REQUIRE(it != eg.end());
    CHECK(it->t <= r.t);
  }
}
