#include <doctest.h>

#include <cmath>

#include "tsnsim/fiveg.hpp"

using namespace tsnsim;

namespace {

DelayModel constant(std::uint64_t us) {
  DelayModel m;
  m.law = ConstantDelay{duration_from_micros(us)};
  return m;
}

}  // namespace

TEST_CASE("constant delay law") {
  Rng rng(1);
  const DelayModel m = constant(5680);
  for (int i = 0; i < 100; ++i)
    CHECK(sample_delay(m, Instant{0}, rng) == duration_from_micros(5680));
}

TEST_CASE("uniform bounded delay stays inside the bounds") {
  DelayModel m;
  m.law = UniformBoundedDelay{duration_from_micros(3150), duration_from_micros(16550)};
  Rng rng(42);
  Duration lo = duration_from_micros(16550), hi = duration_from_micros(3150);
  for (int i = 0; i < 100'000; ++i) {
    const Duration d = sample_delay(m, Instant{0}, rng);
    CHECK(d >= duration_from_micros(3150));
    CHECK(d <= duration_from_micros(16550));
    lo = std::min(lo, d);
    hi = std::max(hi, d);
  }
  // the law actually spreads over the interval
  CHECK(lo < duration_from_micros(3300));
  CHECK(hi > duration_from_micros(16400));
}

TEST_CASE("truncated lognormal hits the target mean") {
  const auto law = TruncatedLognormalDelay::fit(
      duration_from_micros(3150), duration_from_micros(16550), duration_from_micros(5680));
  DelayModel m;
  m.law = law;
  Rng rng(7);
  double sum = 0;
  const int n = 200'000;
  for (int i = 0; i < n; ++i) {
    const Duration d = sample_delay(m, Instant{0}, rng);
    CHECK(d >= duration_from_micros(3150));
    CHECK(d <= duration_from_micros(16550));
    sum += static_cast<double>(d.ticks);
  }
  const double mean = sum / n;
  CHECK(std::abs(mean - 5'680'000.0) / 5'680'000.0 < 0.01);
}

TEST_CASE("lognormal fit rejects impossible triples") {
  CHECK_THROWS_AS(TruncatedLognormalDelay::fit(duration_from_micros(3150),
                                               duration_from_micros(16550),
                                               duration_from_micros(20000)),
                  ConfigurationError);
}

TEST_CASE("next uplink opportunity in the default TDD pattern") {
  const TddConfig tdd = TddConfig::uplink_centric_default();
  CHECK(next_uplink_opportunity(tdd, Instant{0}) == Instant{3'000'000});
  CHECK(next_uplink_opportunity(tdd, Instant{3'200'000}) == Instant{3'200'000});
  CHECK(next_uplink_opportunity(tdd, Instant{5'000'000}) == Instant{8'000'000});
}

TEST_CASE("slot quantization only delays") {
  DelayModel plain = constant(5680);
  DelayModel quantized = plain;
  quantized.tdd = TddConfig::uplink_centric_default();
  Rng rng(3);
  for (std::uint64_t t = 0; t < 10'000'000; t += 137'000) {
    const Duration d0 = sample_delay(plain, Instant{t}, rng);
    const Duration d1 = sample_delay(quantized, Instant{t}, rng);
    CHECK(d1 >= d0);
  }
}

TEST_CASE("bridge transit") {
  SUBCASE("constant shift") {
    Bridge b({constant(5680)}, 1);
    const auto res = b.transit(Instant{duration_from_millis(200).ticks});
    const auto* d = std::get_if<Delivered>(&res);
    REQUIRE(d != nullptr);
    CHECK(d->core_arrival == Instant{duration_from_micros(205'680).ticks});
  }
  SUBCASE("drop at capacity") {
    BridgeConfig cfg{constant(5680), 1, OverflowPolicy::Drop, Duration{0}, false};
    Bridge b(cfg, 1);
    CHECK(std::holds_alternative<Delivered>(b.transit(Instant{0})));
    CHECK(std::holds_alternative<Dropped>(b.transit(Instant{100})));
    CHECK(b.dropped() == 1);
    b.complete_delivery();
    CHECK(std::holds_alternative<Delivered>(b.transit(Instant{200})));
  }
  SUBCASE("defer adds the extra delay") {
    BridgeConfig cfg{constant(5680), 1, OverflowPolicy::Defer, duration_from_millis(10), false};
    Bridge b(cfg, 1);
    CHECK(std::holds_alternative<Delivered>(b.transit(Instant{0})));
    const auto res = b.transit(Instant{duration_from_millis(40).ticks});
    const auto* d = std::get_if<Delivered>(&res);
    REQUIRE(d != nullptr);
    CHECK(d->deferred);
    CHECK(d->core_arrival == Instant{duration_from_micros(55'680).ticks});
  }
}

TEST_CASE("equal seeds give identical delivery sequences") {
  DelayModel m;
  m.law = UniformBoundedDelay{duration_from_micros(3150), duration_from_micros(16550)};
  Bridge a({m}, 99), b({m}, 99);
  for (int i = 0; i < 1000; ++i) {
    const Instant t{static_cast<std::uint64_t>(i) * 1000};
    const auto ra = a.transit(t), rb = b.transit(t);
    REQUIRE(std::holds_alternative<Delivered>(ra));
    CHECK(std::get<Delivered>(ra).core_arrival == std::get<Delivered>(rb).core_arrival);
    a.complete_delivery();
    b.complete_delivery();
  }
}

TEST_CASE("fifo enforcement clamps reordering") {
  DelayModel m;
  m.law = UniformBoundedDelay{duration_from_micros(3150), duration_from_micros(16550)};
  BridgeConfig cfg{m, std::nullopt, OverflowPolicy::Drop, Duration{0}, true};
  Bridge b(cfg, 5);
  Instant last{0};
  for (int i = 0; i < 1000; ++i) {
    const auto res = b.transit(Instant{static_cast<std::uint64_t>(i) * 10'000});
    const auto arrival = std::get<Delivered>(res).core_arrival;
    CHECK(arrival >= last);
    last = arrival;
    b.complete_delivery();
  }
}
