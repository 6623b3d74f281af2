#include <doctest.h>

#include <random>

#include "tsnsim/capture_io.hpp"
#include "tsnsim/runner.hpp"
#include "tsnsim/scenario.hpp"

using namespace tsnsim;

namespace {

const char* kMinimalScenario = R"(
name = demo
seed = 9
horizon = 1s
traffic.type = periodic
traffic.period = 200ms
traffic.frame_size = 1000
traffic.count = 5
traffic.phase = 0ns
traffic.dst = 10.10.0.10
gateway.schedule.base_period = 200ms
gateway.schedule.window = offset=0ns dur=25ms queues=1
gateway.rule = dst=10.10.0.10 vlan=100 pcp=5 queue=1 stream=S1
bridge.delay = constant value=5680us
)";

}  // namespace

TEST_CASE("duration literals") {
  CHECK(parse_duration("200ms") == duration_from_millis(200));
  CHECK(parse_duration("12500us") == duration_from_micros(12'500));
  CHECK(parse_duration("0ns") == Duration{0});
  CHECK(parse_duration("10s") == duration_from_seconds(10));
  CHECK(parse_duration("1_000ns") == Duration{1000});
  CHECK_THROWS(parse_duration("25"));     // no implicit unit
  CHECK_THROWS(parse_duration("12.5ms")); // fractional values use a finer unit
  CHECK_THROWS(parse_duration("ms"));
}

TEST_CASE("scenario parsing") {
  const ScenarioConfig cfg = parse_scenario(kMinimalScenario);
  CHECK(cfg.name == "demo");
  CHECK(cfg.seed == 9);
  CHECK(cfg.horizon == duration_from_seconds(1));
  CHECK(cfg.gateway.schedule.base_period == duration_from_millis(200));
  REQUIRE(cfg.gateway.schedule.windows.size() == 1);
  CHECK(cfg.gateway.schedule.windows[0].open_queues == 0b10);
  REQUIRE(cfg.gateway.rules.size() == 1);
  CHECK(cfg.gateway.rules[0].stream == "S1");
  CHECK(std::holds_alternative<ConstantDelay>(cfg.bridge.delay.law));
  CHECK(validate_scenario(cfg).empty());
  // defaults derived from the config
  CHECK(cfg.expected_period() == duration_from_millis(200));
  CHECK(cfg.tolerance() == Duration{0});                       // constant law
  CHECK(cfg.d_max() == duration_from_micros(11'360));          // 2x one-way max
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_scenario("name = x\nbogus_key = 1\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_scenario("traffic.type = periodic\n"), ParseError);  // no base period
  CHECK_THROWS_AS(parse_scenario("horizon = ten\n"), ParseError);
  CHECK_THROWS_AS(
      parse_scenario("gateway.schedule.window = offset=0ns queues=1\n"),  // missing dur
      ParseError);
}

TEST_CASE("capture csv round-trips exactly") {
  std::mt19937_64 rng(31);
  CaptureSet set;
  for (int p = 0; p < 3; ++p) {
    std::uint64_t t = 0;
    for (int i = 0; i < 200; ++i) {
      t += rng() % 1'000'000'000;
      set.records[p].push_back(
          {rng(), (rng() % 2) ? "S1" : "", Instant{t}, static_cast<std::uint32_t>(64 + rng() % 1436)});
    }
  }
  const std::string csv = write_capture_csv(set);
  const CaptureSet back = parse_capture_csv(csv);
  for (int p = 0; p < 3; ++p) {
    REQUIRE(back.records[p].size() == set.records[p].size());
    for (std::size_t i = 0; i < set.records[p].size(); ++i) {
      CHECK(back.records[p][i].seq == set.records[p][i].seq);
      CHECK(back.records[p][i].stream == set.records[p][i].stream);
      CHECK(back.records[p][i].t == set.records[p][i].t);
      CHECK(back.records[p][i].size_bytes == set.records[p][i].size_bytes);
    }
  }
  CHECK(write_capture_csv(back) == csv);
}

TEST_CASE("run_scenario is reproducible") {
  ScenarioConfig cfg = parse_scenario(kMinimalScenario);
  const auto a = run_scenario(cfg);
  const auto b = run_scenario(cfg);
  CHECK(a.capture_csv == b.capture_csv);
  CHECK(a.report_csv == b.report_csv);
  CHECK(a.summary == b.summary);
  CHECK(a.summary.find("class=Deterministic, jitter=0ns") != std::string::npos);
}

TEST_CASE("sweep marks invalid rows and keeps going") {
  ScenarioConfig cfg = parse_scenario(kMinimalScenario);
  const std::vector<Duration> bases = {duration_from_millis(20), duration_from_millis(200)};
  const auto res = sweep_scenarios(cfg, bases, /*fixed_window=*/true, /*parallel=*/false);
  REQUIRE(res.rows.size() == 2);
  CHECK_FALSE(res.rows[0].valid);  // 25 ms window inside a 20 ms base
  CHECK(res.rows[1].valid);
}
