#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "tsnsim/fiveg.hpp"
#include "tsnsim/gateway.hpp"
#include "tsnsim/sim.hpp"

namespace tsnsim {

/// Config file syntax error, with 1-based line number.
class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

struct AnalysisParams {
  std::optional<Duration> expected_period;  // default: schedule base period
  std::optional<Duration> tol;              // default: delay model max - min
  std::optional<Duration> d_max;            // default: 2 * delay model max (RTT-style)
};

struct ScenarioConfig {
  std::string name = "scenario";
  std::uint64_t seed = 1;
  Duration horizon = duration_from_seconds(10);
  TrafficSpec traffic;
  GatewayConfig gateway;
  BridgeConfig bridge;
  AnalysisParams analysis;

  Duration expected_period() const {
    return analysis.expected_period.value_or(gateway.schedule.base_period);
  }
  Duration tolerance() const {
    return analysis.tol.value_or(bridge.delay.max_delay() - bridge.delay.min_delay());
  }
  Duration d_max() const {
    return analysis.d_max.value_or(Duration{2 * bridge.delay.max_delay().ticks});
  }
};

/// Parses the flat key/value scenario format. Durations carry explicit unit
/// suffixes (ns/us/ms/s); there are no implicit unit defaults. Throws
/// ParseError with a line diagnostic on malformed input.
ScenarioConfig parse_scenario(const std::string& text);

ScenarioConfig load_scenario_file(const std::string& path);

/// Duration literal like "25ms", "12500us", "0ns". Integer values only.
Duration parse_duration(const std::string& token);

}  // namespace tsnsim
