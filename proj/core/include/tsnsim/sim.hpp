#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "tsnsim/fiveg.hpp"
#include "tsnsim/frame.hpp"
#include "tsnsim/gateway.hpp"
#include "tsnsim/rng.hpp"
#include "tsnsim/time.hpp"

namespace tsnsim {

enum class EventAction { FrameArrival, GateEdge, EgressComplete, BridgeDelivery, GeneratorTick };

/// Kernel event. Total order is (at, seq): ties in time resolve by insertion
/// order, which makes the execution order a pure function of config and seed.
struct Event {
  Instant at;
  std::uint64_t seq = 0;  // insertion counter
  EventAction action = EventAction::GeneratorTick;
  Frame frame;  // FrameArrival / BridgeDelivery payload
  bool deferred_delivery = false;
};

struct PeriodicTraffic {
  Duration period;
  std::uint32_t frame_size = 1000;
  std::uint64_t count = 0;
  Duration phase;
};

/// iPerf-like stand-in: frames at nominal spacing frame_size*8/bitrate,
/// each perturbed by uniform +-jitter, until `duration`.
struct CbrTraffic {
  std::uint64_t bitrate_bps = 0;
  std::uint32_t frame_size = 1000;
  Duration duration;
  Duration jitter;
};

struct TrafficSpec {
  std::variant<PeriodicTraffic, CbrTraffic> pattern = PeriodicTraffic{};
  std::string dst;
};

/// Expands a traffic spec into (arrival instant, frame size) pairs.
std::vector<std::pair<Instant, std::uint32_t>> generate(const TrafficSpec& spec, Rng& rng);

struct CaptureRecord {
  std::uint64_t seq = 0;
  StreamId stream;  // empty => best-effort
  Instant t;
  std::uint32_t size_bytes = 0;
};

struct CaptureSet {
  std::array<std::vector<CaptureRecord>, kNumObservationPoints> records;

  std::vector<CaptureRecord>& at(ObservationPoint p) { return records[static_cast<int>(p)]; }
  const std::vector<CaptureRecord>& at(ObservationPoint p) const {
    return records[static_cast<int>(p)];
  }
};

struct Counters {
  std::uint64_t generated = 0;
  std::uint64_t egressed = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped_gateway = 0;
  std::uint64_t dropped_bridge = 0;
  std::uint64_t queued_at_end = 0;
  std::uint64_t in_flight_at_end = 0;
};

struct RunOutput {
  CaptureSet captures;
  Counters counters;
};

/// Runs the full path (generator -> gateway TAS -> 5G bridge -> core) up to
/// the horizon. Strictly single-threaded and deterministic per (inputs, seed).
RunOutput simulate(const GatewayConfig& gateway, const BridgeConfig& bridge,
                   const TrafficSpec& traffic, Duration horizon, std::uint64_t seed);

}  // namespace tsnsim
