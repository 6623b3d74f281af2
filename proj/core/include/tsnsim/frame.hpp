#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>

#include "tsnsim/time.hpp"

namespace tsnsim {

using QueueId = std::uint8_t;
using StreamId = std::string;

inline constexpr std::size_t kNumQueues = 8;
inline constexpr std::uint32_t kMinFrameBytes = 64;
inline constexpr std::uint32_t kDefaultMtu = 1500;

/// Capture points along the path: end-station side of the gateway, TSN side,
/// and the far side of the 5G bridge.
enum class ObservationPoint : int {
  GatewayIngress = 0,
  GatewayEgress = 1,
  CoreArrival = 2,
};
inline constexpr std::size_t kNumObservationPoints = 3;

const char* observation_point_name(ObservationPoint p);
std::optional<ObservationPoint> observation_point_from_name(const std::string& name);

/// One unit of traffic. Carries size and metadata only, no payload bytes.
struct Frame {
  std::uint64_t seq = 0;           // per-stream sequence number
  std::uint32_t size_bytes = 0;    // on-wire L2 size excluding preamble/IFG
  std::string dst;                 // destination address used for classification
  std::optional<StreamId> stream;  // none => best-effort
  std::optional<std::uint8_t> pcp;
  std::optional<std::uint16_t> vlan;
  std::optional<QueueId> queue;
  Instant created_at;
  std::array<std::optional<Instant>, kNumObservationPoints> taps;

  std::optional<Instant>& tap(ObservationPoint p) { return taps[static_cast<int>(p)]; }
  const std::optional<Instant>& tap(ObservationPoint p) const {
    return taps[static_cast<int>(p)];
  }
};

}  // namespace tsnsim
