#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "tsnsim/frame.hpp"
#include "tsnsim/tas.hpp"
#include "tsnsim/time.hpp"

namespace tsnsim {

/// Maps non-TSN traffic matching a destination address onto a TSN stream:
/// VLAN tag, priority, and egress queue.
struct StreamRule {
  std::string dst;
  std::uint16_t vlan = 1;  // 1..4094
  std::uint8_t pcp = 0;    // 0..7
  QueueId queue = 1;
  StreamId stream;
};

struct GatewayConfig {
  std::vector<StreamRule> rules;
  GateSchedule schedule;
  std::uint64_t link_rate_bps = 100'000'000;
  std::uint32_t mtu = kDefaultMtu;
  QueueId best_effort_queue = 0;
  std::optional<std::size_t> queue_capacity;  // per queue; nullopt = unbounded
};

enum class ConfigErrorKind {
  EmptySchedule,
  ZeroBasePeriod,
  ZeroWindowDuration,
  WindowExceedsBasePeriod,
  OverlappingWindows,
  UnsortedWindows,
  QueueNeverOpen,
  MtuNeverFits,
  RuleOnBestEffortQueue,
  DuplicateStreamId,
  BadRuleField,
};

struct ConfigIssue {
  ConfigErrorKind kind;
  std::string detail;
};

const char* config_error_name(ConfigErrorKind kind);

/// Strict-fail validation of a gateway configuration; returns every
/// violation found, empty list means accepted.
std::vector<ConfigIssue> validate(const GatewayConfig& config);

/// Tags a frame per the first matching rule, or marks it best-effort.
Frame classify(const GatewayConfig& config, Frame frame);

/// The TSN gateway: instantaneous non-TSN ingress, stream translation, and a
/// TAS-shaped TSN egress port.
class Gateway {
 public:
  explicit Gateway(GatewayConfig config)
      : config_(std::move(config)),
        port_(config_.schedule, config_.link_rate_bps, config_.queue_capacity) {}

  const GatewayConfig& config() const { return config_; }
  TasPort& port() { return port_; }
  const TasPort& port() const { return port_; }

  struct IngestResult {
    Frame frame;  // classified copy
    bool queued;  // false => tail-dropped
  };

  /// Stamps the ingress tap, classifies, and enqueues (tail-drop on a full
  /// queue, counted not raised).
  IngestResult ingest(Frame frame, Instant t);

  std::uint64_t ingested() const { return ingested_; }
  std::uint64_t dropped() const { return port_.dropped(); }

 private:
  GatewayConfig config_;
  TasPort port_;
  std::uint64_t ingested_ = 0;
};

}  // namespace tsnsim
