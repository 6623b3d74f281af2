#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "tsnsim/frame.hpp"
#include "tsnsim/rng.hpp"
#include "tsnsim/time.hpp"

namespace tsnsim {

enum class SlotType { Downlink, Special, Uplink };

/// TDD slot pattern. Default is the uplink-centric 10-slot cycle with
/// 0.5 ms slots (30 kHz numerology): D D D D D S U U U U.
struct TddConfig {
  Duration slot_duration = duration_from_micros(500);
  std::vector<SlotType> pattern;  // cyclic; must contain >= 1 uplink slot

  static TddConfig uplink_centric_default();
};

/// Earliest t' >= t inside an uplink slot; t itself if already in one.
Instant next_uplink_opportunity(const TddConfig& tdd, Instant t);

struct ConstantDelay {
  Duration value;
};

struct UniformBoundedDelay {
  Duration min, max;
};

/// Lognormal conditioned on [min, max], with the location parameter fitted
/// numerically so the truncated mean hits target_mean. A heavy right tail is
/// the only shape compatible with a measured max far above the mean.
struct TruncatedLognormalDelay {
  Duration min, max, target_mean;
  double mu = 0.0;     // fitted, log-nanosecond scale
  double sigma = 1.0;  // shape

  static TruncatedLognormalDelay fit(Duration min, Duration max, Duration target_mean,
                                     double sigma = 1.0);
};

/// Per-frame uplink delay law, optionally quantized to TDD uplink slots: the
/// send instant is first aligned to the next uplink opportunity, then the
/// inner sample is added.
struct DelayModel {
  std::variant<ConstantDelay, UniformBoundedDelay, TruncatedLognormalDelay> law =
      ConstantDelay{Duration{0}};
  std::optional<TddConfig> tdd;

  Duration min_delay() const;
  Duration max_delay() const;  // excluding TDD alignment
};

Duration sample_delay(const DelayModel& model, Instant t_send, Rng& rng);

enum class OverflowPolicy { Drop, Defer };

struct BridgeConfig {
  DelayModel delay;
  std::optional<std::uint32_t> in_flight_capacity;
  OverflowPolicy overflow_policy = OverflowPolicy::Drop;
  Duration defer_extra;       // added on top of the sampled delay when deferring
  bool fifo_enforced = false; // clamp deliveries to non-decreasing order
};

struct Delivered {
  Instant core_arrival;
  bool deferred = false;  // deferred frames hold no in-flight slot
};
struct Dropped {};
using TransitResult = std::variant<Delivered, Dropped>;

/// Black-box 5G bridge: admits frames up to the in-flight capacity, applies
/// the delay law, and drops or defers the rest.
class Bridge {
 public:
  Bridge(BridgeConfig config, std::uint64_t rng_seed)
      : config_(std::move(config)), rng_(rng_seed) {}

  const BridgeConfig& config() const { return config_; }

  TransitResult transit(Instant t_send);

  /// Must be called when a previously admitted frame reaches the core.
  void complete_delivery() { --in_flight_; }

  std::uint32_t in_flight() const { return in_flight_; }
  std::uint64_t dropped() const { return dropped_; }

 private:
  BridgeConfig config_;
  Rng rng_;
  std::uint32_t in_flight_ = 0;
  std::uint64_t dropped_ = 0;
  std::optional<Instant> last_arrival_;  // fifo_enforced clamp
};

}  // namespace tsnsim
