#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

#include "tsnsim/frame.hpp"
#include "tsnsim/time.hpp"

namespace tsnsim {

/// One 802.1Qbv gate control list entry: during [offset, offset+duration)
/// within each cycle, the gates of the queues in `open_queues` are open.
struct GateWindow {
  Duration offset;
  Duration duration;
  std::uint8_t open_queues = 0;  // bit i => queue i open

  bool opens(QueueId q) const { return (open_queues >> q) & 1u; }
};

/// Cyclic gate schedule: windows repeat every base_period, phase-referenced
/// to `epoch`. Queues are closed outside every window listing them.
struct GateSchedule {
  Duration base_period;
  std::vector<GateWindow> windows;  // sorted by offset, non-overlapping
  Instant epoch;                    // cycle phase reference

  /// Position of t within the cycle, in [0, base_period).
  Duration phase(Instant t) const;
};

enum class GateState { Open, Closed };

GateState gate_state(const GateSchedule& schedule, QueueId queue, Instant t);

/// Guard-band rule: a transmission starting at t must finish before the
/// current window closes. Caller must ensure the gate is open at t.
bool fits_before_close(const GateSchedule& schedule, QueueId queue, Instant t, Duration tx_time);

/// Earliest t' >= t at which the queue's gate is open with room for a
/// tx_time-long transmission. nullopt if the frame fits in no window of this
/// queue (unschedulable). Searches at most two full cycles.
std::optional<Instant> next_transmit_instant(const GateSchedule& schedule, QueueId queue,
                                             Instant t, Duration tx_time);

/// TAS egress port: 8 FIFO queues gated by a schedule, strict-priority
/// selection (highest queue index first), non-preemptive.
class TasPort {
 public:
  TasPort(GateSchedule schedule, std::uint64_t link_rate_bps,
          std::optional<std::size_t> queue_capacity = std::nullopt)
      : schedule_(std::move(schedule)),
        link_rate_bps_(link_rate_bps),
        queue_capacity_(queue_capacity) {}

  const GateSchedule& schedule() const { return schedule_; }
  std::uint64_t link_rate_bps() const { return link_rate_bps_; }

  /// Returns false (tail drop) if the queue is at capacity.
  bool enqueue(QueueId q, Frame frame);

  /// Transmission selection at instant t. Picks the highest-numbered open
  /// queue whose head fits before its window closes; pops and returns the
  /// frame together with its egress completion instant.
  std::optional<std::pair<Frame, Instant>> dequeue_step(Instant t);

  /// Earliest instant >= t at which any queued head frame could start
  /// transmitting. nullopt when all queues are empty or unschedulable.
  std::optional<Instant> next_eligible_instant(Instant t) const;

  Duration tx_time(const Frame& f) const {
    return serialization_time(f.size_bytes, link_rate_bps_);
  }

  bool empty() const;
  std::size_t queued_frames() const;
  std::uint64_t dropped() const { return dropped_; }

 private:
  GateSchedule schedule_;
  std::uint64_t link_rate_bps_;
  std::optional<std::size_t> queue_capacity_;
  std::array<std::deque<Frame>, kNumQueues> queues_;
  std::uint64_t dropped_ = 0;
};

}  // namespace tsnsim
