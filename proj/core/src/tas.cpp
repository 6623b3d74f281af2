#include "tsnsim/tas.hpp"

#include <algorithm>
#include <cassert>

namespace tsnsim {

Duration GateSchedule::phase(Instant t) const {
  const std::uint64_t base = base_period.ticks;
  assert(base > 0);
  if (t.ticks >= epoch.ticks) {
    return {(t.ticks - epoch.ticks) % base};
  }
  // t before the epoch: walk the cycle backwards.
  const std::uint64_t behind = (epoch.ticks - t.ticks) % base;
  return {behind == 0 ? 0 : base - behind};
}

GateState gate_state(const GateSchedule& schedule, QueueId queue, Instant t) {
  const Duration p = schedule.phase(t);
  for (const GateWindow& w : schedule.windows) {
    if (w.opens(queue) && p >= w.offset && p < w.offset + w.duration) return GateState::Open;
  }
  return GateState::Closed;
}

bool fits_before_close(const GateSchedule& schedule, QueueId queue, Instant t, Duration tx_time) {
  const Duration p = schedule.phase(t);
  for (const GateWindow& w : schedule.windows) {
    if (w.opens(queue) && p >= w.offset && p < w.offset + w.duration) {
      return p + tx_time <= w.offset + w.duration;
    }
  }
  assert(false && "fits_before_close called with gate closed");
  return false;
}

std::optional<Instant> next_transmit_instant(const GateSchedule& schedule, QueueId queue,
                                             Instant t, Duration tx_time) {
  // Work in phase space relative to t's cycle; avoids instant arithmetic that
  // could underflow when t precedes the epoch.
  const std::uint64_t base = schedule.base_period.ticks;
  const std::uint64_t p = schedule.phase(t).ticks;
  std::optional<Instant> best;
  for (int cycle = 0; cycle < 3; ++cycle) {
    for (const GateWindow& w : schedule.windows) {
      if (!w.opens(queue)) continue;
      const std::uint64_t open = w.offset.ticks + static_cast<std::uint64_t>(cycle) * base;
      const std::uint64_t close = open + w.duration.ticks;
      const std::uint64_t candidate = std::max(p, open);
      if (candidate < close && candidate + tx_time.ticks <= close) {
        const Instant at{t.ticks + (candidate - p)};
        if (!best || at < *best) best = at;
      }
    }
  }
  return best;  // nullopt: fits in no window for this queue
}

bool TasPort::enqueue(QueueId q, Frame frame) {
  auto& queue = queues_[q];
  if (queue_capacity_ && queue.size() >= *queue_capacity_) {
    ++dropped_;
    return false;
  }
  queue.push_back(std::move(frame));
  return true;
}

std::optional<std::pair<Frame, Instant>> TasPort::dequeue_step(Instant t) {
  for (int q = kNumQueues - 1; q >= 0; --q) {  // strict priority, highest first
    auto& queue = queues_[q];
    if (queue.empty()) continue;
    const QueueId qid = static_cast<QueueId>(q);
    if (gate_state(schedule_, qid, t) != GateState::Open) continue;
    if (!fits_before_close(schedule_, qid, t, tx_time(queue.front()))) continue;
    Frame f = std::move(queue.front());
    queue.pop_front();
    const Instant complete = t + tx_time(f);
    return std::make_pair(std::move(f), complete);
  }
  return std::nullopt;
}

std::optional<Instant> TasPort::next_eligible_instant(Instant t) const {
  std::optional<Instant> earliest;
  for (std::size_t q = 0; q < kNumQueues; ++q) {
    if (queues_[q].empty()) continue;
    const auto cand = next_transmit_instant(schedule_, static_cast<QueueId>(q), t,
                                            tx_time(queues_[q].front()));
    if (cand && (!earliest || *cand < *earliest)) earliest = cand;
  }
  return earliest;
}

bool TasPort::empty() const {
  for (const auto& q : queues_)
    if (!q.empty()) return false;
  return true;
}

std::size_t TasPort::queued_frames() const {
  std::size_t n = 0;
  for (const auto& q : queues_) n += q.size();
  return n;
}

}  // namespace tsnsim
