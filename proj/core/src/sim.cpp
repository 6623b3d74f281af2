#include "tsnsim/sim.hpp"

#include <queue>

namespace tsnsim {

std::vector<std::pair<Instant, std::uint32_t>> generate(const TrafficSpec& spec, Rng& rng) {
  std::vector<std::pair<Instant, std::uint32_t>> out;
  if (const auto* p = std::get_if<PeriodicTraffic>(&spec.pattern)) {
    if (p->period.ticks == 0 && p->count > 1)
      throw ConfigurationError("periodic traffic needs period > 0");
    for (std::uint64_t k = 0; k < p->count; ++k) {
      out.emplace_back(Instant{p->phase.ticks + k * p->period.ticks}, p->frame_size);
    }
  } else {
    const auto& c = std::get<CbrTraffic>(spec.pattern);
    if (c.bitrate_bps == 0) throw ConfigurationError("cbr traffic needs bitrate > 0");
    for (std::uint64_t k = 0;; ++k) {
      const unsigned __int128 bits =
          static_cast<unsigned __int128>(k) * c.frame_size * 8 * 1'000'000'000;
      const std::uint64_t nominal = static_cast<std::uint64_t>(bits / c.bitrate_bps);
      if (nominal >= c.duration.ticks) break;
      std::uint64_t t = nominal;
      if (c.jitter.ticks > 0) {
        const std::uint64_t wobble = rng.uniform_u64(0, 2 * c.jitter.ticks);
        t = t + wobble >= c.jitter.ticks ? t + wobble - c.jitter.ticks : 0;
      }
      out.emplace_back(Instant{t}, c.frame_size);
    }
  }
  return out;
}

namespace {

struct EventAfter {
  bool operator()(const Event& a, const Event& b) const {
    if (a.at != b.at) return a.at > b.at;
    return a.seq > b.seq;
  }
};

class Kernel {
 public:
  Kernel(const GatewayConfig& gateway, const BridgeConfig& bridge, const TrafficSpec& traffic,
         Duration horizon, std::uint64_t seed)
      : gateway_(gateway),
        bridge_(bridge, seed ^ 0x9E3779B97F4A7C15ull),
        traffic_(traffic),
        horizon_(horizon),
        rng_(seed) {}

  RunOutput run() {
    schedule(Instant{0}, EventAction::GeneratorTick, {});
    while (!events_.empty() && events_.top().at.ticks <= horizon_.ticks) {
      Event ev = events_.top();
      events_.pop();
      now_ = ev.at;
      dispatch(ev);
    }
    out_.counters.dropped_gateway = gateway_.dropped();
    out_.counters.queued_at_end = gateway_.port().queued_frames();
    out_.counters.in_flight_at_end = pending_deliveries_;
    return std::move(out_);
  }

 private:
  void schedule(Instant at, EventAction action, Frame frame, bool deferred = false) {
    events_.push(Event{at, next_seq_++, action, std::move(frame), deferred});
  }

  void dispatch(Event& ev) {
    switch (ev.action) {
      case EventAction::GeneratorTick: {
        for (auto& [at, size] : generate(traffic_, rng_)) {
          Frame f;
          f.seq = next_frame_seq_++;
          f.size_bytes = size;
          f.dst = traffic_.dst;
          f.created_at = at;
          schedule(at, EventAction::FrameArrival, std::move(f));
        }
        break;
      }
      case EventAction::FrameArrival: {
        ++out_.counters.generated;
        auto res = gateway_.ingest(std::move(ev.frame), now_);
        record(ObservationPoint::GatewayIngress, res.frame, now_);
        if (res.queued) try_dequeue();
        break;
      }
      case EventAction::GateEdge:
        if (wake_at_ && *wake_at_ == now_) wake_at_.reset();
        try_dequeue();
        break;
      case EventAction::EgressComplete:
        try_dequeue();
        break;
      case EventAction::BridgeDelivery: {
        ev.frame.tap(ObservationPoint::CoreArrival) = now_;
        record(ObservationPoint::CoreArrival, ev.frame, now_);
        ++out_.counters.delivered;
        --pending_deliveries_;
        if (!ev.deferred_delivery) bridge_.complete_delivery();
        break;
      }
    }
  }

  void try_dequeue() {
    if (now_ < busy_until_) return;  // EgressComplete will retry
    auto picked = gateway_.port().dequeue_step(now_);
    if (!picked) {
      const auto cand = gateway_.port().next_eligible_instant(now_);
      if (cand && (!wake_at_ || *cand < *wake_at_)) {
        wake_at_ = *cand;
        schedule(*cand, EventAction::GateEdge, {});
      }
      return;
    }
    auto& [frame, complete] = *picked;
    frame.tap(ObservationPoint::GatewayEgress) = now_;
    record(ObservationPoint::GatewayEgress, frame, now_);
    ++out_.counters.egressed;
    busy_until_ = complete;
    schedule(complete, EventAction::EgressComplete, {});

    // Hand off to the bridge at egress start; the delay law covers the hop.
    TransitResult res = bridge_.transit(now_);
    if (const auto* d = std::get_if<Delivered>(&res)) {
      ++pending_deliveries_;
      schedule(d->core_arrival, EventAction::BridgeDelivery, std::move(frame), d->deferred);
    } else {
      ++out_.counters.dropped_bridge;
    }
  }

  void record(ObservationPoint p, const Frame& f, Instant t) {
    out_.captures.at(p).push_back(
        CaptureRecord{f.seq, f.stream.value_or(""), t, f.size_bytes});
  }

  Gateway gateway_;
  Bridge bridge_;
  TrafficSpec traffic_;
  Duration horizon_;
  Rng rng_;
  std::priority_queue<Event, std::vector<Event>, EventAfter> events_;
  std::uint64_t next_seq_ = 0;
  std::uint64_t next_frame_seq_ = 0;
  Instant now_;
  Instant busy_until_;
  std::optional<Instant> wake_at_;
  std::uint64_t pending_deliveries_ = 0;
  RunOutput out_;
};

}  // namespace

RunOutput simulate(const GatewayConfig& gateway, const BridgeConfig& bridge,
                   const TrafficSpec& traffic, Duration horizon, std::uint64_t seed) {
  if (horizon.ticks > kMaxHorizonTicks)
    throw ConfigurationError("horizon exceeds 2^63 ns");
  return Kernel(gateway, bridge, traffic, horizon, seed).run();
}

}  // namespace tsnsim
