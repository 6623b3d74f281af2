#include "tsnsim/gateway.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace tsnsim {

const char* config_error_name(ConfigErrorKind kind) {
  switch (kind) {
    case ConfigErrorKind::EmptySchedule: return "EmptySchedule";
    case ConfigErrorKind::ZeroBasePeriod: return "ZeroBasePeriod";
    case ConfigErrorKind::ZeroWindowDuration: return "ZeroWindowDuration";
    case ConfigErrorKind::WindowExceedsBasePeriod: return "WindowExceedsBasePeriod";
    case ConfigErrorKind::OverlappingWindows: return "OverlappingWindows";
    case ConfigErrorKind::UnsortedWindows: return "UnsortedWindows";
    case ConfigErrorKind::QueueNeverOpen: return "QueueNeverOpen";
    case ConfigErrorKind::MtuNeverFits: return "MtuNeverFits";
    case ConfigErrorKind::RuleOnBestEffortQueue: return "RuleOnBestEffortQueue";
    case ConfigErrorKind::DuplicateStreamId: return "DuplicateStreamId";
    case ConfigErrorKind::BadRuleField: return "BadRuleField";
  }
  return "Unknown";
}

std::vector<ConfigIssue> validate(const GatewayConfig& config) {
  std::vector<ConfigIssue> issues;
  const GateSchedule& s = config.schedule;

  if (s.base_period.ticks == 0) {
    issues.push_back({ConfigErrorKind::ZeroBasePeriod, "base period must be > 0"});
    return issues;  // window math below needs a base period
  }
  if (s.windows.empty())
    issues.push_back({ConfigErrorKind::EmptySchedule, "schedule has no windows"});

  for (std::size_t i = 0; i < s.windows.size(); ++i) {
    const GateWindow& w = s.windows[i];
    std::ostringstream where;
    where << "window " << i;
    if (w.duration.ticks == 0)
      issues.push_back({ConfigErrorKind::ZeroWindowDuration, where.str()});
    if (w.offset + w.duration > s.base_period)
      issues.push_back({ConfigErrorKind::WindowExceedsBasePeriod, where.str()});
    if (i > 0) {
      const GateWindow& prev = s.windows[i - 1];
      if (w.offset < prev.offset)
        issues.push_back({ConfigErrorKind::UnsortedWindows, where.str()});
      else if (prev.offset + prev.duration > w.offset)
        issues.push_back({ConfigErrorKind::OverlappingWindows, where.str()});
    }
  }

  std::set<StreamId> seen;
  for (const StreamRule& r : config.rules) {
    std::ostringstream where;
    where << "rule for dst " << r.dst;
    if (r.queue == config.best_effort_queue)
      issues.push_back({ConfigErrorKind::RuleOnBestEffortQueue, where.str()});
    if (r.queue >= kNumQueues || r.pcp > 7 || r.vlan < 1 || r.vlan > 4094)
      issues.push_back({ConfigErrorKind::BadRuleField, where.str()});
    if (!seen.insert(r.stream).second)
      issues.push_back({ConfigErrorKind::DuplicateStreamId, r.stream});

    if (r.queue < kNumQueues) {
      bool opens = false;
      Duration longest{0};
      for (const GateWindow& w : s.windows) {
        if (!w.opens(r.queue)) continue;
        opens = true;
        longest = std::max(longest, w.duration);
      }
      if (!opens) {
        std::ostringstream msg;
        msg << "QueueNeverOpen(" << int(r.queue) << ")";
        issues.push_back({ConfigErrorKind::QueueNeverOpen, msg.str()});
      } else if (serialization_time(config.mtu, config.link_rate_bps) > longest) {
        issues.push_back({ConfigErrorKind::MtuNeverFits, where.str()});
      }
    }
  }
  return issues;
}

Frame classify(const GatewayConfig& config, Frame frame) {
  for (const StreamRule& r : config.rules) {  // first match wins
    if (frame.dst == r.dst) {
      frame.stream = r.stream;
      frame.pcp = r.pcp;
      frame.vlan = r.vlan;
      frame.queue = r.queue;
      return frame;
    }
  }
  frame.stream.reset();
  frame.pcp.reset();
  frame.vlan.reset();
  frame.queue = config.best_effort_queue;
  return frame;
}

Gateway::IngestResult Gateway::ingest(Frame frame, Instant t) {
  ++ingested_;
  frame.tap(ObservationPoint::GatewayIngress) = t;
  Frame tagged = classify(config_, std::move(frame));
  Frame copy = tagged;
  const bool queued = port_.enqueue(*tagged.queue, std::move(tagged));
  return {std::move(copy), queued};
}

}  // namespace tsnsim
