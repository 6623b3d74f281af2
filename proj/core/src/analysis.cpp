#include "tsnsim/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace tsnsim {

CycleAnchors cycle_anchors(const std::vector<CaptureRecord>& records, Duration base_period) {
  CycleAnchors out;
  if (records.empty() || base_period.ticks == 0) return out;
  const std::uint64_t base = base_period.ticks;
  const std::uint64_t t0 = records.front().t.ticks;
  // Buckets are centered on the first record: records within half a period of
  // t0 + k*base land in bucket k.
  std::int64_t prev_bucket = -1;
  for (const CaptureRecord& r : records) {
    const std::uint64_t bucket = (r.t.ticks - t0 + base / 2) / base;
    if (static_cast<std::int64_t>(bucket) == prev_bucket) continue;  // not first in bucket
    if (prev_bucket >= 0) out.missing += bucket - prev_bucket - 1;
    out.anchors.push_back(r.t);
    prev_bucket = static_cast<std::int64_t>(bucket);
  }
  return out;
}

PeriodicityReport periodicity(const CycleAnchors& anchors, Duration expected, Duration tol) {
  PeriodicityReport rep;
  rep.expected_period = expected;
  rep.n_cycles = anchors.anchors.size();
  rep.missing_cycles = anchors.missing;
  if (anchors.anchors.size() < 2) return rep;  // statistics absent

  std::vector<std::uint64_t> intervals;
  intervals.reserve(anchors.anchors.size() - 1);
  for (std::size_t i = 1; i < anchors.anchors.size(); ++i)
    intervals.push_back(anchors.anchors[i].ticks - anchors.anchors[i - 1].ticks);

  const std::uint64_t lo = *std::min_element(intervals.begin(), intervals.end());
  const std::uint64_t hi = *std::max_element(intervals.begin(), intervals.end());
  double sum = 0.0;
  std::uint64_t in_tol = 0;
  for (std::uint64_t iv : intervals) {
    sum += static_cast<double>(iv);
    const std::uint64_t dev =
        iv >= expected.ticks ? iv - expected.ticks : expected.ticks - iv;
    if (dev <= tol.ticks) ++in_tol;
  }
  const double mean = sum / static_cast<double>(intervals.size());
  double var = 0.0;
  for (std::uint64_t iv : intervals) {
    const double d = static_cast<double>(iv) - mean;
    var += d * d;
  }
  var /= static_cast<double>(intervals.size());

  rep.has_stats = true;
  rep.min_interarrival = Duration{lo};
  rep.max_interarrival = Duration{hi};
  rep.jitter = Duration{hi - lo};
  rep.mean_interarrival = Duration{static_cast<std::uint64_t>(std::llround(mean))};
  rep.cv = mean > 0.0 ? std::sqrt(var) / mean : 0.0;
  rep.fraction_within_tol =
      static_cast<double>(in_tol) / static_cast<double>(intervals.size());
  return rep;
}

std::vector<std::uint64_t> detect_missing(const std::vector<CaptureRecord>& at_a,
                                          const std::vector<CaptureRecord>& at_b) {
  std::set<std::uint64_t> present;
  for (const CaptureRecord& r : at_b) present.insert(r.seq);
  std::vector<std::uint64_t> missing;
  for (const CaptureRecord& r : at_a)
    if (!present.count(r.seq)) missing.push_back(r.seq);
  return missing;
}

const char* feasibility_class_name(FeasibilityClass c) {
  switch (c) {
    case FeasibilityClass::Deterministic: return "Deterministic";
    case FeasibilityClass::Marginal: return "Marginal";
    case FeasibilityClass::Infeasible: return "Infeasible";
  }
  return "Unknown";
}

FeasibilityVerdict feasibility(const GateSchedule& schedule, Duration d_max) {
  // Worst (longest) window dominates: it leaves the least margin.
  Duration widest{0};
  for (const GateWindow& w : schedule.windows) widest = std::max(widest, w.duration);
  const auto base = static_cast<std::int64_t>(schedule.base_period.ticks);
  const std::int64_t margin =
      base - static_cast<std::int64_t>(widest.ticks) - static_cast<std::int64_t>(d_max.ticks);
  FeasibilityVerdict v;
  v.margin_ns = margin;
  if (margin <= 0)
    v.verdict = FeasibilityClass::Infeasible;
  else if (margin > static_cast<std::int64_t>(d_max.ticks))
    v.verdict = FeasibilityClass::Deterministic;
  else
    v.verdict = FeasibilityClass::Marginal;
  return v;
}

}  // namespace tsnsim
