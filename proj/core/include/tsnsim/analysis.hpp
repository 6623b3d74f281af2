#pragma once

#include <cstdint>
#include <vector>

#include "tsnsim/sim.hpp"
#include "tsnsim/tas.hpp"
#include "tsnsim/time.hpp"

namespace tsnsim {

/// Determinism metrics over the per-cycle anchor sequence of one tap.
struct PeriodicityReport {
  Duration expected_period;
  std::uint64_t n_cycles = 0;  // anchors observed
  std::uint64_t missing_cycles = 0;
  bool has_stats = false;  // false when fewer than two anchors
  Duration mean_interarrival;
  Duration min_interarrival;
  Duration max_interarrival;
  Duration jitter;  // max - min
  double cv = 0.0;  // stddev / mean
  double fraction_within_tol = 0.0;
};

struct CycleAnchors {
  std::vector<Instant> anchors;  // first record of each non-empty cycle bucket
  std::uint64_t missing = 0;     // empty buckets between first and last anchor
};

/// Groups records into base-period buckets and keeps the first record of
/// each. Buckets are centered on the first record (it sits mid-bucket), so
/// bounded delay jitter up to half a period never straddles a boundary.
CycleAnchors cycle_anchors(const std::vector<CaptureRecord>& records, Duration base_period);

PeriodicityReport periodicity(const CycleAnchors& anchors, Duration expected, Duration tol);

/// Sequence numbers present at tap A but absent at tap B, in order.
std::vector<std::uint64_t> detect_missing(const std::vector<CaptureRecord>& at_a,
                                          const std::vector<CaptureRecord>& at_b);

enum class FeasibilityClass { Deterministic, Marginal, Infeasible };

const char* feasibility_class_name(FeasibilityClass c);

/// Global-schedule margin verdict: margin = base_period - window - d_max.
/// Infeasible when margin <= 0, Deterministic when margin > d_max,
/// Marginal in between. Multi-window schedules take the worst window.
struct FeasibilityVerdict {
  std::int64_t margin_ns = 0;
  FeasibilityClass verdict = FeasibilityClass::Infeasible;
};

FeasibilityVerdict feasibility(const GateSchedule& schedule, Duration d_max);

/// cv below which an empirical capture counts as deterministic.
inline constexpr double kDeterministicCvThreshold = 0.05;

}  // namespace tsnsim
