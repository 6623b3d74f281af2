#pragma once

#include <array>
#include <string>
#include <vector>

#include "tsnsim/analysis.hpp"
#include "tsnsim/capture_io.hpp"
#include "tsnsim/scenario.hpp"
#include "tsnsim/sim.hpp"

namespace tsnsim {

/// Scenario-level validation: gateway config plus traffic sanity.
std::vector<ConfigIssue> validate_scenario(const ScenarioConfig& cfg);

struct ScenarioResult {
  RunOutput run;
  std::array<PeriodicityReport, kNumObservationPoints> reports;
  FeasibilityVerdict verdict;
  std::vector<std::uint64_t> missing_seqs;  // egressed but never at the core
  std::string capture_csv;
  std::string report_csv;
  std::string summary;  // human-readable, one line per tap
};

/// Runs a validated scenario and derives all reports. Pure function of
/// (config, seed); identical inputs give byte-identical CSV strings.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

struct SweepRow {
  Duration base_period;
  Duration window;  // widest window after scaling
  bool valid = false;
  std::string error;  // first validation issue when invalid
  FeasibilityVerdict verdict;
  double cv = 0.0;
  double fraction_within_tol = 0.0;
  std::uint64_t missing_count = 0;
  std::uint64_t delivered = 0;
  std::uint64_t dropped = 0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::string csv;
};

/// One independent seeded run per base period. Windows scale proportionally
/// with the base period unless fixed_window is set. Invalid derived configs
/// are marked and skipped; the others proceed. With parallel=true rows run
/// concurrently; output is identical to the sequential run.
SweepResult sweep_scenarios(const ScenarioConfig& base_cfg, const std::vector<Duration>& bases,
                            bool fixed_window, bool parallel);

}  // namespace tsnsim
