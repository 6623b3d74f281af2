#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "tsnsim/runner.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;

int write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write " << path << "\n";
    return kExitParse;
  }
  out << content;
  return kExitOk;
}

int cmd_run(const std::string& config_path, std::optional<std::uint64_t> seed,
            const std::string& out_dir) {
  tsnsim::ScenarioConfig cfg;
  try {
    cfg = tsnsim::load_scenario_file(config_path);
  } catch (const tsnsim::ParseError& e) {
    std::cerr << "parse error in " << config_path << ": " << e.what() << "\n";
    return kExitParse;
  }
  if (seed) cfg.seed = *seed;
  const auto issues = tsnsim::validate_scenario(cfg);
  if (!issues.empty()) {
    std::cerr << "validation failed for " << config_path << ":\n";
    for (const auto& issue : issues)
      std::cerr << "  " << tsnsim::config_error_name(issue.kind) << ": " << issue.detail << "\n";
    return kExitValidation;
  }
  const tsnsim::ScenarioResult res = tsnsim::run_scenario(cfg);
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  if (int rc = write_file(dir / (cfg.name + ".capture.csv"), res.capture_csv)) return rc;
  if (int rc = write_file(dir / (cfg.name + ".report.csv"), res.report_csv)) return rc;
  std::cout << res.summary;
  return kExitOk;
}

int cmd_analyze(const std::string& capture_path, const std::string& period,
                const std::string& tol) {
  tsnsim::CaptureSet captures;
  tsnsim::Duration expected, tolerance;
  try {
    captures = tsnsim::load_capture_file(capture_path);
    expected = tsnsim::parse_duration(period);
    tolerance = tsnsim::parse_duration(tol);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  std::cout << "point,n_cycles,missing_cycles,mean_ns,jitter_ns,cv,fraction_within_tol\n";
  for (int p = 0; p < static_cast<int>(tsnsim::kNumObservationPoints); ++p) {
    const auto point = static_cast<tsnsim::ObservationPoint>(p);
    const auto anchors = tsnsim::cycle_anchors(captures.at(point), expected);
    const auto rep = tsnsim::periodicity(anchors, expected, tolerance);
    std::cout << tsnsim::observation_point_name(point) << ',' << rep.n_cycles << ','
              << rep.missing_cycles << ',';
    if (rep.has_stats)
      std::cout << rep.mean_interarrival.ticks << ',' << rep.jitter.ticks << ',' << rep.cv
                << ',' << rep.fraction_within_tol;
    else
      std::cout << ",,,";
    std::cout << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const std::string& config_path, const std::vector<std::string>& bases,
              bool fixed_window, bool sequential, std::optional<std::uint64_t> seed,
              const std::string& out_dir) {
  tsnsim::ScenarioConfig cfg;
  std::vector<tsnsim::Duration> base_list;
  try {
    cfg = tsnsim::load_scenario_file(config_path);
    for (const auto& b : bases) base_list.push_back(tsnsim::parse_duration(b));
  } catch (const tsnsim::ParseError& e) {
    std::cerr << "parse error in " << config_path << ": " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParse;
  }
  if (seed) cfg.seed = *seed;
  const auto issues = tsnsim::validate_scenario(cfg);
  if (!issues.empty()) {
    std::cerr << "validation failed for " << config_path << ":\n";
    for (const auto& issue : issues)
      std::cerr << "  " << tsnsim::config_error_name(issue.kind) << ": " << issue.detail << "\n";
    return kExitValidation;
  }
  const auto sweep = tsnsim::sweep_scenarios(cfg, base_list, fixed_window, !sequential);
  const std::filesystem::path dir(out_dir);
  std::filesystem::create_directories(dir);
  if (int rc = write_file(dir / (cfg.name + ".sweep.csv"), sweep.csv)) return rc;
  std::cout << sweep.csv;
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid TSN/5G determinism simulator"};
  app.require_subcommand(1);

  std::string config_path, capture_path, out_dir = ".";
  std::string period, tol = "0ns";
  std::vector<std::string> bases;
  bool fixed_window = false, sequential = false;
  std::optional<std::uint64_t> seed;

  auto* run = app.add_subcommand("run", "Run one scenario and write capture/report CSVs");
  run->add_option("config", config_path, "Scenario config file")->required();
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--out-dir", out_dir, "Output directory");

  auto* analyze = app.add_subcommand("analyze", "Periodicity report over a capture CSV");
  analyze->add_option("capture", capture_path, "Capture CSV file")->required();
  analyze->add_option("--period", period, "Expected period, e.g. 200ms")->required();
  analyze->add_option("--tol", tol, "Tolerance for fraction_within_tol");

  auto* sweep = app.add_subcommand("sweep", "Run one simulation per base period");
  sweep->add_option("config", config_path, "Base scenario config file")->required();
  sweep->add_option("--bases", bases, "Base periods, e.g. 200ms 100ms 50ms 40ms")->required();
  sweep->add_flag("--fixed-window", fixed_window, "Keep windows fixed instead of scaling");
  sweep->add_flag("--sequential", sequential, "Disable parallel row execution");
  sweep->add_option("--seed", seed, "Override the scenario seed");
  sweep->add_option("--out-dir", out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config_path, seed, out_dir);
  if (analyze->parsed()) return cmd_analyze(capture_path, period, tol);
  return cmd_sweep(config_path, bases, fixed_window, sequential, seed, out_dir);
}
