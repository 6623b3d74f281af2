#include "tsnsim/runner.hpp"

#include <future>
#include <iomanip>
#include <sstream>

namespace tsnsim {
namespace {

std::uint32_t traffic_frame_size(const TrafficSpec& t) {
  if (const auto* p = std::get_if<PeriodicTraffic>(&t.pattern)) return p->frame_size;
  return std::get<CbrTraffic>(t.pattern).frame_size;
}

std::string format_cv(double cv) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << cv;
  return os.str();
}

std::string format_fraction(double f) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(3) << f;
  return os.str();
}

}  // namespace

std::vector<ConfigIssue> validate_scenario(const ScenarioConfig& cfg) {
  std::vector<ConfigIssue> issues = validate(cfg.gateway);
  const std::uint32_t size = traffic_frame_size(cfg.traffic);
  if (size < kMinFrameBytes || size > cfg.gateway.mtu)
    issues.push_back({ConfigErrorKind::BadRuleField,
                      "traffic frame size " + std::to_string(size) + " outside [64, mtu]"});
  if (cfg.horizon.ticks == 0 || cfg.horizon.ticks > kMaxHorizonTicks)
    issues.push_back({ConfigErrorKind::BadRuleField, "horizon out of range"});
  return issues;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  ScenarioResult res;
  res.run = simulate(cfg.gateway, cfg.bridge, cfg.traffic, cfg.horizon, cfg.seed);
  res.verdict = feasibility(cfg.gateway.schedule, cfg.d_max());

  const Duration expected = cfg.expected_period();
  const Duration tol = cfg.tolerance();
  for (int p = 0; p < static_cast<int>(kNumObservationPoints); ++p) {
    const auto point = static_cast<ObservationPoint>(p);
    const auto anchors = cycle_anchors(res.run.captures.at(point), expected);
    res.reports[p] = periodicity(anchors, expected, tol);
  }
  res.missing_seqs = detect_missing(res.run.captures.at(ObservationPoint::GatewayEgress),
                                    res.run.captures.at(ObservationPoint::CoreArrival));

  res.capture_csv = write_capture_csv(res.run.captures);

  std::ostringstream rep;
  rep << "point,n_cycles,missing_cycles,mean_ns,min_ns,max_ns,jitter_ns,cv,"
         "fraction_within_tol,missing_count,margin_ns,class\n";
  for (int p = 0; p < static_cast<int>(kNumObservationPoints); ++p) {
    const PeriodicityReport& r = res.reports[p];
    rep << observation_point_name(static_cast<ObservationPoint>(p)) << ',' << r.n_cycles << ','
        << r.missing_cycles << ',';
    if (r.has_stats)
      rep << r.mean_interarrival.ticks << ',' << r.min_interarrival.ticks << ','
          << r.max_interarrival.ticks << ',' << r.jitter.ticks << ',' << format_cv(r.cv) << ','
          << format_fraction(r.fraction_within_tol);
    else
      rep << ",,,,,";
    rep << ',' << res.missing_seqs.size() << ',' << res.verdict.margin_ns << ','
        << feasibility_class_name(res.verdict.verdict) << "\n";
  }
  res.report_csv = rep.str();

  const Counters& c = res.run.counters;
  std::ostringstream sum;
  sum << cfg.name << ": generated=" << c.generated << " egressed=" << c.egressed
      << " delivered=" << c.delivered << " dropped_gateway=" << c.dropped_gateway
      << " dropped_bridge=" << c.dropped_bridge << "\n";
  const PeriodicityReport& core = res.reports[static_cast<int>(ObservationPoint::CoreArrival)];
  sum << cfg.name << ": class=" << feasibility_class_name(res.verdict.verdict)
      << ", jitter=" << (core.has_stats ? core.jitter.ticks : 0) << "ns"
      << ", cv=" << format_cv(core.has_stats ? core.cv : 0.0)
      << ", fraction=" << format_fraction(core.has_stats ? core.fraction_within_tol : 0.0)
      << ", missing_count=" << res.missing_seqs.size()
      << ", margin=" << res.verdict.margin_ns << "ns\n";
  res.summary = sum.str();
  return res;
}

SweepResult sweep_scenarios(const ScenarioConfig& base_cfg, const std::vector<Duration>& bases,
                            bool fixed_window, bool parallel) {
  const std::uint64_t base0 = base_cfg.gateway.schedule.base_period.ticks;

  auto derive = [&](Duration base, std::size_t index) {
    ScenarioConfig cfg = base_cfg;
    cfg.gateway.schedule.base_period = base;
    if (!fixed_window && base0 > 0) {
      for (GateWindow& w : cfg.gateway.schedule.windows) {
        w.offset.ticks = static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(w.offset.ticks) * base.ticks / base0);
        w.duration.ticks = static_cast<std::uint64_t>(
            static_cast<unsigned __int128>(w.duration.ticks) * base.ticks / base0);
      }
    }
    cfg.analysis.expected_period.reset();  // follow the swept base period
    cfg.seed = base_cfg.seed + index;
    return cfg;
  };

  auto run_row = [&](Duration base, std::size_t index) {
    SweepRow row;
    row.base_period = base;
    const ScenarioConfig cfg = derive(base, index);
    for (const GateWindow& w : cfg.gateway.schedule.windows)
      row.window = std::max(row.window, w.duration);
    const auto issues = validate_scenario(cfg);
    if (!issues.empty()) {
      row.valid = false;
      row.error = std::string(config_error_name(issues.front().kind)) + ": " +
                  issues.front().detail;
      return row;
    }
    const ScenarioResult r = run_scenario(cfg);
    row.valid = true;
    row.verdict = r.verdict;
    const auto& core = r.reports[static_cast<int>(ObservationPoint::CoreArrival)];
    row.cv = core.has_stats ? core.cv : 0.0;
    row.fraction_within_tol = core.has_stats ? core.fraction_within_tol : 0.0;
    row.missing_count = r.missing_seqs.size();
    row.delivered = r.run.counters.delivered;
    row.dropped = r.run.counters.dropped_gateway + r.run.counters.dropped_bridge;
    return row;
  };

  SweepResult out;
  out.rows.resize(bases.size());
  if (parallel) {
    std::vector<std::future<SweepRow>> futures;
    futures.reserve(bases.size());
    for (std::size_t i = 0; i < bases.size(); ++i)
      futures.push_back(std::async(std::launch::async, run_row, bases[i], i));
    for (std::size_t i = 0; i < bases.size(); ++i) out.rows[i] = futures[i].get();
  } else {
    for (std::size_t i = 0; i < bases.size(); ++i) out.rows[i] = run_row(bases[i], i);
  }

  std::ostringstream csv;
  csv << "base_ns,window_ns,valid,margin_ns,class,cv,fraction_within_tol,missing_count,"
         "delivered,dropped,error\n";
  for (const SweepRow& r : out.rows) {
    csv << r.base_period.ticks << ',' << r.window.ticks << ',' << (r.valid ? 1 : 0) << ',';
    if (r.valid)
      csv << r.verdict.margin_ns << ',' << feasibility_class_name(r.verdict.verdict) << ','
          << format_cv(r.cv) << ',' << format_fraction(r.fraction_within_tol) << ','
          << r.missing_count << ',' << r.delivered << ',' << r.dropped << ',';
    else
      csv << ",,,,,,," << r.error;
    csv << "\n";
  }
  out.csv = csv.str();
  return out;
}

}  // namespace tsnsim
