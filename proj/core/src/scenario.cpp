#include "tsnsim/scenario.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

namespace tsnsim {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_ws(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream iss(s);
  std::string tok;
  while (iss >> tok) out.push_back(tok);
  return out;
}

std::uint64_t parse_u64(const std::string& s, int line, const std::string& key) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw ParseError(line, key + ": expected unsigned integer, got '" + s + "'");
  return v;
}

Duration parse_duration_at(const std::string& tok, int line, const std::string& key) {
  try {
    return parse_duration(tok);
  } catch (const std::exception& e) {
    throw ParseError(line, key + ": " + e.what());
  }
}

// "key=value" pairs within one structured line (window, rule, delay...).
std::map<std::string, std::string> kv_fields(const std::vector<std::string>& toks,
                                             std::size_t from, int line) {
  std::map<std::string, std::string> out;
  for (std::size_t i = from; i < toks.size(); ++i) {
    const auto eq = toks[i].find('=');
    if (eq == std::string::npos)
      throw ParseError(line, "expected key=value, got '" + toks[i] + "'");
    out[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
  }
  return out;
}

std::string require(std::map<std::string, std::string>& kv, const std::string& key, int line) {
  const auto it = kv.find(key);
  if (it == kv.end()) throw ParseError(line, "missing field '" + key + "'");
  std::string v = it->second;
  kv.erase(it);
  return v;
}

void reject_leftovers(const std::map<std::string, std::string>& kv, int line) {
  if (!kv.empty()) throw ParseError(line, "unknown field '" + kv.begin()->first + "'");
}

std::uint8_t parse_queue_mask(const std::string& s, int line) {
  std::uint8_t mask = 0;
  std::istringstream iss(s);
  std::string part;
  while (std::getline(iss, part, ',')) {
    const std::uint64_t q = parse_u64(part, line, "queues");
    if (q >= kNumQueues) throw ParseError(line, "queue index out of range: " + part);
    mask |= static_cast<std::uint8_t>(1u << q);
  }
  if (mask == 0) throw ParseError(line, "window opens no queues");
  return mask;
}

}  // namespace

Duration parse_duration(const std::string& token) {
  std::size_t unit_pos = 0;
  while (unit_pos < token.size() &&
         (std::isdigit(static_cast<unsigned char>(token[unit_pos])) || token[unit_pos] == '_'))
    ++unit_pos;
  std::string digits;
  for (std::size_t i = 0; i < unit_pos; ++i)
    if (token[i] != '_') digits += token[i];
  const std::string unit = token.substr(unit_pos);
  if (digits.empty())
    throw ConfigurationError("duration '" + token + "' has no numeric part");
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), v);
  if (ec != std::errc{})
    throw ConfigurationError("bad duration value '" + token + "'");
  if (unit == "ns") return duration_from_nanos(v);
  if (unit == "us") return duration_from_micros(v);
  if (unit == "ms") return duration_from_millis(v);
  if (unit == "s") return duration_from_seconds(v);
  throw ConfigurationError("duration '" + token + "' needs a unit suffix (ns/us/ms/s)");
}

ScenarioConfig parse_scenario(const std::string& text) {
  ScenarioConfig cfg;
  cfg.gateway.schedule.base_period = Duration{0};  // must be set explicitly

  std::optional<PeriodicTraffic> periodic;
  std::optional<CbrTraffic> cbr;
  bool traffic_declared = false;

  std::istringstream stream(text);
  std::string raw;
  int line = 0;
  while (std::getline(stream, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    const std::string l = trim(raw);
    if (l.empty()) continue;
    const auto eq = l.find('=');
    if (eq == std::string::npos) throw ParseError(line, "expected 'key = value'");
    const std::string key = trim(l.substr(0, eq));
    const std::string value = trim(l.substr(eq + 1));
    if (value.empty()) throw ParseError(line, key + ": empty value");
    auto toks = split_ws(value);

    if (key == "name") {
      cfg.name = value;
    } else if (key == "seed") {
      cfg.seed = parse_u64(value, line, key);
    } else if (key == "horizon") {
      cfg.horizon = parse_duration_at(value, line, key);
    } else if (key == "traffic.type") {
      traffic_declared = true;
      if (value == "periodic")
        periodic = PeriodicTraffic{};
      else if (value == "cbr")
        cbr = CbrTraffic{};
      else
        throw ParseError(line, "traffic.type must be 'periodic' or 'cbr'");
    } else if (key == "traffic.dst") {
      cfg.traffic.dst = value;
    } else if (key == "traffic.period") {
      if (!periodic) throw ParseError(line, key + " requires traffic.type = periodic first");
      periodic->period = parse_duration_at(value, line, key);
    } else if (key == "traffic.count") {
      if (!periodic) throw ParseError(line, key + " requires traffic.type = periodic first");
      periodic->count = parse_u64(value, line, key);
    } else if (key == "traffic.phase") {
      if (!periodic) throw ParseError(line, key + " requires traffic.type = periodic first");
      periodic->phase = parse_duration_at(value, line, key);
    } else if (key == "traffic.frame_size") {
      const auto size = static_cast<std::uint32_t>(parse_u64(value, line, key));
      if (periodic)
        periodic->frame_size = size;
      else if (cbr)
        cbr->frame_size = size;
      else
        throw ParseError(line, key + " requires traffic.type first");
    } else if (key == "traffic.bitrate_bps") {
      if (!cbr) throw ParseError(line, key + " requires traffic.type = cbr first");
      cbr->bitrate_bps = parse_u64(value, line, key);
    } else if (key == "traffic.duration") {
      if (!cbr) throw ParseError(line, key + " requires traffic.type = cbr first");
      cbr->duration = parse_duration_at(value, line, key);
    } else if (key == "traffic.jitter") {
      if (!cbr) throw ParseError(line, key + " requires traffic.type = cbr first");
      cbr->jitter = parse_duration_at(value, line, key);
    } else if (key == "gateway.link_rate_bps") {
      cfg.gateway.link_rate_bps = parse_u64(value, line, key);
    } else if (key == "gateway.mtu") {
      cfg.gateway.mtu = static_cast<std::uint32_t>(parse_u64(value, line, key));
    } else if (key == "gateway.best_effort_queue") {
      cfg.gateway.best_effort_queue = static_cast<QueueId>(parse_u64(value, line, key));
    } else if (key == "gateway.queue_capacity") {
      if (value != "none") cfg.gateway.queue_capacity = parse_u64(value, line, key);
    } else if (key == "gateway.schedule.base_period") {
      cfg.gateway.schedule.base_period = parse_duration_at(value, line, key);
    } else if (key == "gateway.schedule.epoch") {
      cfg.gateway.schedule.epoch = Instant{parse_duration_at(value, line, key).ticks};
    } else if (key == "gateway.schedule.window") {
      auto kv = kv_fields(toks, 0, line);
      GateWindow w;
      w.offset = parse_duration_at(require(kv, "offset", line), line, "offset");
      w.duration = parse_duration_at(require(kv, "dur", line), line, "dur");
      w.open_queues = parse_queue_mask(require(kv, "queues", line), line);
      reject_leftovers(kv, line);
      cfg.gateway.schedule.windows.push_back(w);
    } else if (key == "gateway.rule") {
      auto kv = kv_fields(toks, 0, line);
      StreamRule r;
      r.dst = require(kv, "dst", line);
      r.vlan = static_cast<std::uint16_t>(parse_u64(require(kv, "vlan", line), line, "vlan"));
      r.pcp = static_cast<std::uint8_t>(parse_u64(require(kv, "pcp", line), line, "pcp"));
      r.queue = static_cast<QueueId>(parse_u64(require(kv, "queue", line), line, "queue"));
      r.stream = require(kv, "stream", line);
      reject_leftovers(kv, line);
      cfg.gateway.rules.push_back(r);
    } else if (key == "bridge.delay") {
      if (toks.empty()) throw ParseError(line, "bridge.delay: missing law");
      auto kv = kv_fields(toks, 1, line);
      if (toks[0] == "constant") {
        cfg.bridge.delay.law =
            ConstantDelay{parse_duration_at(require(kv, "value", line), line, "value")};
      } else if (toks[0] == "uniform") {
        UniformBoundedDelay u;
        u.min = parse_duration_at(require(kv, "min", line), line, "min");
        u.max = parse_duration_at(require(kv, "max", line), line, "max");
        if (!(u.min <= u.max)) throw ParseError(line, "uniform delay needs min <= max");
        cfg.bridge.delay.law = u;
      } else if (toks[0] == "lognormal") {
        const Duration min = parse_duration_at(require(kv, "min", line), line, "min");
        const Duration max = parse_duration_at(require(kv, "max", line), line, "max");
        const Duration mean = parse_duration_at(require(kv, "mean", line), line, "mean");
        try {
          cfg.bridge.delay.law = TruncatedLognormalDelay::fit(min, max, mean);
        } catch (const std::exception& e) {
          throw ParseError(line, e.what());
        }
      } else {
        throw ParseError(line, "unknown delay law '" + toks[0] + "'");
      }
      reject_leftovers(kv, line);
    } else if (key == "bridge.tdd") {
      if (value == "off") {
        cfg.bridge.delay.tdd.reset();
      } else {
        auto kv = kv_fields(toks, 0, line);
        TddConfig tdd;
        tdd.slot_duration = parse_duration_at(require(kv, "slot", line), line, "slot");
        const std::string pattern = require(kv, "pattern", line);
        tdd.pattern.clear();
        for (char c : pattern) {
          if (c == 'D') tdd.pattern.push_back(SlotType::Downlink);
          else if (c == 'S') tdd.pattern.push_back(SlotType::Special);
          else if (c == 'U') tdd.pattern.push_back(SlotType::Uplink);
          else throw ParseError(line, std::string("bad TDD slot '") + c + "' (use D/S/U)");
        }
        if (tdd.pattern.empty()) throw ParseError(line, "empty TDD pattern");
        reject_leftovers(kv, line);
        cfg.bridge.delay.tdd = tdd;
      }
    } else if (key == "bridge.capacity") {
      if (value != "none")
        cfg.bridge.in_flight_capacity =
            static_cast<std::uint32_t>(parse_u64(value, line, key));
    } else if (key == "bridge.policy") {
      if (toks[0] == "drop") {
        cfg.bridge.overflow_policy = OverflowPolicy::Drop;
      } else if (toks[0] == "defer") {
        cfg.bridge.overflow_policy = OverflowPolicy::Defer;
        auto kv = kv_fields(toks, 1, line);
        cfg.bridge.defer_extra =
            parse_duration_at(require(kv, "extra", line), line, "extra");
        reject_leftovers(kv, line);
      } else {
        throw ParseError(line, "bridge.policy must be 'drop' or 'defer extra=<dur>'");
      }
    } else if (key == "bridge.fifo") {
      if (value == "true") cfg.bridge.fifo_enforced = true;
      else if (value == "false") cfg.bridge.fifo_enforced = false;
      else throw ParseError(line, "bridge.fifo must be true or false");
    } else if (key == "analysis.expected_period") {
      cfg.analysis.expected_period = parse_duration_at(value, line, key);
    } else if (key == "analysis.tol") {
      cfg.analysis.tol = parse_duration_at(value, line, key);
    } else if (key == "analysis.d_max") {
      cfg.analysis.d_max = parse_duration_at(value, line, key);
    } else {
      throw ParseError(line, "unknown key '" + key + "'");
    }
  }

  if (!traffic_declared) throw ParseError(line, "missing traffic.type");
  if (periodic)
    cfg.traffic.pattern = *periodic;
  else
    cfg.traffic.pattern = *cbr;
  if (cfg.gateway.schedule.base_period.ticks == 0)
    throw ParseError(line, "missing gateway.schedule.base_period");
  return cfg;
}

ScenarioConfig load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string format_duration(Duration d) {
  std::ostringstream os;
  if (d.ticks % 1'000'000 == 0)
    os << d.ticks / 1'000'000 << "ms";
  else if (d.ticks % 1'000 == 0)
    os << d.ticks / 1'000 << "us";
  else
    os << d.ticks << "ns";
  return os.str();
}

}  // namespace tsnsim
