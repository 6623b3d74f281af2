#include "tsnsim/capture_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

#include "tsnsim/scenario.hpp"

namespace tsnsim {
namespace {

std::uint64_t parse_u64_field(const std::string& s, int line, const char* what) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    throw ParseError(line, std::string(what) + ": bad integer '" + s + "'");
  return v;
}

}  // namespace

const char* observation_point_name(ObservationPoint p) {
  switch (p) {
    case ObservationPoint::GatewayIngress: return "gateway_ingress";
    case ObservationPoint::GatewayEgress: return "gateway_egress";
    case ObservationPoint::CoreArrival: return "core_arrival";
  }
  return "unknown";
}

std::optional<ObservationPoint> observation_point_from_name(const std::string& name) {
  if (name == "gateway_ingress") return ObservationPoint::GatewayIngress;
  if (name == "gateway_egress") return ObservationPoint::GatewayEgress;
  if (name == "core_arrival") return ObservationPoint::CoreArrival;
  return std::nullopt;
}

std::string write_capture_csv(const CaptureSet& captures) {
  std::ostringstream os;
  os << kCaptureCsvHeader << "\n";
  for (int p = 0; p < static_cast<int>(kNumObservationPoints); ++p) {
    const auto point = static_cast<ObservationPoint>(p);
    for (const CaptureRecord& r : captures.at(point)) {
      os << observation_point_name(point) << ',' << r.seq << ',' << r.stream << ','
         << r.t.ticks << ',' << r.size_bytes << "\n";
    }
  }
  return os.str();
}

CaptureSet parse_capture_csv(const std::string& text) {
  CaptureSet out;
  std::istringstream stream(text);
  std::string line;
  int lineno = 0;
  if (!std::getline(stream, line)) throw ParseError(1, "empty capture file");
  ++lineno;
  if (line == kCaptureCsvHeader + std::string("\r")) line.pop_back();
  if (line != kCaptureCsvHeader)
    throw ParseError(1, std::string("expected header '") + kCaptureCsvHeader + "'");
  while (std::getline(stream, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ls(line);
    while (std::getline(ls, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    if (fields.size() != 5) throw ParseError(lineno, "expected 5 fields");
    const auto point = observation_point_from_name(fields[0]);
    if (!point) throw ParseError(lineno, "unknown observation point '" + fields[0] + "'");
    CaptureRecord r;
    r.seq = parse_u64_field(fields[1], lineno, "seq");
    r.stream = fields[2];
    r.t = Instant{parse_u64_field(fields[3], lineno, "t_ns")};
    r.size_bytes = static_cast<std::uint32_t>(parse_u64_field(fields[4], lineno, "size_bytes"));
    out.at(*point).push_back(r);
  }
  return out;
}

CaptureSet load_capture_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(0, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_capture_csv(buf.str());
}

}  // namespace tsnsim
