#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace tsnsim {

// Thrown for bad scenario/schedule parameters detected at construction time.
class ConfigurationError : public std::runtime_error {
 public:
  explicit ConfigurationError(const std::string& what) : std::runtime_error(what) {}
};

/// Time span in integer nanoseconds. All schedule and event arithmetic in the
/// simulator is exact integer math; there is no floating-point time anywhere
/// on the event path.
struct Duration {
  std::uint64_t ticks = 0;  // nanoseconds

  constexpr auto operator<=>(const Duration&) const = default;

  constexpr Duration operator+(Duration o) const { return {ticks + o.ticks}; }
  constexpr Duration operator-(Duration o) const { return {ticks - o.ticks}; }
  constexpr Duration& operator+=(Duration o) { ticks += o.ticks; return *this; }
};

/// Absolute simulation time, nanoseconds since simulation start.
struct Instant {
  std::uint64_t ticks = 0;  // nanoseconds

  constexpr auto operator<=>(const Instant&) const = default;

  constexpr Instant operator+(Duration d) const { return {ticks + d.ticks}; }
  constexpr Instant operator-(Duration d) const { return {ticks - d.ticks}; }
  constexpr Duration operator-(Instant o) const { return {ticks - o.ticks}; }
};

inline constexpr std::uint64_t kMaxHorizonTicks = std::uint64_t{1} << 63;

constexpr Duration duration_from_nanos(std::uint64_t ns) { return {ns}; }

inline Duration duration_from_micros(std::uint64_t us) {
  if (us > kMaxHorizonTicks / 1000) throw ConfigurationError("duration overflow (us)");
  return {us * 1000};
}

inline Duration duration_from_millis(std::uint64_t ms) {
  if (ms > kMaxHorizonTicks / 1'000'000) throw ConfigurationError("duration overflow (ms)");
  return {ms * 1'000'000};
}

inline Duration duration_from_seconds(std::uint64_t s) {
  if (s > kMaxHorizonTicks / 1'000'000'000) throw ConfigurationError("duration overflow (s)");
  return {s * 1'000'000'000};
}

// Preamble + SFD (8) plus interframe gap (12). Non-negligible at 100 Mbps.
inline constexpr std::uint32_t kFrameOverheadBytes = 20;

/// Wire time of a frame on a link, rounded up to whole nanoseconds.
inline Duration serialization_time(std::uint32_t size_bytes, std::uint64_t link_rate_bps,
                                   bool include_overhead = true) {
  if (link_rate_bps == 0) throw ConfigurationError("link rate must be > 0");
  const unsigned __int128 bits =
      (static_cast<unsigned __int128>(size_bytes) + (include_overhead ? kFrameOverheadBytes : 0)) * 8;
  const unsigned __int128 num = bits * 1'000'000'000 + link_rate_bps - 1;
  return {static_cast<std::uint64_t>(num / link_rate_bps)};
}

std::string format_duration(Duration d);

}  // namespace tsnsim
