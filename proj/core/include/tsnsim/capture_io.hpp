#pragma once

#include <string>

#include "tsnsim/sim.hpp"

namespace tsnsim {

inline constexpr const char* kCaptureCsvHeader = "point,seq,stream,t_ns,size_bytes";

/// Capture CSV: one record per line, LF-terminated, integer nanosecond
/// timestamps so the exact Instant round-trips.
std::string write_capture_csv(const CaptureSet& captures);

/// Throws ParseError (line-numbered) on malformed input.
CaptureSet parse_capture_csv(const std::string& text);

CaptureSet load_capture_file(const std::string& path);

}  // namespace tsnsim
