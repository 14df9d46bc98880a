#pragma once

#include <chrono>
#include <compare>
#include <optional>
#include <string>
#include <string_view>

namespace kre {

/// A UTC instant with second precision.
using Instant = std::chrono::sys_seconds;

/// Half-open interval [start, end).
struct TimeWindow {
  Instant start;
  Instant end;

  bool contains(Instant t) const noexcept { return start <= t && t < end; }
  bool empty() const noexcept { return end <= start; }
  std::chrono::seconds length() const noexcept { return end - start; }

  friend bool operator==(const TimeWindow&, const TimeWindow&) = default;
};

/// Throws InvalidRange unless start < end.
void require_valid(const TimeWindow& window);

/// Parses an ISO-8601 date-time ("2016-07-01T18:00:00Z", "2016-07-01 18:00:00+02:00",
/// "2016-07-01T18:00Z", "2016-07-01"). Fractional seconds are truncated and a
/// missing offset means UTC. Returns nullopt on anything malformed.
std::optional<Instant> try_parse_iso8601(std::string_view text);

/// As try_parse_iso8601 but throws ParseError.
Instant parse_iso8601(std::string_view text);

/// Formats as "YYYY-MM-DDTHH:MM:SSZ".
std::string format_iso8601(Instant t);

}  // namespace kre
