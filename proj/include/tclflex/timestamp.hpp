#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace tclflex {

using Timestamp = std::chrono::sys_seconds;

/// Parses `YYYY-MM-DDTHH:MM:SSZ` (a trailing `+00:00` is also accepted).
std::optional<Timestamp> parse_timestamp(std::string_view text);

/// Formats as `YYYY-MM-DDTHH:MM:SSZ`.
std::string format_timestamp(Timestamp ts);

/// Hour of day (0-23) in UTC.
int utc_hour(Timestamp ts);

} // namespace tclflex
