#pragma once

#include <cstdint>
#include <string>

namespace polar::core {

// UTC instant with millisecond resolution. All timestamps in the system are
// UTC; offsets in RFC 3339 input are normalized away at parse time.
struct Instant {
    std::int64_t ms = 0; // milliseconds since 1970-01-01T00:00:00Z

    friend bool operator==(Instant a, Instant b) { return a.ms == b.ms; }
    friend bool operator!=(Instant a, Instant b) { return a.ms != b.ms; }
    friend bool operator<(Instant a, Instant b) { return a.ms < b.ms; }
    friend bool operator<=(Instant a, Instant b) { return a.ms <= b.ms; }
    friend bool operator>(Instant a, Instant b) { return a.ms > b.ms; }
    friend bool operator>=(Instant a, Instant b) { return a.ms >= b.ms; }
};

// Positive length of time, milliseconds.
struct Duration {
    std::int64_t ms = 0;
};

// Parses an RFC 3339 timestamp ("2022-03-01T12:00:00Z",
// "2022-03-01 12:00:00.250+02:00"). Throws FormatError on malformed input.
Instant parse_rfc3339(const std::string& text);

// Formats as "YYYY-MM-DDTHH:MM:SSZ", adding ".mmm" only when the
// sub-second part is nonzero. parse_rfc3339(format_rfc3339(t)) == t.
std::string format_rfc3339(Instant t);

// Parses durations like "90s", "15m", "2h", "7d", "500ms". A bare integer is
// seconds. Throws InvalidWindow on malformed or non-positive input.
Duration parse_duration(const std::string& text);

std::string format_duration(Duration d);

} // namespace polar::core
