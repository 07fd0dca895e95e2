#include "polar/core/time.hpp"

#include "polar/core/errors.hpp"

#include <array>
#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace polar::core {

namespace {

// Days since 1970-01-01 for a proleptic Gregorian civil date
// (Howard Hinnant's days_from_civil).
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);           // [0, 399]
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1; // [0, 365]
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;          // [0, 146096]
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    y = static_cast<int>(yoe) + static_cast<int>(era) * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y += m <= 2;
}

bool read_digits(const std::string& s, std::size_t& pos, int count, int& out) {
    int v = 0;
    for (int i = 0; i < count; ++i) {
        if (pos >= s.size() || !std::isdigit(static_cast<unsigned char>(s[pos])))
            return false;
        v = v * 10 + (s[pos] - '0');
        ++pos;
    }
    out = v;
    return true;
}

bool expect(const std::string& s, std::size_t& pos, char c) {
    if (pos >= s.size() || s[pos] != c) return false;
    ++pos;
    return true;
}

unsigned days_in_month(int y, unsigned m) {
    static constexpr std::array<unsigned, 12> lengths = {31, 28, 31, 30, 31, 30,
                                                         31, 31, 30, 31, 30, 31};
    if (m == 2) {
        const bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
        return leap ? 29 : 28;
    }
    return lengths[m - 1];
}

} // namespace

Instant parse_rfc3339(const std::string& text) {
    std::size_t pos = 0;
    int year = 0, month = 0, day = 0, hour = 0, minute = 0, second = 0;
    const auto fail = [&](const char* why) -> Instant {
        throw FormatError("invalid RFC 3339 timestamp '" + text + "': " + why);
    };

    if (!read_digits(text, pos, 4, year)) return fail("expected 4-digit year");
    if (!expect(text, pos, '-')) return fail("expected '-' after year");
    if (!read_digits(text, pos, 2, month)) return fail("expected 2-digit month");
    if (!expect(text, pos, '-')) return fail("expected '-' after month");
    if (!read_digits(text, pos, 2, day)) return fail("expected 2-digit day");
    if (pos >= text.size() || (text[pos] != 'T' && text[pos] != 't' && text[pos] != ' '))
        return fail("expected 'T' date/time separator");
    ++pos;
    if (!read_digits(text, pos, 2, hour)) return fail("expected 2-digit hour");
    if (!expect(text, pos, ':')) return fail("expected ':' after hour");
    if (!read_digits(text, pos, 2, minute)) return fail("expected 2-digit minute");
    if (!expect(text, pos, ':')) return fail("expected ':' after minute");
    if (!read_digits(text, pos, 2, second)) return fail("expected 2-digit second");

    std::int64_t millis = 0;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        std::int64_t frac = 0;
        std::int64_t scale = 100;
        int digits = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            if (digits < 3) {
                frac += (text[pos] - '0') * scale;
                scale /= 10;
            }
            ++digits;
            ++pos;
        }
        if (digits == 0) return fail("empty fractional seconds");
        millis = frac; // sub-millisecond digits truncated
    }

    std::int64_t offset_minutes = 0;
    if (pos >= text.size()) return fail("missing timezone designator");
    const char tz = text[pos];
    if (tz == 'Z' || tz == 'z') {
        ++pos;
    } else if (tz == '+' || tz == '-') {
        ++pos;
        int oh = 0, om = 0;
        if (!read_digits(text, pos, 2, oh)) return fail("expected offset hours");
        if (!expect(text, pos, ':')) return fail("expected ':' in offset");
        if (!read_digits(text, pos, 2, om)) return fail("expected offset minutes");
        offset_minutes = oh * 60 + om;
        if (tz == '-') offset_minutes = -offset_minutes;
    } else {
        return fail("missing timezone designator");
    }
    if (pos != text.size()) return fail("trailing characters");

    if (month < 1 || month > 12) return fail("month out of range");
    if (day < 1 || day > static_cast<int>(days_in_month(year, static_cast<unsigned>(month))))
        return fail("day out of range");
    if (hour > 23 || minute > 59 || second > 60) return fail("time out of range");
    if (second == 60) second = 59; // leap second: collapse to :59

    const std::int64_t days = days_from_civil(year, static_cast<unsigned>(month),
                                              static_cast<unsigned>(day));
    std::int64_t total = ((days * 24 + hour) * 60 + minute) * 60 + second;
    total -= offset_minutes * 60;
    return Instant{total * 1000 + millis};
}

std::string format_rfc3339(Instant t) {
    std::int64_t ms = t.ms;
    std::int64_t secs = ms / 1000;
    std::int64_t sub = ms % 1000;
    if (sub < 0) {
        sub += 1000;
        secs -= 1;
    }
    std::int64_t days = secs / 86400;
    std::int64_t rem = secs % 86400;
    if (rem < 0) {
        rem += 86400;
        days -= 1;
    }
    int y;
    unsigned mo, d;
    civil_from_days(days, y, mo, d);
    const int h = static_cast<int>(rem / 3600);
    const int mi = static_cast<int>((rem / 60) % 60);
    const int s = static_cast<int>(rem % 60);

    char buf[40];
    if (sub != 0) {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02d.%03dZ", y, mo, d, h, mi, s,
                      static_cast<int>(sub));
    } else {
        std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", y, mo, d, h, mi, s);
    }
    return buf;
}

Duration parse_duration(const std::string& text) {
    if (text.empty()) throw InvalidWindow("empty duration");
    std::size_t pos = 0;
    std::int64_t value = 0;
    bool any = false;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
        value = value * 10 + (text[pos] - '0');
        ++pos;
        any = true;
    }
    if (!any) throw InvalidWindow("duration '" + text + "' must start with digits");
    const std::string unit = text.substr(pos);
    std::int64_t ms;
    if (unit.empty() || unit == "s") ms = value * 1000;
    else if (unit == "ms") ms = value;
    else if (unit == "m") ms = value * 60 * 1000;
    else if (unit == "h") ms = value * 3600 * 1000;
    else if (unit == "d") ms = value * 86400 * 1000;
    else throw InvalidWindow("unknown duration unit '" + unit + "'");
    if (ms <= 0) throw InvalidWindow("duration must be positive, got '" + text + "'");
    return Duration{ms};
}

std::string format_duration(Duration d) {
    const std::int64_t ms = d.ms;
    if (ms % (86400 * 1000) == 0) return std::to_string(ms / (86400 * 1000)) + "d";
    if (ms % (3600 * 1000) == 0) return std::to_string(ms / (3600 * 1000)) + "h";
    if (ms % (60 * 1000) == 0) return std::to_string(ms / (60 * 1000)) + "m";
    if (ms % 1000 == 0) return std::to_string(ms / 1000) + "s";
    return std::to_string(ms) + "ms";
}

} // namespace polar::core
