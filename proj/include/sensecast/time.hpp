#pragma once

// UTC timestamp and weekly-bin helpers. All timestamps are seconds since the
// Unix epoch; all calendar math is proleptic Gregorian in UTC. No local time
// anywhere.

#include <cstdint>
#include <cstdio>
#include <string>

#include "sensecast/error.hpp"

namespace sensecast {

constexpr std::int64_t kSecondsPerDay = 86400;
constexpr std::int64_t kSecondsPerWeek = 7 * kSecondsPerDay;

namespace detail {

// Days since 1970-01-01 for a civil date (Howard Hinnant's algorithm).
constexpr std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

constexpr void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = yr + (m <= 2);
}

}  // namespace detail

// Parses "YYYY-MM-DDTHH:MM:SSZ" to epoch seconds. Throws DomainError on any
// deviation from that exact shape.
inline std::int64_t parse_timestamp(const std::string& s) {
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
    char z = 0;
    if (s.size() != 20 ||
        std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi, &sec, &z) != 7 ||
        z != 'Z' || mo < 1 || mo > 12 || d < 1 || d > 31 || h > 23 || mi > 59 || sec > 60) {
        throw DomainError("bad timestamp: '" + s + "'");
    }
    return detail::days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d)) * kSecondsPerDay +
           h * 3600 + mi * 60 + sec;
}

// Parses "YYYY-MM-DD" to epoch seconds at 00:00:00 UTC.
inline std::int64_t parse_date(const std::string& s) {
    int y = 0, mo = 0, d = 0;
    if (s.size() != 10 || std::sscanf(s.c_str(), "%4d-%2d-%2d", &y, &mo, &d) != 3 ||
        mo < 1 || mo > 12 || d < 1 || d > 31) {
        throw DomainError("bad date: '" + s + "'");
    }
    return detail::days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d)) * kSecondsPerDay;
}

inline std::string format_timestamp(std::int64_t ts) {
    std::int64_t days = ts / kSecondsPerDay;
    std::int64_t rem = ts % kSecondsPerDay;
    if (rem < 0) {
        rem += kSecondsPerDay;
        --days;
    }
    std::int64_t y;
    unsigned m, d;
    detail::civil_from_days(days, y, m, d);
    char buf[24];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02uT%02lld:%02lld:%02lldZ",
                  static_cast<long long>(y), m, d,
                  static_cast<long long>(rem / 3600),
                  static_cast<long long>((rem / 60) % 60),
                  static_cast<long long>(rem % 60));
    return buf;
}

inline std::string format_date(std::int64_t ts) {
    std::int64_t days = ts / kSecondsPerDay;
    if (ts % kSecondsPerDay < 0) --days;
    std::int64_t y;
    unsigned m, d;
    detail::civil_from_days(days, y, m, d);
    char buf[12];
    std::snprintf(buf, sizeof(buf), "%04lld-%02u-%02u", static_cast<long long>(y), m, d);
    return buf;
}

// A contiguous run of fixed 7-day UTC bins anchored at week_start (midnight).
struct WeekGrid {
    std::int64_t week_start = 0;  // epoch seconds, 00:00 UTC of bin 0
    int n_weeks = 0;

    std::int64_t end() const { return week_start + static_cast<std::int64_t>(n_weeks) * kSecondsPerWeek; }
    bool contains(std::int64_t ts) const { return ts >= week_start && ts < end(); }

    // Bin index for a timestamp inside the grid; caller checks contains().
    int bin(std::int64_t ts) const {
        return static_cast<int>((ts - week_start) / kSecondsPerWeek);
    }

    std::int64_t bin_start(int w) const { return week_start + static_cast<std::int64_t>(w) * kSecondsPerWeek; }
};

}  // namespace sensecast
