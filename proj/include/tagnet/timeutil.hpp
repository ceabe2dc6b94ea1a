#pragma once

// UTC-only calendar helpers. Timestamps are epoch seconds; a "day index"
// is floor(epoch / 86400), i.e. the UTC calendar day.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tagnet {

constexpr std::int64_t kSecondsPerDay = 86400;

// Days since 1970-01-01 for a civil date (Gregorian, proleptic).
std::int64_t days_from_civil(int y, unsigned m, unsigned d);
void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d);

inline std::int64_t day_of(std::int64_t epoch_seconds) {
    // floor division, also for pre-1970 instants
    std::int64_t d = epoch_seconds / kSecondsPerDay;
    if (epoch_seconds % kSecondsPerDay < 0) --d;
    return d;
}

// Parses an ISO-8601 instant to UTC epoch seconds (second resolution).
// Accepted: YYYY-MM-DD, optionally followed by 'T' or ' ' and HH:MM:SS
// (fractional seconds ignored), optionally suffixed by 'Z' or +-HH[:MM].
// Returns nullopt on anything malformed.
std::optional<std::int64_t> parse_instant(std::string_view s);

// Like parse_instant, but a bare date maps to the *last* second of that
// day; used for inclusive range ends like --to 2011-12-31.
std::optional<std::int64_t> parse_instant_end(std::string_view s);

std::string format_date(std::int64_t day_index);        // YYYY-MM-DD
std::string format_instant(std::int64_t epoch_seconds); // YYYY-MM-DDTHH:MM:SSZ

}  // namespace tagnet
