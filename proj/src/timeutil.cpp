#include "tagnet/timeutil.hpp"

#include <cstdio>

namespace tagnet {

// Howard Hinnant's civil-date algorithms.
std::int64_t days_from_civil(int y, unsigned m, unsigned d) {
    y -= m <= 2;
    const int era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return static_cast<std::int64_t>(era) * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, int& y, unsigned& m, unsigned& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yy = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = doy - (153 * mp + 2) / 5 + 1;
    m = mp + (mp < 10 ? 3 : -9);
    y = static_cast<int>(yy + (m <= 2));
}

namespace {

bool take_digits(std::string_view& s, int count, long& out) {
    if (static_cast<int>(s.size()) < count) return false;
    long v = 0;
    for (int i = 0; i < count; ++i) {
        char c = s[static_cast<std::size_t>(i)];
        if (c < '0' || c > '9') return false;
        v = v * 10 + (c - '0');
    }
    s.remove_prefix(static_cast<std::size_t>(count));
    out = v;
    return true;
}

bool take_char(std::string_view& s, char c) {
    if (s.empty() || s.front() != c) return false;
    s.remove_prefix(1);
    return true;
}

unsigned days_in_month(int y, unsigned m) {
    static const unsigned lens[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m == 2) {
        bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
        return leap ? 29u : 28u;
    }
    return lens[m - 1];
}

std::optional<std::int64_t> parse_impl(std::string_view s, bool date_means_day_end) {
    long y, mo, da;
    if (!take_digits(s, 4, y) || !take_char(s, '-') || !take_digits(s, 2, mo) ||
        !take_char(s, '-') || !take_digits(s, 2, da))
        return std::nullopt;
    if (mo < 1 || mo > 12 || da < 1 ||
        da > static_cast<long>(days_in_month(static_cast<int>(y), static_cast<unsigned>(mo))))
        return std::nullopt;

    long hh = 0, mi = 0, se = 0;
    bool have_time = false;
    if (!s.empty() && (s.front() == 'T' || s.front() == ' ')) {
        s.remove_prefix(1);
        if (!take_digits(s, 2, hh) || !take_char(s, ':') || !take_digits(s, 2, mi) ||
            !take_char(s, ':') || !take_digits(s, 2, se))
            return std::nullopt;
        if (hh > 23 || mi > 59 || se > 60) return std::nullopt;
        if (se == 60) se = 59;  // fold leap seconds
        have_time = true;
        if (!s.empty() && s.front() == '.') {  // drop fractional seconds
            s.remove_prefix(1);
            while (!s.empty() && s.front() >= '0' && s.front() <= '9') s.remove_prefix(1);
        }
    }

    std::int64_t offset = 0;
    if (!s.empty()) {
        char c = s.front();
        if (c == 'Z' || c == 'z') {
            s.remove_prefix(1);
        } else if (c == '+' || c == '-') {
            s.remove_prefix(1);
            long oh, om = 0;
            if (!take_digits(s, 2, oh)) return std::nullopt;
            if (!s.empty() && s.front() == ':') {
                s.remove_prefix(1);
                if (!take_digits(s, 2, om)) return std::nullopt;
            } else if (s.size() >= 2) {
                if (!take_digits(s, 2, om)) return std::nullopt;
            }
            if (oh > 23 || om > 59) return std::nullopt;
            offset = (oh * 3600 + om * 60) * (c == '+' ? 1 : -1);
        }
    }
    if (!s.empty()) return std::nullopt;  // trailing junk

    if (!have_time && date_means_day_end) {
        hh = 23;
        mi = 59;
        se = 59;
    }
    std::int64_t days = days_from_civil(static_cast<int>(y), static_cast<unsigned>(mo),
                                        static_cast<unsigned>(da));
    return days * kSecondsPerDay + hh * 3600 + mi * 60 + se - offset;
}

}  // namespace

std::optional<std::int64_t> parse_instant(std::string_view s) { return parse_impl(s, false); }
std::optional<std::int64_t> parse_instant_end(std::string_view s) { return parse_impl(s, true); }

std::string format_date(std::int64_t day_index) {
    int y;
    unsigned m, d;
    civil_from_days(day_index, y, m, d);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", y, m, d);
    return buf;
}

std::string format_instant(std::int64_t epoch_seconds) {
    std::int64_t day = day_of(epoch_seconds);
    std::int64_t rem = epoch_seconds - day * kSecondsPerDay;
    int y;
    unsigned m, d;
    civil_from_days(day, y, m, d);
    char buf[24];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02uT%02d:%02d:%02dZ", y, m, d,
                  static_cast<int>(rem / 3600), static_cast<int>((rem / 60) % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

}  // namespace tagnet
