#include "netpresence/date.hpp"

#include <charconv>
#include <cstdio>

#include "netpresence/errors.hpp"

namespace netpresence {

namespace {

bool parse_uint(std::string_view text, unsigned& out) {
    if (text.empty()) return false;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
    return ec == std::errc() && ptr == text.data() + text.size();
}

std::optional<std::chrono::year_month_day> parse_ymd(std::string_view text) {
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    unsigned y = 0, m = 0, d = 0;
    if (!parse_uint(text.substr(0, 4), y) || !parse_uint(text.substr(5, 2), m) ||
        !parse_uint(text.substr(8, 2), d)) {
        return std::nullopt;
    }
    std::chrono::year_month_day ymd{std::chrono::year(static_cast<int>(y)),
                                    std::chrono::month(m), std::chrono::day(d)};
    if (!ymd.ok()) return std::nullopt;
    return ymd;
}

}  // namespace

std::optional<Date> try_parse_date(std::string_view text) {
    auto ymd = parse_ymd(text);
    if (!ymd) return std::nullopt;
    return std::chrono::sys_days(*ymd);
}

Date parse_date(std::string_view text) {
    auto d = try_parse_date(text);
    if (!d) throw Error(ErrorCategory::parse, "invalid date: '" + std::string(text) + "'");
    return *d;
}

std::string format_date(Date d) {
    std::chrono::year_month_day ymd{d};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

std::optional<Timestamp> try_parse_timestamp(std::string_view text) {
    if (text.size() == 10) {
        auto d = try_parse_date(text);
        if (!d) return std::nullopt;
        return Timestamp(std::chrono::duration_cast<std::chrono::seconds>(
            d->time_since_epoch()));
    }
    if (!text.empty() && text.back() == 'Z') text.remove_suffix(1);
    if (text.size() != 19 || text[10] != 'T' || text[13] != ':' || text[16] != ':') {
        return std::nullopt;
    }
    auto d = try_parse_date(text.substr(0, 10));
    if (!d) return std::nullopt;
    unsigned hh = 0, mm = 0, ss = 0;
    if (!parse_uint(text.substr(11, 2), hh) || !parse_uint(text.substr(14, 2), mm) ||
        !parse_uint(text.substr(17, 2), ss)) {
        return std::nullopt;
    }
    if (hh > 23 || mm > 59 || ss > 59) return std::nullopt;
    auto secs = std::chrono::duration_cast<std::chrono::seconds>(d->time_since_epoch()) +
                std::chrono::hours(hh) + std::chrono::minutes(mm) + std::chrono::seconds(ss);
    return Timestamp(secs);
}

std::string format_timestamp(Timestamp t) {
    Date d = day_of(t);
    auto rem = std::chrono::duration_cast<std::chrono::seconds>(t - d).count();
    char buf[32];
    std::snprintf(buf, sizeof buf, "%sT%02lld:%02lld:%02lldZ", format_date(d).c_str(),
                  static_cast<long long>(rem / 3600), static_cast<long long>(rem / 60 % 60),
                  static_cast<long long>(rem % 60));
    return buf;
}

std::optional<YearMonth> try_parse_year_month(std::string_view text) {
    if (text.size() != 7 || text[4] != '-') return std::nullopt;
    unsigned y = 0, m = 0;
    if (!parse_uint(text.substr(0, 4), y) || !parse_uint(text.substr(5, 2), m)) {
        return std::nullopt;
    }
    YearMonth ym{std::chrono::year(static_cast<int>(y)), std::chrono::month(m)};
    if (!ym.ok()) return std::nullopt;
    return ym;
}

YearMonth parse_year_month(std::string_view text) {
    auto ym = try_parse_year_month(text);
    if (!ym) throw Error(ErrorCategory::parse, "invalid month: '" + std::string(text) + "'");
    return *ym;
}

std::string format_year_month(YearMonth ym) {
    char buf[12];
    std::snprintf(buf, sizeof buf, "%04d-%02u", static_cast<int>(ym.year()),
                  static_cast<unsigned>(ym.month()));
    return buf;
}

}  // namespace netpresence
