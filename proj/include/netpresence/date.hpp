#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace netpresence {

//! UTC calendar day. All sources publish daily aggregates without timezones,
//! so a single unambiguous day type is used throughout.
using Date = std::chrono::sys_days;

//! UTC instant with second resolution, for intraday samples.
using Timestamp = std::chrono::sys_seconds;

using YearMonth = std::chrono::year_month;

//! `YYYY-MM-DD`. Returns nullopt on any deviation from that form.
std::optional<Date> try_parse_date(std::string_view text);

//! Throwing variant for CLI flags and trusted call sites.
Date parse_date(std::string_view text);

std::string format_date(Date d);

//! `YYYY-MM-DD`, or `YYYY-MM-DDTHH:MM:SS` with an optional trailing `Z`.
std::optional<Timestamp> try_parse_timestamp(std::string_view text);

//! Always the full `YYYY-MM-DDTHH:MM:SSZ` form.
std::string format_timestamp(Timestamp t);

std::optional<YearMonth> try_parse_year_month(std::string_view text);
YearMonth parse_year_month(std::string_view text);
std::string format_year_month(YearMonth ym);

inline Date day_of(Timestamp t) {
    return std::chrono::floor<std::chrono::days>(t);
}

}  // namespace netpresence
