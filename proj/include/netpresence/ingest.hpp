#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "netpresence/model.hpp"

namespace netpresence {

//! One day's border-crossing count into a destination country.
struct FlowRecord {
    Date date;
    CountryCode destination;
    std::int64_t individuals;
    bool operator==(const FlowRecord&) const = default;
};

struct ProbeStatusRecord {
    std::int64_t probe_id;
    Date date;
    bool connected;
    bool operator==(const ProbeStatusRecord&) const = default;
};

enum class NetworkKind { fixed, mobile };

std::string_view to_string(NetworkKind kind);

//! Monthly per-country speed-test rank (1 = fastest median download).
struct RankRecord {
    CountryCode country;
    YearMonth month;
    NetworkKind network_kind;
    int rank;
    bool operator==(const RankRecord&) const = default;
};

//! One sample of a per-country share metric, e.g. metric "search_host" with
//! key "google.com.ua", or metric "device_class" with key "mobile".
struct ShareSeriesRecord {
    Date date;
    CountryCode country;
    std::string metric;
    std::string key;
    double value;  // fraction in [0, 1]
    bool operator==(const ShareSeriesRecord&) const = default;
};

//! One entry of a site-analytics export: a site, its monthly visit volume,
//! and the visit-share fractions of its top countries (summing to <= 1).
struct SiteAnalyticsEntry {
    std::string site;
    double monthly_visits;
    std::map<CountryCode, double> shares;
    bool operator==(const SiteAnalyticsEntry&) const = default;
};

struct AnalyticsData {
    ShareMatrix shares;
    VolumeVector volumes;
};

// Parsers. Each consumes a whole UTF-8 document, validates the exact header,
// and returns records in the documented canonical order regardless of input
// row order. Any malformed input raises a structured error with a position.

//! `date,country,individuals` -> sorted by (date, country).
std::vector<FlowRecord> parse_flows(std::string_view bytes);

//! `probe_id,date,connected` with connected in {0,1} -> sorted by (date, probe_id).
std::vector<ProbeStatusRecord> parse_probe_status(std::string_view bytes);

//! `date,country,metric,key,value` -> sorted by (metric, country, key, date).
//! With `convert_percent`, values are divided by 100 before range checks.
std::vector<ShareSeriesRecord> parse_share_series(std::string_view bytes,
                                                  bool convert_percent = false);

//! `country,month,kind,rank` with month `YYYY-MM` -> sorted by (country, kind, month).
std::vector<RankRecord> parse_ranks(std::string_view bytes);

//! `timestamp,value` with ISO-8601 timestamps, possibly sub-daily.
TimestampedSeries parse_traffic_series(std::string_view bytes);

//! JSON array of {site, monthly_visits, shares} in file order.
std::vector<SiteAnalyticsEntry> parse_site_entries(std::string_view bytes,
                                                   bool convert_percent = false);

//! Rebuckets entries into a validated (ShareMatrix, VolumeVector) pair,
//! preserving the file's site order.
AnalyticsData build_analytics(const std::vector<SiteAnalyticsEntry>& entries);

//! Convenience: parse_site_entries followed by build_analytics.
AnalyticsData parse_site_analytics(std::string_view bytes, bool convert_percent = false);

//! JSON array of {site, monthly_visits}; extra fields are ignored.
VolumeVector parse_volumes(std::string_view bytes);

//! Removes exact-match site identifiers, preserving order.
std::vector<SiteAnalyticsEntry> filter_top_sites(std::vector<SiteAnalyticsEntry> entries,
                                                 const std::vector<std::string>& exclusions);

// Writers. Emit the canonical form of each schema (LF line endings, values
// formatted to 9 significant digits) so that write -> parse is the identity
// on record lists.

std::string write_flows(const std::vector<FlowRecord>& records);
std::string write_probe_status(const std::vector<ProbeStatusRecord>& records);
std::string write_share_series(const std::vector<ShareSeriesRecord>& records);
std::string write_ranks(const std::vector<RankRecord>& records);
std::string write_traffic_series(const TimestampedSeries& series);
std::string write_site_entries(const std::vector<SiteAnalyticsEntry>& entries);

//! Fixed-precision decimal formatting used by every CSV writer: shortest
//! form within 9 significant digits.
std::string format_value(double v);

}  // namespace netpresence
