#include "netpresence/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <set>
#include <unordered_set>

#include <nlohmann/json.hpp>

#include "netpresence/errors.hpp"

namespace netpresence {

namespace {

using json = nlohmann::json;

//! Splits a document into lines, tolerating a trailing '\r' per line and
//! skipping blank lines. Yields (1-based line number, content).
std::vector<std::pair<std::size_t, std::string_view>> split_lines(std::string_view bytes) {
    std::vector<std::pair<std::size_t, std::string_view>> lines;
    std::size_t lineno = 0;
    while (!bytes.empty()) {
        ++lineno;
        auto nl = bytes.find('\n');
        std::string_view line = bytes.substr(0, nl);
        bytes = (nl == std::string_view::npos) ? std::string_view{} : bytes.substr(nl + 1);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) lines.emplace_back(lineno, line);
    }
    return lines;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    while (true) {
        auto comma = line.find(',');
        out.push_back(line.substr(0, comma));
        if (comma == std::string_view::npos) break;
        line = line.substr(comma + 1);
    }
    return out;
}

void require_header(const std::vector<std::pair<std::size_t, std::string_view>>& lines,
                    std::string_view expected) {
    if (lines.empty()) throw ParseError(1, "missing header, expected '" + std::string(expected) + "'");
    if (lines.front().second != expected) {
        throw ParseError(lines.front().first, "bad header '" + std::string(lines.front().second) +
                                                  "', expected '" + std::string(expected) + "'");
    }
}

std::vector<std::string_view> fields_or_throw(std::size_t lineno, std::string_view line,
                                              std::size_t want) {
    auto fields = split_fields(line);
    if (fields.size() != want) {
        throw ParseError(lineno, "expected " + std::to_string(want) + " fields, got " +
                                     std::to_string(fields.size()));
    }
    return fields;
}

Date date_or_throw(std::size_t lineno, std::string_view text) {
    auto d = try_parse_date(text);
    if (!d) throw ParseError(lineno, "invalid date '" + std::string(text) + "'");
    return *d;
}

CountryCode country_or_throw(std::size_t lineno, std::string_view text) {
    auto cc = CountryCode::try_parse(text);
    if (!cc) throw ParseError(lineno, "invalid country code '" + std::string(text) + "'");
    return *cc;
}

std::int64_t int_or_throw(std::size_t lineno, std::string_view text) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) {
        throw ParseError(lineno, "invalid integer '" + std::string(text) + "'");
    }
    return v;
}

double double_or_throw(std::size_t lineno, std::string_view text) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
        throw ParseError(lineno, "invalid number '" + std::string(text) + "'");
    }
    return v;
}

json json_or_throw(std::string_view bytes) {
    json doc = json::parse(bytes, nullptr, false);
    if (doc.is_discarded()) throw ParseError(1, "invalid JSON document");
    return doc;
}

}  // namespace

std::string_view to_string(NetworkKind kind) {
    return kind == NetworkKind::fixed ? "fixed" : "mobile";
}

std::vector<FlowRecord> parse_flows(std::string_view bytes) {
    auto lines = split_lines(bytes);
    require_header(lines, "date,country,individuals");
    std::vector<FlowRecord> records;
    std::set<std::pair<Date, CountryCode>> seen;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        auto [lineno, line] = lines[k];
        auto f = fields_or_throw(lineno, line, 3);
        FlowRecord rec{date_or_throw(lineno, f[0]), country_or_throw(lineno, f[1]),
                       int_or_throw(lineno, f[2])};
        if (rec.individuals < 0) {
            throw ParseError(lineno, "individuals must be nonnegative");
        }
        if (!seen.insert({rec.date, rec.destination}).second) {
            throw DuplicateKey(format_date(rec.date) + "," + rec.destination.str());
        }
        records.push_back(rec);
    }
    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        return std::tie(a.date, a.destination) < std::tie(b.date, b.destination);
    });
    return records;
}

std::vector<ProbeStatusRecord> parse_probe_status(std::string_view bytes) {
    auto lines = split_lines(bytes);
    require_header(lines, "probe_id,date,connected");
    std::vector<ProbeStatusRecord> records;
    std::set<std::pair<std::int64_t, Date>> seen;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        auto [lineno, line] = lines[k];
        auto f = fields_or_throw(lineno, line, 3);
        std::int64_t id = int_or_throw(lineno, f[0]);
        if (id <= 0) throw ParseError(lineno, "probe_id must be positive");
        Date date = date_or_throw(lineno, f[1]);
        bool connected;
        if (f[2] == "1") {
            connected = true;
        } else if (f[2] == "0") {
            connected = false;
        } else {
            throw ParseError(lineno, "connected must be 0 or 1, got '" + std::string(f[2]) + "'");
        }
        if (!seen.insert({id, date}).second) {
            throw DuplicateKey(std::to_string(id) + "," + format_date(date));
        }
        records.push_back({id, date, connected});
    }
    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        return std::tie(a.date, a.probe_id) < std::tie(b.date, b.probe_id);
    });
    return records;
}

std::vector<ShareSeriesRecord> parse_share_series(std::string_view bytes, bool convert_percent) {
    auto lines = split_lines(bytes);
    require_header(lines, "date,country,metric,key,value");
    std::vector<ShareSeriesRecord> records;
    std::set<std::tuple<Date, CountryCode, std::string, std::string>> seen;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        auto [lineno, line] = lines[k];
        auto f = fields_or_throw(lineno, line, 5);
        ShareSeriesRecord rec{date_or_throw(lineno, f[0]), country_or_throw(lineno, f[1]),
                              std::string(f[2]), std::string(f[3]),
                              double_or_throw(lineno, f[4])};
        if (rec.metric.empty() || rec.key.empty()) {
            throw ParseError(lineno, "metric and key must be non-empty");
        }
        if (convert_percent) rec.value /= 100.0;
        if (rec.value < 0.0 || rec.value > 1.0) {
            throw OutOfRange("value " + std::string(f[4]) + " at line " + std::to_string(lineno) +
                             " is not a fraction in [0,1]");
        }
        if (!seen.insert({rec.date, rec.country, rec.metric, rec.key}).second) {
            throw DuplicateKey(format_date(rec.date) + "," + rec.country.str() + "," +
                               rec.metric + "," + rec.key);
        }
        records.push_back(std::move(rec));
    }
    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        return std::tie(a.metric, a.country, a.key, a.date) <
               std::tie(b.metric, b.country, b.key, b.date);
    });
    return records;
}

std::vector<RankRecord> parse_ranks(std::string_view bytes) {
    auto lines = split_lines(bytes);
    require_header(lines, "country,month,kind,rank");
    std::vector<RankRecord> records;
    std::set<std::tuple<CountryCode, YearMonth, NetworkKind>> seen;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        auto [lineno, line] = lines[k];
        auto f = fields_or_throw(lineno, line, 4);
        CountryCode cc = country_or_throw(lineno, f[0]);
        auto month = try_parse_year_month(f[1]);
        if (!month) throw ParseError(lineno, "invalid month '" + std::string(f[1]) + "'");
        NetworkKind kind;
        if (f[2] == "fixed") {
            kind = NetworkKind::fixed;
        } else if (f[2] == "mobile") {
            kind = NetworkKind::mobile;
        } else {
            throw ParseError(lineno, "kind must be fixed or mobile, got '" + std::string(f[2]) + "'");
        }
        std::int64_t rank = int_or_throw(lineno, f[3]);
        if (rank < 1) throw ParseError(lineno, "rank must be a positive 1-based integer");
        if (!seen.insert({cc, *month, kind}).second) {
            throw DuplicateKey(cc.str() + "," + format_year_month(*month) + "," +
                               std::string(to_string(kind)));
        }
        records.push_back({cc, *month, kind, static_cast<int>(rank)});
    }
    std::sort(records.begin(), records.end(), [](const auto& a, const auto& b) {
        return std::tie(a.country, a.network_kind, a.month) <
               std::tie(b.country, b.network_kind, b.month);
    });
    return records;
}

TimestampedSeries parse_traffic_series(std::string_view bytes) {
    auto lines = split_lines(bytes);
    require_header(lines, "timestamp,value");
    std::vector<TimePoint> points;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        auto [lineno, line] = lines[k];
        auto f = fields_or_throw(lineno, line, 2);
        auto ts = try_parse_timestamp(f[0]);
        if (!ts) throw ParseError(lineno, "invalid timestamp '" + std::string(f[0]) + "'");
        points.push_back({*ts, double_or_throw(lineno, f[1])});
    }
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return a.at < b.at; });
    for (std::size_t k = 1; k < points.size(); ++k) {
        if (points[k].at == points[k - 1].at) {
            throw DuplicateKey(format_timestamp(points[k].at));
        }
    }
    return TimestampedSeries::create("traffic", "normalized rate", std::move(points));
}

std::vector<SiteAnalyticsEntry> parse_site_entries(std::string_view bytes, bool convert_percent) {
    json doc = json_or_throw(bytes);
    if (!doc.is_array()) throw ParseError(1, "expected a JSON array of site entries");
    std::vector<SiteAnalyticsEntry> entries;
    std::unordered_set<std::string> seen;
    for (std::size_t idx = 0; idx < doc.size(); ++idx) {
        const json& e = doc[idx];
        if (!e.is_object() || !e.contains("site") || !e.contains("monthly_visits") ||
            !e.contains("shares") || !e["site"].is_string() ||
            !e["monthly_visits"].is_number() || !e["shares"].is_object()) {
            throw ParseError(idx + 1, "entry must be {site, monthly_visits, shares}");
        }
        SiteAnalyticsEntry entry;
        entry.site = e["site"].get<std::string>();
        entry.monthly_visits = e["monthly_visits"].get<double>();
        if (!(entry.monthly_visits > 0.0) || !std::isfinite(entry.monthly_visits)) {
            throw ParseError(idx + 1, "monthly_visits must be positive for " + entry.site);
        }
        if (!seen.insert(entry.site).second) throw DuplicateKey(entry.site);
        for (const auto& [key, val] : e["shares"].items()) {
            auto cc = CountryCode::try_parse(key);
            if (!cc || !val.is_number()) {
                throw ParseError(idx + 1, "bad share entry '" + key + "' for " + entry.site);
            }
            double fraction = val.get<double>();
            if (convert_percent) fraction /= 100.0;
            entry.shares[*cc] = fraction;
        }
        entries.push_back(std::move(entry));
    }
    return entries;
}

AnalyticsData build_analytics(const std::vector<SiteAnalyticsEntry>& entries) {
    if (entries.empty()) throw ParseError(1, "no site entries");
    std::vector<SiteShares> raw;
    std::vector<std::string> sites;
    Eigen::VectorXd volumes(static_cast<Eigen::Index>(entries.size()));
    for (std::size_t j = 0; j < entries.size(); ++j) {
        raw.push_back({entries[j].site, entries[j].shares});
        sites.push_back(entries[j].site);
        volumes[static_cast<Eigen::Index>(j)] = entries[j].monthly_visits;
    }
    return AnalyticsData{rebucket(raw), VolumeVector::create(std::move(sites), std::move(volumes))};
}

AnalyticsData parse_site_analytics(std::string_view bytes, bool convert_percent) {
    return build_analytics(parse_site_entries(bytes, convert_percent));
}

VolumeVector parse_volumes(std::string_view bytes) {
    json doc = json_or_throw(bytes);
    if (!doc.is_array() || doc.empty()) throw ParseError(1, "expected a JSON array of sites");
    std::vector<std::string> sites;
    Eigen::VectorXd volumes(static_cast<Eigen::Index>(doc.size()));
    std::unordered_set<std::string> seen;
    for (std::size_t idx = 0; idx < doc.size(); ++idx) {
        const json& e = doc[idx];
        if (!e.is_object() || !e.contains("site") || !e.contains("monthly_visits") ||
            !e["site"].is_string() || !e["monthly_visits"].is_number()) {
            throw ParseError(idx + 1, "entry must contain site and monthly_visits");
        }
        std::string site = e["site"].get<std::string>();
        if (!seen.insert(site).second) throw DuplicateKey(site);
        sites.push_back(std::move(site));
        volumes[static_cast<Eigen::Index>(idx)] = e["monthly_visits"].get<double>();
        if (!(volumes[static_cast<Eigen::Index>(idx)] > 0.0)) {
            throw ParseError(idx + 1, "monthly_visits must be positive");
        }
    }
    return VolumeVector::create(std::move(sites), std::move(volumes));
}

std::vector<SiteAnalyticsEntry> filter_top_sites(std::vector<SiteAnalyticsEntry> entries,
                                                 const std::vector<std::string>& exclusions) {
    std::unordered_set<std::string> drop(exclusions.begin(), exclusions.end());
    std::erase_if(entries, [&](const SiteAnalyticsEntry& e) { return drop.contains(e.site); });
    if (entries.empty()) throw EmptySelection("every site was excluded");
    return entries;
}

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

std::string write_flows(const std::vector<FlowRecord>& records) {
    std::string out = "date,country,individuals\n";
    for (const auto& r : records) {
        out += format_date(r.date) + "," + r.destination.str() + "," +
               std::to_string(r.individuals) + "\n";
    }
    return out;
}

std::string write_probe_status(const std::vector<ProbeStatusRecord>& records) {
    std::string out = "probe_id,date,connected\n";
    for (const auto& r : records) {
        out += std::to_string(r.probe_id) + "," + format_date(r.date) + "," +
               (r.connected ? "1" : "0") + "\n";
    }
    return out;
}

std::string write_share_series(const std::vector<ShareSeriesRecord>& records) {
    std::string out = "date,country,metric,key,value\n";
    for (const auto& r : records) {
        out += format_date(r.date) + "," + r.country.str() + "," + r.metric + "," + r.key +
               "," + format_value(r.value) + "\n";
    }
    return out;
}

std::string write_ranks(const std::vector<RankRecord>& records) {
    std::string out = "country,month,kind,rank\n";
    for (const auto& r : records) {
        out += r.country.str() + "," + format_year_month(r.month) + "," +
               std::string(to_string(r.network_kind)) + "," + std::to_string(r.rank) + "\n";
    }
    return out;
}

std::string write_traffic_series(const TimestampedSeries& series) {
    std::string out = "timestamp,value\n";
    for (const auto& p : series.points) {
        out += format_timestamp(p.at) + "," + format_value(p.value) + "\n";
    }
    return out;
}

std::string write_site_entries(const std::vector<SiteAnalyticsEntry>& entries) {
    json doc = json::array();
    for (const auto& e : entries) {
        json shares = json::object();
        for (const auto& [cc, fraction] : e.shares) shares[cc.str()] = fraction;
        doc.push_back({{"site", e.site},
                       {"monthly_visits", e.monthly_visits},
                       {"shares", std::move(shares)}});
    }
    return doc.dump(2) + "\n";
}

}  // namespace netpresence
