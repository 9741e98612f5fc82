#include <doctest.h>

#include <random>
#include <set>

#include "netpresence/errors.hpp"
#include "netpresence/ingest.hpp"
#include "helpers.hpp"

using namespace netpresence;
using test_helpers::cc;
using test_helpers::d;
using test_helpers::fixture_path;
using test_helpers::read_file;

TEST_CASE("parse_flows handles well-formed and malformed rows") {
    auto recs = parse_flows("date,country,individuals\n2022-02-25,PL,50000\n");
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].date == d("2022-02-25"));
    CHECK(recs[0].destination == cc("PL"));
    CHECK(recs[0].individuals == 50000);

    CHECK_THROWS_AS(parse_flows("date,country,individuals\n"
                                "2022-02-25,PL,1\n2022-02-25,PL,2\n"),
                    DuplicateKey);
    CHECK_THROWS_AS(parse_flows("date,country,individuals\n2022-02-25,PL,-3\n"), ParseError);
    CHECK_THROWS_AS(parse_flows("date,country\n"), ParseError);
    CHECK_THROWS_AS(parse_flows("date,country,individuals\n2022-13-01,PL,5\n"), ParseError);
    CHECK_THROWS_AS(parse_flows("date,country,individuals\n2022-02-25,Poland,5\n"), ParseError);
    CHECK_THROWS_AS(parse_flows(""), ParseError);
}

TEST_CASE("parse_flows output order is independent of input order") {
    auto a = parse_flows("date,country,individuals\n"
                         "2022-02-26,PL,7\n2022-02-25,SK,3\n2022-02-25,PL,5\n");
    auto b = parse_flows("date,country,individuals\n"
                         "2022-02-25,PL,5\n2022-02-25,SK,3\n2022-02-26,PL,7\n");
    CHECK(a == b);
    CHECK(a[0].destination == cc("PL"));
    CHECK(a[1].destination == cc("SK"));
    CHECK(a[2].date == d("2022-02-26"));
}

TEST_CASE("parse_probe_status validates the connected flag") {
    auto recs = parse_probe_status("probe_id,date,connected\n17,2022-02-23,1\n");
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].connected);
    CHECK(parse_probe_status("probe_id,date,connected\n").empty());
    CHECK_THROWS_AS(parse_probe_status("probe_id,date,connected\n17,2022-02-23,2\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_probe_status("probe_id,date,connected\n0,2022-02-23,1\n"),
                    ParseError);
    CHECK_THROWS_AS(parse_probe_status("probe_id,date,connected\n"
                                       "17,2022-02-23,1\n17,2022-02-23,0\n"),
                    DuplicateKey);
}

TEST_CASE("parse_share_series checks ranges and orders by metric, country, key, date") {
    auto recs = parse_share_series(
        "date,country,metric,key,value\n"
        "2022-05-01,DE,search_host,google.com.ua,0.0007\n");
    REQUIRE(recs.size() == 1);
    CHECK(recs[0].value == 0.0007);

    CHECK_THROWS_AS(parse_share_series("date,country,metric,key,value\n"
                                       "2022-05-01,DE,search_host,google.com.ua,1.5\n"),
                    OutOfRange);

    auto grouped = parse_share_series(
        "date,country,metric,key,value\n"
        "2022-05-02,DE,zmetric,k,0.1\n"
        "2022-05-01,DE,ametric,k,0.2\n"
        "2022-05-01,AT,zmetric,k,0.3\n"
        "2022-05-01,DE,zmetric,k,0.4\n");
    REQUIRE(grouped.size() == 4);
    CHECK(grouped[0].metric == "ametric");
    CHECK(grouped[1].country == cc("AT"));
    CHECK(grouped[2].date == d("2022-05-01"));
    CHECK(grouped[3].date == d("2022-05-02"));
}

TEST_CASE("parse_share_series converts percentages when asked") {
    auto recs = parse_share_series("date,country,metric,key,value\n"
                                   "2022-05-01,DE,search_host,google.com.ua,0.07\n",
                                   /*convert_percent=*/true);
    CHECK(recs[0].value == doctest::Approx(0.0007).epsilon(1e-12));
    // 4.84 is a valid percentage but not a valid fraction
    CHECK_THROWS_AS(parse_share_series("date,country,metric,key,value\n"
                                       "2022-05-01,DE,m,k,4.84\n"),
                    OutOfRange);
    CHECK_NOTHROW(parse_share_series("date,country,metric,key,value\n"
                                     "2022-05-01,DE,m,k,4.84\n",
                                     true));
}

TEST_CASE("parse_site_analytics mirrors rebucket and rejects zero volumes") {
    auto data = parse_site_analytics(
        R"([{"site": "s", "monthly_visits": 10, "shares": {"UA": 1.0}}])");
    CHECK(data.shares.site_count() == 1);
    CHECK(data.shares.country_count() == 2);
    CHECK(data.shares.shares(0, 0) == 1.0);
    CHECK(data.shares.shares(0, 1) == 0.0);
    CHECK(data.volumes.volumes[0] == 10.0);

    CHECK_THROWS_AS(parse_site_analytics(
                        R"([{"site": "s", "monthly_visits": 0, "shares": {"UA": 1.0}}])"),
                    ParseError);
    CHECK_THROWS_AS(parse_site_analytics(
                        R"([{"site": "s", "monthly_visits": 5, "shares": {"UA": 0.9, "PL": 0.3}}])"),
                    InvalidFraction);
    CHECK_THROWS_AS(parse_site_analytics("not json"), ParseError);
}

TEST_CASE("site analytics shares convert from percentages on demand") {
    const char* doc = R"([{"site": "s", "monthly_visits": 10, "shares": {"DE": 4.84}}])";
    CHECK_THROWS_AS(parse_site_analytics(doc), InvalidFraction);
    auto data = parse_site_analytics(doc, /*convert_percent=*/true);
    CHECK(data.shares.shares(0, 0) == doctest::Approx(0.0484).epsilon(1e-12));
}

TEST_CASE("bundled site analytics fixture has fifteen sites") {
    auto data = parse_site_analytics(read_file(fixture_path("site_analytics.json")));
    CHECK(data.shares.site_count() == 15);
    CHECK(data.volumes.volumes.size() == 15);
    CHECK(data.shares.countries.back().is_rest_of_world());
    CHECK_NOTHROW(validate_pairing(data.shares, data.volumes));
}

TEST_CASE("parse_traffic_series sorts and rejects duplicate timestamps") {
    std::string daily = "timestamp,value\n";
    for (int k = 1; k <= 60; ++k) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "2022-01-%02d,0.5\n", (k % 28) + 1);
        if (k <= 28) daily += buf;
    }
    CHECK(parse_traffic_series(daily).points.size() == 28);

    auto hourly = parse_traffic_series(
        "timestamp,value\n"
        "2022-01-02T05:00:00Z,0.2\n"
        "2022-01-01T05:00:00Z,0.1\n"
        "2022-01-01T06:00:00Z,0.3\n");
    REQUIRE(hourly.points.size() == 3);
    CHECK(hourly.points[0].value == 0.1);
    CHECK(hourly.points[2].value == 0.2);

    CHECK_THROWS_AS(parse_traffic_series("timestamp,value\n"
                                         "2022-01-01T05:00:00Z,0.1\n"
                                         "2022-01-01T05:00:00,0.2\n"),
                    DuplicateKey);
    CHECK_THROWS_AS(parse_traffic_series("timestamp,value\n2022-01-01T25:00:00Z,0.1\n"),
                    ParseError);
}

TEST_CASE("parse_ranks validates kind and positivity") {
    auto recs = parse_ranks("country,month,kind,rank\n"
                            "PL,2022-03,fixed,39\nPL,2022-02,fixed,38\n");
    REQUIRE(recs.size() == 2);
    CHECK(recs[0].month == parse_year_month("2022-02"));
    CHECK(recs[1].rank == 39);
    CHECK_THROWS_AS(parse_ranks("country,month,kind,rank\nPL,2022-02,fixed,0\n"), ParseError);
    CHECK_THROWS_AS(parse_ranks("country,month,kind,rank\nPL,2022-02,cable,3\n"), ParseError);
}

TEST_CASE("filter_top_sites removes exact matches and keeps order") {
    std::vector<SiteAnalyticsEntry> entries;
    for (int j = 0; j < 50; ++j) {
        entries.push_back({"site" + std::to_string(j), 10.0, {{cc("UA"), 0.5}}});
    }
    std::vector<std::string> drop;
    for (int j = 0; j < 35; ++j) drop.push_back("site" + std::to_string(j));
    auto kept = filter_top_sites(entries, drop);
    REQUIRE(kept.size() == 15);
    CHECK(kept.front().site == "site35");
    CHECK(kept.back().site == "site49");

    CHECK(filter_top_sites(entries, {}) == entries);

    std::vector<std::string> all;
    for (const auto& e : entries) all.push_back(e.site);
    CHECK_THROWS_AS(filter_top_sites(entries, all), EmptySelection);
}

TEST_CASE("serialize then parse is the identity on parsed record lists") {
    std::mt19937_64 rng(777);
    std::uniform_int_distribution<int> day(0, 300);
    std::uniform_int_distribution<int> count(0, 200000);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const Date base = d("2021-06-01");

    for (int trial = 0; trial < 25; ++trial) {
        std::vector<FlowRecord> flows;
        std::set<std::pair<Date, CountryCode>> used;
        for (int i = 0; i < 40; ++i) {
            FlowRecord r{base + std::chrono::days(day(rng)),
                         unit(rng) < 0.5 ? cc("PL") : cc("SK"), count(rng)};
            if (used.insert({r.date, r.destination}).second) flows.push_back(r);
        }
        std::sort(flows.begin(), flows.end(), [](const auto& a, const auto& b) {
            return std::tie(a.date, a.destination) < std::tie(b.date, b.destination);
        });
        CHECK(parse_flows(write_flows(flows)) == flows);

        // fractional values: a parsed dataset must survive write -> parse
        // bit-exactly (the writer keeps 9 significant digits)
        std::vector<ShareSeriesRecord> raw;
        for (int i = 0; i < 30; ++i) {
            raw.push_back({base + std::chrono::days(i), cc("DE"), "metric",
                           "key" + std::to_string(trial), unit(rng)});
        }
        auto canonical = parse_share_series(write_share_series(raw));
        CHECK(parse_share_series(write_share_series(canonical)) == canonical);

        std::vector<TimePoint> pts;
        for (int i = 0; i < 50; ++i) {
            pts.push_back({Timestamp(std::chrono::days(19000 + trial) +
                                     std::chrono::seconds(i * 3600 + i)),
                           unit(rng) * 10.0});
        }
        auto ts = TimestampedSeries::create("t", "", std::move(pts));
        auto tcanon = parse_traffic_series(write_traffic_series(ts));
        CHECK(parse_traffic_series(write_traffic_series(tcanon)).points == tcanon.points);
    }
}
