#include <doctest.h>

#include <cmath>
#include <random>

#include "netpresence/correlation.hpp"
#include "netpresence/errors.hpp"
#include "netpresence/timeseries.hpp"
#include "helpers.hpp"

using namespace netpresence;
using test_helpers::cc;
using test_helpers::d;
using test_helpers::fixture_path;
using test_helpers::read_file;
using test_helpers::series;

namespace {

DailySeries random_series(std::mt19937_64& rng, int n, Date start = test_helpers::d("2022-01-01")) {
    std::uniform_real_distribution<double> value(0.0, 1.0);
    std::vector<DailyPoint> pts;
    for (int i = 0; i < n; ++i) pts.push_back({start + std::chrono::days(i), value(rng)});
    return DailySeries::create("r", "", std::move(pts));
}

}  // namespace

TEST_CASE("pearson self-correlation is one, anti-correlation minus one") {
    std::mt19937_64 rng(1);
    auto s = random_series(rng, 50);
    auto res = pearson(s, s, 0);
    CHECK(res.r == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.n == 50);
    CHECK(res.lag_days == 0);

    std::vector<DailyPoint> pts = s.points;
    for (auto& p : pts) p.value = -p.value;
    auto minus = DailySeries::create("m", "", pts);
    CHECK(pearson(s, minus, 0).r == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("independently seeded random series decorrelate") {
    int small = 0;
    for (int trial = 0; trial < 100; ++trial) {
        std::mt19937_64 ra(1000 + trial), rb(5000 + trial);
        auto a = random_series(ra, 1000);
        auto b = random_series(rb, 1000);
        if (std::abs(pearson(a, b, 0).r) < 0.1) ++small;
    }
    CHECK(small >= 98);
}

TEST_CASE("pearson is symmetric at lag zero") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_series(rng, 30);
        auto b = random_series(rng, 30);
        CHECK(pearson(a, b, 0).r == doctest::Approx(pearson(b, a, 0).r).epsilon(1e-12));
    }
}

TEST_CASE("pearson is invariant under positive affine maps") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> gain(0.1, 50.0);
    std::uniform_real_distribution<double> offset(-100.0, 100.0);
    for (int trial = 0; trial < 200; ++trial) {
        auto a = random_series(rng, 40);
        auto b = random_series(rng, 40);
        const double base = pearson(a, b, 0).r;
        auto pts = b.points;
        const double g = gain(rng), o = offset(rng);
        for (auto& p : pts) p.value = g * p.value + o;
        auto mapped = DailySeries::create("b'", "", pts);
        CHECK(pearson(a, mapped, 0).r == doctest::Approx(base).epsilon(1e-12));
    }
}

TEST_CASE("pearson honors the lag convention") {
    // b is a copy of a shifted 3 days earlier; at lag 3 they align perfectly
    auto a = series("a", {{"2022-01-04", 1.0}, {"2022-01-05", 5.0}, {"2022-01-06", 2.0},
                          {"2022-01-07", 8.0}});
    std::vector<DailyPoint> bp;
    for (const auto& p : a.points) bp.push_back({p.date - std::chrono::days(3), p.value});
    auto b = DailySeries::create("b", "", bp);
    auto res = pearson(a, b, 3);
    CHECK(res.r == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(res.n == 4);
    CHECK(res.lag_days == 3);
    CHECK_THROWS_AS(pearson(a, b, -3), InsufficientOverlap);
}

TEST_CASE("pearson rejects tiny overlaps and constant restrictions") {
    auto a = series("a", {{"2022-01-01", 1.0}, {"2022-01-02", 2.0}});
    CHECK_THROWS_AS(pearson(a, a, 0), InsufficientOverlap);

    auto flat = series("f", {{"2022-01-01", 3.0}, {"2022-01-02", 3.0}, {"2022-01-03", 3.0}});
    auto wavy = series("w", {{"2022-01-01", 1.0}, {"2022-01-02", 2.0}, {"2022-01-03", 4.0}});
    CHECK_THROWS_AS(pearson(flat, wavy, 0), ConstantSeries);
    CHECK_THROWS_AS(pearson(wavy, flat, 0), ConstantSeries);
}

TEST_CASE("aggregate_flow sums per date in integer arithmetic") {
    std::vector<FlowRecord> flows{{d("2022-02-25"), cc("PL"), 50000},
                                  {d("2022-02-25"), cc("SK"), 10000}};
    auto total = aggregate_flow(flows);
    REQUIRE(total.size() == 1);
    CHECK(total.points[0].value == 60000.0);

    CHECK(aggregate_flow({}).empty());

    std::vector<FlowRecord> single{{d("2022-02-25"), cc("PL"), 123},
                                   {d("2022-02-26"), cc("PL"), 456}};
    auto s = aggregate_flow(single);
    CHECK(s.points[0].value == 123.0);
    CHECK(s.points[1].value == 456.0);
}

TEST_CASE("aggregate_flow grand total is exact") {
    std::mt19937_64 rng(17);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<FlowRecord> flows;
        std::int64_t want = 0;
        const int n = static_cast<int>(rng() % 200);
        for (int i = 0; i < n; ++i) {
            std::int64_t v = static_cast<std::int64_t>(rng() % 1000000);
            want += v;
            flows.push_back({d("2022-02-24") + std::chrono::days(static_cast<int>(rng() % 60)),
                             cc("PL"), v});
        }
        double got = 0.0;
        if (n > 0) {
            for (const auto& p : aggregate_flow(flows).points) got += p.value;
        }
        CHECK(got == static_cast<double>(want));
    }
}

TEST_CASE("cumulative is a prefix sum and monotone for nonnegative input") {
    auto s = series("s", {{"2022-01-01", 1.0}, {"2022-01-02", 2.0}, {"2022-01-03", 3.0}});
    auto out = cumulative(s);
    CHECK(out.points[0].value == 1.0);
    CHECK(out.points[1].value == 3.0);
    CHECK(out.points[2].value == 6.0);
    CHECK(cumulative(DailySeries::create("s", "", {})).empty());

    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> value(0.0, 10.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<DailyPoint> pts;
        const int n = static_cast<int>(rng() % 100);
        for (int i = 0; i < n; ++i) pts.push_back({d("2022-01-01") + std::chrono::days(i), value(rng)});
        auto c = cumulative(DailySeries::create("s", "", pts));
        for (std::size_t i = 1; i < c.points.size(); ++i) {
            CHECK(c.points[i].value >= c.points[i - 1].value);
        }
    }
}

TEST_CASE("bundled flow fixture accumulates to nearly six million") {
    auto flows = parse_flows(read_file(fixture_path("flows.csv")));
    auto total = cumulative(aggregate_flow(flows));
    REQUIRE_FALSE(total.empty());
    CHECK(total.points.back().value == 5953999.0);  // frozen fixture total
    CHECK(std::abs(total.points.back().value - 6e6) < 1e5);
}

TEST_CASE("flow series correlates with the traffic surge fixture") {
    // the Poland traffic fixture rises exactly when flows surge, so some lag
    // in [-14, 14] shows strong positive correlation
    auto flows = aggregate_flow(parse_flows(read_file(fixture_path("flows.csv"))));
    auto traffic = daily_peak(
        parse_traffic_series(read_file(fixture_path("pl_traffic.csv"))));
    double best = -2.0;
    for (int lag = -14; lag <= 14; ++lag) {
        try {
            best = std::max(best, pearson(flows, traffic, lag).r);
        } catch (const Error&) {
        }
    }
    CHECK(best > 0.3);
}
