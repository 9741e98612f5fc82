#include "netpresence/timeseries.hpp"

#include <algorithm>
#include <cmath>

#include "netpresence/errors.hpp"

namespace netpresence {

DailySeries daily_peak(const TimestampedSeries& intraday) {
    if (intraday.empty()) throw EmptySeries("daily_peak of '" + intraday.name + "'");
    std::vector<DailyPoint> points;
    for (const auto& p : intraday.points) {  // input is sorted by timestamp
        Date d = day_of(p.at);
        if (!points.empty() && points.back().date == d) {
            points.back().value = std::max(points.back().value, p.value);
        } else {
            points.push_back({d, p.value});
        }
    }
    return DailySeries::create(intraday.name, intraday.unit, std::move(points));
}

DailySeries normalize_max(const DailySeries& series) {
    if (series.empty()) throw EmptySeries("normalize_max of '" + series.name + "'");
    double max = series.points.front().value;
    for (const auto& p : series.points) max = std::max(max, p.value);
    if (!(max > 0.0)) throw NonPositiveMax(series.name);
    std::vector<DailyPoint> points = series.points;
    for (auto& p : points) p.value /= max;
    return DailySeries::create(series.name, "fraction of peak", std::move(points));
}

DailySeries ratio_series(const DailySeries& numerator, const DailySeries& denominator) {
    std::vector<DailyPoint> points;
    auto a = numerator.points.begin();
    auto b = denominator.points.begin();
    while (a != numerator.points.end() && b != denominator.points.end()) {
        if (a->date < b->date) {
            ++a;
        } else if (b->date < a->date) {
            ++b;
        } else {
            if (b->value > 0.0) points.push_back({a->date, a->value / b->value});
            ++a;
            ++b;
        }
    }
    if (points.empty()) {
        throw EmptyIntersection("'" + numerator.name + "' / '" + denominator.name + "'");
    }
    return DailySeries::create(numerator.name + "/" + denominator.name, "ratio",
                               std::move(points));
}

WindowChange window_change(const DailySeries& series, const EventWindow& window) {
    using std::chrono::days;
    const Date pre_begin = window.event_date - days(window.pre_days);
    const Date pre_end = window.event_date - days(1);
    const Date post_begin = window.event_date;
    const Date post_end = window.event_date + days(window.post_days - 1);

    double pre_sum = 0.0, post_sum = 0.0;
    int pre_count = 0, post_count = 0;
    for (const auto& p : series.points) {
        if (p.date >= pre_begin && p.date <= pre_end) {
            pre_sum += p.value;
            ++pre_count;
        } else if (p.date >= post_begin && p.date <= post_end) {
            post_sum += p.value;
            ++post_count;
        }
    }
    if (pre_count == 0) throw InsufficientData("pre");
    if (post_count == 0) throw InsufficientData("post");
    const double pre_mean = pre_sum / pre_count;
    const double post_mean = post_sum / post_count;
    if (pre_mean == 0.0) throw ZeroBaseline(series.name);
    return WindowChange{pre_mean, post_mean, 100.0 * (post_mean - pre_mean) / pre_mean,
                        pre_count, post_count};
}

DailySeries count_connected(const std::vector<ProbeStatusRecord>& records) {
    std::map<Date, double> counts;
    for (const auto& r : records) {
        auto [it, _] = counts.try_emplace(r.date, 0.0);
        if (r.connected) it->second += 1.0;
    }
    std::vector<DailyPoint> points;
    points.reserve(counts.size());
    for (const auto& [date, count] : counts) points.push_back({date, count});
    return DailySeries::create("connected probes", "probes", std::move(points));
}

double mean_over(const DailySeries& series, Date start, Date end) {
    double sum = 0.0;
    int count = 0;
    for (const auto& p : series.points) {
        if (p.date >= start && p.date <= end) {
            sum += p.value;
            ++count;
        }
    }
    if (count == 0) {
        throw InsufficientData(format_date(start) + ".." + format_date(end));
    }
    return sum / count;
}

std::map<NetworkKind, int> rank_delta(const std::vector<RankRecord>& records,
                                      CountryCode country, YearMonth from_month,
                                      YearMonth to_month) {
    std::map<NetworkKind, std::map<YearMonth, int>> by_kind;
    for (const auto& r : records) {
        if (r.country == country) by_kind[r.network_kind][r.month] = r.rank;
    }
    if (by_kind.empty()) throw MissingMonth("no rank records for " + country.str());
    std::map<NetworkKind, int> deltas;
    for (const auto& [kind, months] : by_kind) {
        auto from = months.find(from_month);
        auto to = months.find(to_month);
        if (from == months.end() || to == months.end()) {
            throw MissingMonth(country.str() + " " + std::string(to_string(kind)) + " lacks " +
                               format_year_month(from == months.end() ? from_month : to_month));
        }
        deltas[kind] = to->second - from->second;
    }
    return deltas;
}

DailySeries share_trend(const std::vector<ShareSeriesRecord>& records, CountryCode country,
                        const std::string& metric, const std::string& key) {
    std::vector<DailyPoint> points;
    for (const auto& r : records) {
        if (r.country == country && r.metric == metric && r.key == key) {
            points.push_back({r.date, r.value});
        }
    }
    if (points.empty()) {
        throw NoMatch(country.str() + "/" + metric + "/" + key);
    }
    std::sort(points.begin(), points.end(),
              [](const auto& a, const auto& b) { return a.date < b.date; });
    return DailySeries::create(metric + ":" + key + ":" + country.str(), "fraction",
                               std::move(points));
}

}  // namespace netpresence
