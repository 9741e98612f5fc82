#include "netpresence/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>

#include "netpresence/errors.hpp"

namespace netpresence {

CorrelationResult pearson(const DailySeries& a, const DailySeries& b, int lag_days) {
    std::vector<double> xs, ys;
    auto ia = a.points.begin();
    auto ib = b.points.begin();
    const auto lag = std::chrono::days(lag_days);
    while (ia != a.points.end() && ib != b.points.end()) {
        const Date shifted = ib->date + lag;
        if (ia->date < shifted) {
            ++ia;
        } else if (shifted < ia->date) {
            ++ib;
        } else {
            xs.push_back(ia->value);
            ys.push_back(ib->value);
            ++ia;
            ++ib;
        }
    }
    const auto n = static_cast<int>(xs.size());
    if (n < 3) {
        throw InsufficientOverlap("'" + a.name + "' vs '" + b.name + "' at lag " +
                                  std::to_string(lag_days) + ": " + std::to_string(n) +
                                  " common dates");
    }
    double mx = 0.0, my = 0.0;
    for (int i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (int i = 0; i < n; ++i) {
        const double dx = xs[i] - mx;
        const double dy = ys[i] - my;
        sxx += dx * dx;
        syy += dy * dy;
        sxy += dx * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw ConstantSeries(sxx == 0.0 ? a.name : b.name);
    }
    double r = sxy / std::sqrt(sxx * syy);
    r = std::clamp(r, -1.0, 1.0);
    return CorrelationResult{r, n, lag_days};
}

DailySeries aggregate_flow(const std::vector<FlowRecord>& flows) {
    std::map<Date, std::int64_t> totals;
    for (const auto& f : flows) totals[f.date] += f.individuals;
    std::vector<DailyPoint> points;
    points.reserve(totals.size());
    for (const auto& [date, total] : totals) {
        points.push_back({date, static_cast<double>(total)});
    }
    return DailySeries::create("total daily flow", "individuals", std::move(points));
}

DailySeries cumulative(const DailySeries& series) {
    std::vector<DailyPoint> points = series.points;
    double running = 0.0;
    for (auto& p : points) {
        running += p.value;
        p.value = running;
    }
    return DailySeries::create(series.name + " (cumulative)", series.unit, std::move(points));
}

}  // namespace netpresence
