#pragma once

#include <map>
#include <string>
#include <vector>

#include "netpresence/ingest.hpp"
#include "netpresence/model.hpp"

namespace netpresence {

//! Pre/post-event comparison of a daily series. Means are taken over the
//! days that actually carry data; the contributing-day counts are reported
//! so consumers can judge coverage.
struct WindowChange {
    double pre_mean;
    double post_mean;
    double percent_change;  // 100 * (post_mean - pre_mean) / pre_mean
    int pre_count;
    int post_count;
};

//! Collapses a timestamped series to one point per UTC day, keeping the
//! maximum sample of each day.
DailySeries daily_peak(const TimestampedSeries& intraday);

//! Divides every value by the series maximum; the output maximum is exactly 1.
DailySeries normalize_max(const DailySeries& series);

//! Pointwise numerator/denominator over the common dates; dates where the
//! denominator is not strictly positive are dropped.
DailySeries ratio_series(const DailySeries& numerator, const DailySeries& denominator);

//! Change between the pre-window [event - pre_days, event - 1] and the
//! post-window [event, event + post_days - 1], both inclusive. Missing days
//! are skipped, never imputed.
WindowChange window_change(const DailySeries& series, const EventWindow& window);

//! Connected-probe count per day. Days that appear only with disconnected
//! records report zero.
DailySeries count_connected(const std::vector<ProbeStatusRecord>& records);

//! Arithmetic mean over the available days in the closed interval.
double mean_over(const DailySeries& series, Date start, Date end);

//! Rank movement per network kind between two months: rank(to) - rank(from).
//! Positive means the country was ranked lower (worse). Every kind recorded
//! for the country must carry both months.
std::map<NetworkKind, int> rank_delta(const std::vector<RankRecord>& records,
                                      CountryCode country, YearMonth from_month,
                                      YearMonth to_month);

//! Extracts the date-ordered series of one (country, metric, key) selection.
DailySeries share_trend(const std::vector<ShareSeriesRecord>& records, CountryCode country,
                        const std::string& metric, const std::string& key);

}  // namespace netpresence
