#pragma once

#include <Eigen/Dense>

#include <array>
#include <compare>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "netpresence/date.hpp"

namespace netpresence {

// Validation tolerances shared by the model types.
inline constexpr double kRowSumTolerance = 1e-9;
inline constexpr double kShareSumSlack = 1e-9;
inline constexpr double kAbsoluteRelTolerance = 1e-6;

//! ISO 3166-1 alpha-2 country identifier. The reserved pseudo-code "ZZ"
//! denotes the rest-of-world bucket that absorbs visit mass not attributed
//! to any listed country, making multinomial outcome sets exhaustive.
class CountryCode {
public:
    static std::optional<CountryCode> try_parse(std::string_view text);
    static CountryCode parse(std::string_view text);
    static CountryCode rest_of_world() { return CountryCode('Z', 'Z'); }

    bool is_rest_of_world() const { return code_[0] == 'Z' && code_[1] == 'Z'; }
    std::string str() const { return std::string(code_.data(), 2); }

    auto operator<=>(const CountryCode&) const = default;

private:
    CountryCode(char a, char b) : code_{a, b} {}
    std::array<char, 2> code_;
};

//! Orders country codes ascending with the rest-of-world bucket forced last.
bool rest_of_world_last_less(const CountryCode& a, const CountryCode& b);

//! Per-site, per-country visit-share fractions. Row j holds site j's
//! distribution of visits over the country columns; every row sums to one
//! (within kRowSumTolerance) because the "ZZ" column absorbs the remainder.
struct ShareMatrix {
    std::vector<std::string> sites;       // K site identifiers
    std::vector<CountryCode> countries;   // N columns
    Eigen::MatrixXd shares;               // K x N, entries in [0, 1]

    static ShareMatrix create(std::vector<std::string> sites,
                              std::vector<CountryCode> countries,
                              Eigen::MatrixXd shares);

    Eigen::Index site_count() const { return shares.rows(); }
    Eigen::Index country_count() const { return shares.cols(); }
};

//! Monthly visit totals per site, used as pooling weights. Strictly positive,
//! and paired with a ShareMatrix carrying the identical site list.
struct VolumeVector {
    std::vector<std::string> sites;
    Eigen::VectorXd volumes;

    static VolumeVector create(std::vector<std::string> sites, Eigen::VectorXd volumes);
};

//! Estimated proportion of the tracked population per country, with the
//! volume-weighted cross-site share deviation as the headline uncertainty
//! and the classical multinomial standard error as a secondary diagnostic.
struct PresenceEstimate {
    std::vector<CountryCode> countries;
    Eigen::VectorXd p_hat;                          // fractions, sum to 1
    Eigen::VectorXd stdev;                          // cross-site weighted STDEV
    std::optional<Eigen::VectorXd> binomial_stderr; // sqrt(p(1-p)/total visits)
    std::optional<double> total_population;
    std::optional<Eigen::VectorXd> absolute;        // p_hat * total_population

    static PresenceEstimate create(std::vector<CountryCode> countries,
                                   Eigen::VectorXd p_hat, Eigen::VectorXd stdev,
                                   std::optional<Eigen::VectorXd> binomial_stderr = {},
                                   std::optional<double> total_population = {},
                                   std::optional<Eigen::VectorXd> absolute = {});
};

struct DailyPoint {
    Date date;
    double value;
    bool operator==(const DailyPoint&) const = default;
};

//! Date-indexed scalar series with strictly increasing dates; gaps permitted.
struct DailySeries {
    std::string name;
    std::string unit;
    std::vector<DailyPoint> points;

    static DailySeries create(std::string name, std::string unit,
                              std::vector<DailyPoint> points);

    bool empty() const { return points.empty(); }
    std::size_t size() const { return points.size(); }
};

struct TimePoint {
    Timestamp at;
    double value;
    bool operator==(const TimePoint&) const = default;
};

//! Timestamped series, possibly sub-daily, with strictly increasing instants.
struct TimestampedSeries {
    std::string name;
    std::string unit;
    std::vector<TimePoint> points;

    static TimestampedSeries create(std::string name, std::string unit,
                                    std::vector<TimePoint> points);

    bool empty() const { return points.empty(); }
};

//! Event date plus the pre/post window lengths used by change metrics.
struct EventWindow {
    Date event_date;
    int pre_days;
    int post_days;

    static EventWindow create(Date event_date, int pre_days, int post_days);
};

//! One site's raw country->fraction map as exported by an analytics source;
//! the listed fractions sum to at most one.
struct SiteShares {
    std::string site;
    std::map<CountryCode, double> shares;
};

//! Succeeds iff the two site lists match exactly in order and length.
void validate_pairing(const ShareMatrix& shares, const VolumeVector& volumes);

//! Completes raw per-site share maps into a full ShareMatrix: the union of
//! all listed countries becomes the column set (sorted, "ZZ" last) and each
//! site's unattributed remainder is assigned to "ZZ" so rows sum to one.
ShareMatrix rebucket(const std::vector<SiteShares>& raw);

}  // namespace netpresence
