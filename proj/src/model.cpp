#include "netpresence/model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include "netpresence/errors.hpp"

namespace netpresence {

std::optional<CountryCode> CountryCode::try_parse(std::string_view text) {
    if (text.size() != 2) return std::nullopt;
    if (text[0] < 'A' || text[0] > 'Z' || text[1] < 'A' || text[1] > 'Z') return std::nullopt;
    return CountryCode(text[0], text[1]);
}

CountryCode CountryCode::parse(std::string_view text) {
    auto cc = try_parse(text);
    if (!cc) {
        throw InvariantViolation("invalid country code: '" + std::string(text) +
                                 "' (want two uppercase letters)");
    }
    return *cc;
}

bool rest_of_world_last_less(const CountryCode& a, const CountryCode& b) {
    if (a.is_rest_of_world() != b.is_rest_of_world()) return b.is_rest_of_world();
    return a < b;
}

namespace {

void require_unique_sites(const std::vector<std::string>& sites) {
    std::unordered_set<std::string> seen;
    for (const auto& s : sites) {
        if (!seen.insert(s).second) {
            throw InvariantViolation("duplicate site identifier: " + s);
        }
    }
}

void require_unique_countries(const std::vector<CountryCode>& countries) {
    std::set<CountryCode> seen;
    for (const auto& c : countries) {
        if (!seen.insert(c).second) {
            throw InvariantViolation("duplicate country column: " + c.str());
        }
    }
}

}  // namespace

ShareMatrix ShareMatrix::create(std::vector<std::string> sites,
                                std::vector<CountryCode> countries,
                                Eigen::MatrixXd shares) {
    if (sites.empty() || countries.empty()) {
        throw InvariantViolation("share matrix needs at least one site and one country");
    }
    if (shares.rows() != static_cast<Eigen::Index>(sites.size()) ||
        shares.cols() != static_cast<Eigen::Index>(countries.size())) {
        throw InvariantViolation("share matrix dimensions do not match site/country lists");
    }
    require_unique_sites(sites);
    require_unique_countries(countries);
    for (Eigen::Index j = 0; j < shares.rows(); ++j) {
        double sum = 0.0;
        for (Eigen::Index i = 0; i < shares.cols(); ++i) {
            double v = shares(j, i);
            if (!std::isfinite(v) || v < 0.0 || v > 1.0) {
                throw InvariantViolation("share out of [0,1] for site " + sites[j] +
                                         ", country " + countries[i].str());
            }
            sum += v;
        }
        if (std::abs(sum - 1.0) > kRowSumTolerance) {
            throw InvariantViolation("share row for site " + sites[j] +
                                     " sums to " + std::to_string(sum) + ", expected 1");
        }
    }
    return ShareMatrix{std::move(sites), std::move(countries), std::move(shares)};
}

VolumeVector VolumeVector::create(std::vector<std::string> sites, Eigen::VectorXd volumes) {
    if (sites.empty()) throw InvariantViolation("volume vector needs at least one site");
    if (volumes.size() != static_cast<Eigen::Index>(sites.size())) {
        throw InvariantViolation("volume count does not match site list");
    }
    require_unique_sites(sites);
    for (Eigen::Index j = 0; j < volumes.size(); ++j) {
        if (!std::isfinite(volumes[j]) || volumes[j] <= 0.0) {
            throw InvariantViolation("volume for site " + sites[j] + " must be positive");
        }
    }
    return VolumeVector{std::move(sites), std::move(volumes)};
}

PresenceEstimate PresenceEstimate::create(std::vector<CountryCode> countries,
                                          Eigen::VectorXd p_hat, Eigen::VectorXd stdev,
                                          std::optional<Eigen::VectorXd> binomial_stderr,
                                          std::optional<double> total_population,
                                          std::optional<Eigen::VectorXd> absolute) {
    const auto n = static_cast<Eigen::Index>(countries.size());
    if (n == 0) throw InvariantViolation("presence estimate needs at least one country");
    require_unique_countries(countries);
    if (p_hat.size() != n || stdev.size() != n) {
        throw InvariantViolation("estimate vector lengths do not match country list");
    }
    double sum = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
        if (!std::isfinite(p_hat[i]) || p_hat[i] < -1e-12 || p_hat[i] > 1.0 + 1e-12) {
            throw InvariantViolation("p_hat entry out of [0,1] for " + countries[i].str());
        }
        if (!std::isfinite(stdev[i]) || stdev[i] < 0.0) {
            throw InvariantViolation("stdev must be nonnegative for " + countries[i].str());
        }
        sum += p_hat[i];
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
        throw InvariantViolation("p_hat sums to " + std::to_string(sum) + ", expected 1");
    }
    p_hat = p_hat.cwiseMax(0.0).cwiseMin(1.0);
    if (binomial_stderr && binomial_stderr->size() != n) {
        throw InvariantViolation("binomial stderr length does not match country list");
    }
    if (absolute.has_value() != total_population.has_value()) {
        throw InvariantViolation("absolute counts and total population must come together");
    }
    if (total_population) {
        if (!(*total_population > 0.0)) {
            throw InvariantViolation("total population must be positive");
        }
        if (absolute->size() != n) {
            throw InvariantViolation("absolute count length does not match country list");
        }
        for (Eigen::Index i = 0; i < n; ++i) {
            double want = p_hat[i] * *total_population;
            double tol = kAbsoluteRelTolerance * std::max(std::abs(want), 1.0);
            if (std::abs((*absolute)[i] - want) > tol) {
                throw InvariantViolation("absolute count inconsistent with p_hat for " +
                                         countries[i].str());
            }
        }
    }
    return PresenceEstimate{std::move(countries), std::move(p_hat), std::move(stdev),
                            std::move(binomial_stderr), total_population, std::move(absolute)};
}

DailySeries DailySeries::create(std::string name, std::string unit,
                                std::vector<DailyPoint> points) {
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (!std::isfinite(points[k].value)) {
            throw InvariantViolation("non-finite value in series '" + name + "' at " +
                                     format_date(points[k].date));
        }
        if (k > 0 && points[k].date <= points[k - 1].date) {
            throw InvariantViolation("dates not strictly increasing in series '" + name +
                                     "' at " + format_date(points[k].date));
        }
    }
    return DailySeries{std::move(name), std::move(unit), std::move(points)};
}

TimestampedSeries TimestampedSeries::create(std::string name, std::string unit,
                                            std::vector<TimePoint> points) {
    for (std::size_t k = 0; k < points.size(); ++k) {
        if (!std::isfinite(points[k].value)) {
            throw InvariantViolation("non-finite value in series '" + name + "' at " +
                                     format_timestamp(points[k].at));
        }
        if (k > 0 && points[k].at <= points[k - 1].at) {
            throw InvariantViolation("timestamps not strictly increasing in series '" +
                                     name + "' at " + format_timestamp(points[k].at));
        }
    }
    return TimestampedSeries{std::move(name), std::move(unit), std::move(points)};
}

EventWindow EventWindow::create(Date event_date, int pre_days, int post_days) {
    if (pre_days < 1 || post_days < 1) {
        throw InvariantViolation("event window lengths must be at least one day");
    }
    return EventWindow{event_date, pre_days, post_days};
}

void validate_pairing(const ShareMatrix& shares, const VolumeVector& volumes) {
    const std::size_t k = std::min(shares.sites.size(), volumes.sites.size());
    for (std::size_t j = 0; j < k; ++j) {
        if (shares.sites[j] != volumes.sites[j]) {
            throw PairingMismatch(j, "'" + shares.sites[j] + "' vs '" + volumes.sites[j] + "'");
        }
    }
    if (shares.sites.size() != volumes.sites.size()) {
        throw PairingMismatch(k, "share matrix has " + std::to_string(shares.sites.size()) +
                                     " sites, volume vector has " +
                                     std::to_string(volumes.sites.size()));
    }
}

ShareMatrix rebucket(const std::vector<SiteShares>& raw) {
    if (raw.empty()) throw InvariantViolation("rebucket needs at least one site");
    std::set<CountryCode> listed;
    for (const auto& site : raw) {
        double sum = 0.0;
        for (const auto& [cc, fraction] : site.shares) {
            if (!std::isfinite(fraction) || fraction < 0.0 || fraction > 1.0) {
                throw InvalidFraction("site " + site.site + ", country " + cc.str());
            }
            sum += fraction;
            listed.insert(cc);
        }
        if (sum > 1.0 + kShareSumSlack) {
            throw InvalidFraction("site " + site.site + " shares sum to " +
                                  std::to_string(sum) + " (> 1)");
        }
    }
    listed.insert(CountryCode::rest_of_world());

    std::vector<CountryCode> countries(listed.begin(), listed.end());
    std::sort(countries.begin(), countries.end(), rest_of_world_last_less);

    std::vector<std::string> sites;
    sites.reserve(raw.size());
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(raw.size()),
                                              static_cast<Eigen::Index>(countries.size()));
    const Eigen::Index zz = m.cols() - 1;
    for (std::size_t j = 0; j < raw.size(); ++j) {
        sites.push_back(raw[j].site);
        double sum = 0.0;
        for (std::size_t i = 0; i < countries.size(); ++i) {
            auto it = raw[j].shares.find(countries[i]);
            if (it != raw[j].shares.end()) {
                m(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(i)) = it->second;
                sum += it->second;
            }
        }
        // Residuals below the row-sum tolerance are noise, not unattributed
        // mass; dropping them keeps rebucket idempotent on complete rows.
        const double residual = 1.0 - sum;
        if (residual > kShareSumSlack) {
            m(static_cast<Eigen::Index>(j), zz) += residual;
        }
    }
    return ShareMatrix::create(std::move(sites), std::move(countries), std::move(m));
}

}  // namespace netpresence
