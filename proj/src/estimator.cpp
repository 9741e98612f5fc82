#include "netpresence/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "netpresence/errors.hpp"

namespace netpresence {

EstimatorInput EstimatorInput::create(ShareMatrix shares, VolumeVector volumes) {
    validate_pairing(shares, volumes);
    return EstimatorInput{std::move(shares), std::move(volumes)};
}

Eigen::VectorXd cross_site_stdev(const EstimatorInput& input, const Eigen::VectorXd& p_hat) {
    return weighted_share_stdev(input.shares.shares, volume_weights(input.volumes.volumes),
                                p_hat);
}

Eigen::VectorXd binomial_stderr(const Eigen::VectorXd& p_hat, double total_visits) {
    if (!(total_visits > 0.0)) {
        throw InvariantViolation("total visits must be positive");
    }
    return (p_hat.array() * (1.0 - p_hat.array()) / total_visits).max(0.0).sqrt();
}

PresenceEstimate estimate(const EstimatorInput& input) {
    const Eigen::VectorXd w = volume_weights(input.volumes.volumes);
    const Eigen::VectorXd p = pooled_shares(input.shares.shares, w);
    const Eigen::VectorXd sd = weighted_share_stdev(input.shares.shares, w, p);
    const Eigen::VectorXd se = binomial_stderr(p.cwiseMax(0.0).cwiseMin(1.0),
                                               input.total_visits());

    const auto& cs = input.shares.countries;
    std::vector<Eigen::Index> order(cs.size());
    std::iota(order.begin(), order.end(), Eigen::Index{0});
    std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
        const bool za = cs[a].is_rest_of_world(), zb = cs[b].is_rest_of_world();
        if (za != zb) return zb;            // "ZZ" sorts last
        if (p[a] != p[b]) return p[a] > p[b];
        return cs[a] < cs[b];
    });

    const auto n = static_cast<Eigen::Index>(order.size());
    std::vector<CountryCode> countries;
    countries.reserve(order.size());
    Eigen::VectorXd ps(n), sds(n), ses(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        countries.push_back(cs[order[i]]);
        ps[i] = p[order[i]];
        sds[i] = sd[order[i]];
        ses[i] = se[order[i]];
    }
    return PresenceEstimate::create(std::move(countries), std::move(ps), std::move(sds),
                                    std::move(ses));
}

PresenceEstimate to_absolute(const PresenceEstimate& estimate, double total_population) {
    if (!(total_population > 0.0)) {
        throw InvariantViolation("total population must be positive");
    }
    Eigen::VectorXd absolute = estimate.p_hat * total_population;
    return PresenceEstimate::create(estimate.countries, estimate.p_hat, estimate.stdev,
                                    estimate.binomial_stderr, total_population,
                                    std::move(absolute));
}

PresenceEstimate align_to(const PresenceEstimate& estimate,
                          const std::vector<CountryCode>& countries) {
    if (countries.size() != estimate.countries.size()) {
        throw CountryMismatch("estimate has " + std::to_string(estimate.countries.size()) +
                              " countries, target has " + std::to_string(countries.size()));
    }
    std::map<CountryCode, Eigen::Index> index;
    for (std::size_t i = 0; i < estimate.countries.size(); ++i) {
        index[estimate.countries[i]] = static_cast<Eigen::Index>(i);
    }
    const auto n = static_cast<Eigen::Index>(countries.size());
    Eigen::VectorXd ps(n), sds(n);
    std::optional<Eigen::VectorXd> ses, abs_;
    if (estimate.binomial_stderr) ses.emplace(n);
    if (estimate.absolute) abs_.emplace(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        auto it = index.find(countries[i]);
        if (it == index.end()) {
            throw CountryMismatch("estimate lacks country " + countries[i].str());
        }
        ps[i] = estimate.p_hat[it->second];
        sds[i] = estimate.stdev[it->second];
        if (ses) (*ses)[i] = (*estimate.binomial_stderr)[it->second];
        if (abs_) (*abs_)[i] = (*estimate.absolute)[it->second];
    }
    return PresenceEstimate::create(countries, std::move(ps), std::move(sds), std::move(ses),
                                    estimate.total_population, std::move(abs_));
}

}  // namespace netpresence
