#pragma once

#include <Eigen/Dense>

#include <vector>

#include "netpresence/model.hpp"

namespace netpresence {

//! A validated (shares, volumes) pair; site lists are guaranteed to match.
struct EstimatorInput {
    ShareMatrix shares;
    VolumeVector volumes;

    static EstimatorInput create(ShareMatrix shares, VolumeVector volumes);

    double total_visits() const { return volumes.volumes.sum(); }
};

// Pooling kernels, usable with any dense Eigen expression.

//! Volume weights w_j = A_j / sum(A).
template <typename Derived>
Eigen::VectorXd volume_weights(const Eigen::MatrixBase<Derived>& volumes) {
    return volumes.derived() / volumes.sum();
}

//! Pooled per-country share: p_i = sum_j w_j * x_{i,j} for a K x N share
//! matrix and K weights summing to one.
template <typename DerivedX, typename DerivedW>
Eigen::VectorXd pooled_shares(const Eigen::MatrixBase<DerivedX>& shares,
                              const Eigen::MatrixBase<DerivedW>& weights) {
    return shares.transpose() * weights;
}

//! Weighted standard deviation of each country's per-site shares around the
//! pooled value: sqrt( sum_j w_j * (x_{i,j} - p_i)^2 ).
template <typename DerivedX, typename DerivedW, typename DerivedP>
Eigen::VectorXd weighted_share_stdev(const Eigen::MatrixBase<DerivedX>& shares,
                                     const Eigen::MatrixBase<DerivedW>& weights,
                                     const Eigen::MatrixBase<DerivedP>& pooled) {
    Eigen::ArrayXXd centered =
        (shares.derived().rowwise() - pooled.derived().transpose()).array().square();
    return (centered.colwise() * weights.derived().array()).colwise().sum().sqrt();
}

//! Pooled maximum-likelihood presence estimate. Countries come back ordered
//! by descending p_hat with "ZZ" last (ties broken by code), and both the
//! cross-site stdev and the binomial standard error are attached.
PresenceEstimate estimate(const EstimatorInput& input);

//! Cross-site weighted STDEV per country, in the input's column order.
Eigen::VectorXd cross_site_stdev(const EstimatorInput& input, const Eigen::VectorXd& p_hat);

//! Classical standard error of a multinomial proportion estimated from
//! `total_visits` observations: sqrt(p(1-p)/total).
Eigen::VectorXd binomial_stderr(const Eigen::VectorXd& p_hat, double total_visits);

//! Attaches absolute head counts: absolute_i = p_hat_i * total_population.
PresenceEstimate to_absolute(const PresenceEstimate& estimate, double total_population);

//! Reorders an estimate to a caller-supplied country order. The country
//! sets must be equal.
PresenceEstimate align_to(const PresenceEstimate& estimate,
                          const std::vector<CountryCode>& countries);

}  // namespace netpresence
