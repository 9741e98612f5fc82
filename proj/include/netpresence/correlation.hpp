#pragma once

#include <vector>

#include "netpresence/ingest.hpp"
#include "netpresence/model.hpp"

namespace netpresence {

//! Pearson product-moment alignment between two daily series.
struct CorrelationResult {
    double r;      // in [-1, 1]
    int n;         // common dates used
    int lag_days;  // lag applied to the second series
};

//! Pearson r over the common dates after shifting series b forward in time
//! by `lag_days` (b's value of date d is compared against a's value of date
//! d + lag_days). Requires at least three common dates and non-constant
//! restrictions on the overlap.
CorrelationResult pearson(const DailySeries& a, const DailySeries& b, int lag_days);

//! Per-date sum of individuals over all destination countries, in integer
//! arithmetic.
DailySeries aggregate_flow(const std::vector<FlowRecord>& flows);

//! Running sum in date order.
DailySeries cumulative(const DailySeries& series);

}  // namespace netpresence
