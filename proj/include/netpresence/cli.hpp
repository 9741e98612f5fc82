#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "netpresence/date.hpp"

namespace netpresence {

//! Fully resolved parameters of one CLI invocation. Every knob the analysis
//! depends on is an explicit field here and is echoed into `run_meta.json`.
struct RunConfig {
    enum class Command { estimate, trend, change, correlate, probes, ranks, synth_validate };

    Command command = Command::estimate;

    // input paths (per command)
    std::string sites_path;
    std::string series_path;
    std::string flows_path;
    std::string probes_path;
    std::string ranks_path;
    std::string truth_path;

    std::string out_path;

    // estimate
    std::vector<std::string> exclude_sites;
    double total_population = 50'000'000.0;
    bool include_rest = false;

    // shared toggles
    bool percent = false;
    bool normalize = false;

    // change
    std::optional<Date> event_date;
    int pre_days = 14;
    int post_days = 14;

    // correlate
    int lag_min = -14;
    int lag_max = 14;

    // trend / ranks
    std::string country;
    std::string metric;
    std::string key;
    std::optional<YearMonth> from_month;
    std::optional<YearMonth> to_month;

    // synth-validate
    int trials = 20;
    std::optional<std::uint64_t> seed_override;
};

//! Runs one command end to end: parse all inputs, compute, then atomically
//! write the output file plus `run_meta.json` beside it. Throws Error on any
//! failure, leaving the output path untouched.
void execute(const RunConfig& config);

//! Exception-to-exit-status wrapper around execute (also reports to stderr):
//! 0 success, 1 input/parse error, 2 computation precondition, 3 I/O.
int run(const RunConfig& config);

}  // namespace netpresence
