#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

#include "netpresence/cli.hpp"
#include "netpresence/date.hpp"
#include "netpresence/errors.hpp"
#include "netpresence/version.hpp"

using netpresence::RunConfig;

int main(int argc, char** argv) {
    CLI::App app{"Fuses per-country Internet-measurement exports into presence estimates "
                 "and time-domain displacement metrics"};
    app.set_version_flag("--version", netpresence::kVersion);
    app.require_subcommand(1);

    RunConfig cfg;
    std::string event, from_month, to_month;
    std::uint64_t seed = 0;
    bool seed_set = false;

    auto* estimate = app.add_subcommand(
        "estimate", "Estimate the per-country presence distribution from site analytics");
    estimate->add_option("--sites", cfg.sites_path, "site_analytics.json input")->required();
    estimate->add_option("--out", cfg.out_path, "output CSV path")->required();
    estimate->add_option("--exclude", cfg.exclude_sites,
                         "site identifiers to drop before estimating");
    estimate->add_option("--total-population", cfg.total_population,
                         "total tracked population for absolute counts");
    estimate->add_flag("--include-rest", cfg.include_rest,
                       "keep the rest-of-world bucket in the output table");
    estimate->add_flag("--percent", cfg.percent, "input shares are percentages");

    auto* trend = app.add_subcommand("trend", "Extract one share-series selection over time");
    trend->add_option("--series", cfg.series_path, "share_series.csv input")->required();
    trend->add_option("--country", cfg.country, "country code")->required();
    trend->add_option("--metric", cfg.metric, "metric name")->required();
    trend->add_option("--key", cfg.key, "category key")->required();
    trend->add_option("--out", cfg.out_path, "output CSV path")->required();
    trend->add_flag("--normalize", cfg.normalize, "divide by the series maximum");
    trend->add_flag("--percent", cfg.percent, "input values are percentages");

    auto* change = app.add_subcommand(
        "change", "Pre/post-event change of the daily-peak series");
    change->add_option("--series", cfg.series_path, "traffic.csv input")->required();
    change->add_option("--event", event, "event date YYYY-MM-DD")->required();
    change->add_option("--pre", cfg.pre_days, "pre-event window length in days")->required();
    change->add_option("--post", cfg.post_days, "post-event window length in days")->required();
    change->add_option("--out", cfg.out_path, "output JSON path")->required();

    auto* correlate = app.add_subcommand(
        "correlate", "Pearson lag sweep of a measurement series against daily flows");
    correlate->add_option("--flows", cfg.flows_path, "flows.csv input")->required();
    correlate->add_option("--series", cfg.series_path, "traffic.csv input")->required();
    correlate->add_option("--out", cfg.out_path, "output CSV path")->required();
    correlate->add_option("--lag-min", cfg.lag_min, "smallest lag in days");
    correlate->add_option("--lag-max", cfg.lag_max, "largest lag in days");

    auto* probes = app.add_subcommand("probes", "Daily connected-probe counts");
    probes->add_option("--probes", cfg.probes_path, "probes.csv input")->required();
    probes->add_option("--out", cfg.out_path, "output CSV path")->required();

    auto* ranks = app.add_subcommand("ranks", "Rank movement between two months");
    ranks->add_option("--ranks", cfg.ranks_path, "ranks.csv input")->required();
    ranks->add_option("--country", cfg.country, "country code")->required();
    ranks->add_option("--from", from_month, "baseline month YYYY-MM")->required();
    ranks->add_option("--to", to_month, "comparison month YYYY-MM")->required();
    ranks->add_option("--out", cfg.out_path, "output JSON path")->required();

    auto* synth = app.add_subcommand(
        "synth-validate", "Estimator recovery check against sampled synthetic data");
    synth->add_option("--truth", cfg.truth_path, "synth.json ground truth")->required();
    synth->add_option("--sites", cfg.sites_path, "volumes.json site volumes")->required();
    synth->add_option("--out", cfg.out_path, "output JSON path")->required();
    synth->add_option("--trials", cfg.trials, "number of seeded trials");
    synth->add_option("--seed", seed, "override the ground-truth base seed")
        ->each([&](const std::string&) { seed_set = true; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;  // usage problems are input errors
    }

    try {
        if (estimate->parsed()) cfg.command = RunConfig::Command::estimate;
        if (trend->parsed()) cfg.command = RunConfig::Command::trend;
        if (change->parsed()) {
            cfg.command = RunConfig::Command::change;
            cfg.event_date = netpresence::parse_date(event);
        }
        if (correlate->parsed()) cfg.command = RunConfig::Command::correlate;
        if (probes->parsed()) cfg.command = RunConfig::Command::probes;
        if (ranks->parsed()) {
            cfg.command = RunConfig::Command::ranks;
            cfg.from_month = netpresence::parse_year_month(from_month);
            cfg.to_month = netpresence::parse_year_month(to_month);
        }
        if (synth->parsed()) {
            cfg.command = RunConfig::Command::synth_validate;
            if (seed_set) cfg.seed_override = seed;
        }
    } catch (const netpresence::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.category());
    }

    return netpresence::run(cfg);
}
