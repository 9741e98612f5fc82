#include "netpresence/cli.hpp"

#include <openssl/evp.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "netpresence/correlation.hpp"
#include "netpresence/errors.hpp"
#include "netpresence/estimator.hpp"
#include "netpresence/ingest.hpp"
#include "netpresence/synth.hpp"
#include "netpresence/timeseries.hpp"
#include "netpresence/version.hpp"

namespace netpresence {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::json;

std::string read_input(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw Error(ErrorCategory::parse, "cannot read input file '" + path + "'");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) {
        throw Error(ErrorCategory::parse, "failed while reading '" + path + "'");
    }
    return std::move(buf).str();
}

std::string sha256_hex(std::string_view bytes) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
        throw IoError("sha256 digest failed");
    }
    static const char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xF]);
    }
    return out;
}

//! Write-then-rename so the destination is either absent or complete.
void atomic_write(const fs::path& path, std::string_view content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("failed writing '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at '" + path.string() + "'");
    }
}

std::string utc_now_string() {
    const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
    return format_timestamp(Timestamp(now.time_since_epoch()));
}

const char* command_name(RunConfig::Command c) {
    switch (c) {
        case RunConfig::Command::estimate: return "estimate";
        case RunConfig::Command::trend: return "trend";
        case RunConfig::Command::change: return "change";
        case RunConfig::Command::correlate: return "correlate";
        case RunConfig::Command::probes: return "probes";
        case RunConfig::Command::ranks: return "ranks";
        case RunConfig::Command::synth_validate: return "synth-validate";
    }
    return "unknown";
}

struct Input {
    std::string path;
    std::string bytes;
};

struct Outputs {
    std::string primary;            // main result document
    json parameters;                // echoed flags
    std::vector<Input> inputs;      // for digests
};

std::string series_csv(const DailySeries& series) {
    std::string out = "date,value\n";
    for (const auto& p : series.points) {
        out += format_date(p.date) + "," + format_value(p.value) + "\n";
    }
    return out;
}

Outputs run_estimate(const RunConfig& cfg) {
    Input sites{cfg.sites_path, read_input(cfg.sites_path)};
    auto entries = parse_site_entries(sites.bytes, cfg.percent);
    entries = filter_top_sites(std::move(entries), cfg.exclude_sites);
    AnalyticsData data = build_analytics(entries);
    auto input = EstimatorInput::create(std::move(data.shares), std::move(data.volumes));
    PresenceEstimate est = to_absolute(estimate(input), cfg.total_population);

    std::string csv = "country,p_hat,stdev,binomial_stderr,absolute\n";
    for (std::size_t i = 0; i < est.countries.size(); ++i) {
        if (!cfg.include_rest && est.countries[i].is_rest_of_world()) continue;
        const auto idx = static_cast<Eigen::Index>(i);
        csv += est.countries[i].str() + "," + format_value(est.p_hat[idx]) + "," +
               format_value(est.stdev[idx]) + "," +
               format_value((*est.binomial_stderr)[idx]) + "," +
               format_value((*est.absolute)[idx]) + "\n";
    }
    json params{{"exclude", cfg.exclude_sites},
                {"include_rest", cfg.include_rest},
                {"percent", cfg.percent},
                {"total_population", cfg.total_population}};
    return Outputs{std::move(csv), std::move(params), {std::move(sites)}};
}

Outputs run_trend(const RunConfig& cfg) {
    Input series{cfg.series_path, read_input(cfg.series_path)};
    auto records = parse_share_series(series.bytes, cfg.percent);
    DailySeries trend =
        share_trend(records, CountryCode::parse(cfg.country), cfg.metric, cfg.key);
    if (cfg.normalize) trend = normalize_max(trend);
    json params{{"country", cfg.country},
                {"key", cfg.key},
                {"metric", cfg.metric},
                {"normalize", cfg.normalize},
                {"percent", cfg.percent}};
    return Outputs{series_csv(trend), std::move(params), {std::move(series)}};
}

Outputs run_change(const RunConfig& cfg) {
    if (!cfg.event_date) throw Error(ErrorCategory::parse, "change requires --event");
    Input series{cfg.series_path, read_input(cfg.series_path)};
    DailySeries daily = daily_peak(parse_traffic_series(series.bytes));
    EventWindow window = EventWindow::create(*cfg.event_date, cfg.pre_days, cfg.post_days);
    WindowChange change = window_change(daily, window);
    json doc{{"pre_mean", change.pre_mean},
             {"post_mean", change.post_mean},
             {"percent_change", change.percent_change},
             {"pre_count", change.pre_count},
             {"post_count", change.post_count}};
    json params{{"event", format_date(*cfg.event_date)},
                {"post_days", cfg.post_days},
                {"pre_days", cfg.pre_days}};
    return Outputs{doc.dump(2) + "\n", std::move(params), {std::move(series)}};
}

Outputs run_correlate(const RunConfig& cfg) {
    if (cfg.lag_min > cfg.lag_max) {
        throw Error(ErrorCategory::parse, "--lag-min must not exceed --lag-max");
    }
    Input flows{cfg.flows_path, read_input(cfg.flows_path)};
    Input series{cfg.series_path, read_input(cfg.series_path)};
    DailySeries flow = aggregate_flow(parse_flows(flows.bytes));
    DailySeries daily = daily_peak(parse_traffic_series(series.bytes));

    std::string csv = "lag_days,r,n\n";
    int usable = 0;
    for (int lag = cfg.lag_min; lag <= cfg.lag_max; ++lag) {
        try {
            CorrelationResult res = pearson(flow, daily, lag);
            csv += std::to_string(res.lag_days) + "," + format_value(res.r) + "," +
                   std::to_string(res.n) + "\n";
            ++usable;
        } catch (const InsufficientOverlap&) {
        } catch (const ConstantSeries&) {
        }
    }
    if (usable == 0) {
        throw InsufficientOverlap("no lag in [" + std::to_string(cfg.lag_min) + ", " +
                                  std::to_string(cfg.lag_max) + "] had enough overlap");
    }
    json params{{"lag_max", cfg.lag_max}, {"lag_min", cfg.lag_min}};
    return Outputs{std::move(csv), std::move(params), {std::move(flows), std::move(series)}};
}

Outputs run_probes(const RunConfig& cfg) {
    Input probes{cfg.probes_path, read_input(cfg.probes_path)};
    DailySeries counts = count_connected(parse_probe_status(probes.bytes));
    return Outputs{series_csv(counts), json::object(), {std::move(probes)}};
}

Outputs run_ranks(const RunConfig& cfg) {
    if (!cfg.from_month || !cfg.to_month) {
        throw Error(ErrorCategory::parse, "ranks requires --from and --to");
    }
    Input ranks{cfg.ranks_path, read_input(cfg.ranks_path)};
    auto deltas = rank_delta(parse_ranks(ranks.bytes), CountryCode::parse(cfg.country),
                             *cfg.from_month, *cfg.to_month);
    json doc = json::object();
    for (const auto& [kind, delta] : deltas) doc[std::string(to_string(kind))] = delta;
    json params{{"country", cfg.country},
                {"from", format_year_month(*cfg.from_month)},
                {"to", format_year_month(*cfg.to_month)}};
    return Outputs{doc.dump(2) + "\n", std::move(params), {std::move(ranks)}};
}

Outputs run_synth_validate(const RunConfig& cfg) {
    if (cfg.trials < 1) throw Error(ErrorCategory::parse, "--trials must be at least 1");
    Input truth_in{cfg.truth_path, read_input(cfg.truth_path)};
    Input sites{cfg.sites_path, read_input(cfg.sites_path)};
    GroundTruth truth = parse_ground_truth(truth_in.bytes);
    if (cfg.seed_override) {
        truth = GroundTruth::create(truth.countries, truth.p_true, *cfg.seed_override);
    }
    VolumeVector volumes = parse_volumes(sites.bytes);

    std::vector<double> errors;
    errors.reserve(static_cast<std::size_t>(cfg.trials));
    for (int t = 0; t < cfg.trials; ++t) {
        GroundTruth trial = GroundTruth::create(
            truth.countries, truth.p_true, truth.seed + static_cast<std::uint64_t>(t));
        ShareMatrix sampled = sample_shares(trial, volumes);
        auto input = EstimatorInput::create(std::move(sampled), volumes);
        PresenceEstimate est = align_to(estimate(input), truth.countries);
        errors.push_back(recovery_error(trial, est));
    }
    double max_err = 0.0, sum = 0.0;
    for (double e : errors) {
        max_err = std::max(max_err, e);
        sum += e;
    }
    json doc{{"base_seed", truth.seed},
             {"l1_errors", errors},
             {"max_l1", max_err},
             {"mean_l1", sum / static_cast<double>(errors.size())},
             {"n_countries", truth.countries.size()},
             {"n_sites", volumes.sites.size()},
             {"total_volume", volumes.volumes.sum()},
             {"trials", cfg.trials}};
    json params{{"seed", truth.seed}, {"trials", cfg.trials}};
    return Outputs{doc.dump(2) + "\n", std::move(params),
                   {std::move(truth_in), std::move(sites)}};
}

}  // namespace

void execute(const RunConfig& cfg) {
    if (cfg.out_path.empty()) throw Error(ErrorCategory::parse, "missing --out path");

    Outputs out;
    switch (cfg.command) {
        case RunConfig::Command::estimate: out = run_estimate(cfg); break;
        case RunConfig::Command::trend: out = run_trend(cfg); break;
        case RunConfig::Command::change: out = run_change(cfg); break;
        case RunConfig::Command::correlate: out = run_correlate(cfg); break;
        case RunConfig::Command::probes: out = run_probes(cfg); break;
        case RunConfig::Command::ranks: out = run_ranks(cfg); break;
        case RunConfig::Command::synth_validate: out = run_synth_validate(cfg); break;
    }

    json meta;
    meta["command"] = command_name(cfg.command);
    meta["generated_at"] = utc_now_string();
    auto inputs = json::array();
    for (const auto& in : out.inputs) {
        inputs.push_back({{"path", in.path}, {"sha256", sha256_hex(in.bytes)}});
    }
    meta["inputs"] = std::move(inputs);
    meta["output"] = cfg.out_path;
    meta["parameters"] = std::move(out.parameters);
    meta["version"] = kVersion;

    const fs::path out_path(cfg.out_path);
    const fs::path meta_path = out_path.parent_path() / "run_meta.json";
    atomic_write(out_path, out.primary);
    atomic_write(meta_path, meta.dump(2) + "\n");
}

int run(const RunConfig& cfg) {
    try {
        execute(cfg);
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return static_cast<int>(e.category());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace netpresence
