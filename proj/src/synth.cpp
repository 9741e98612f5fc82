#include "netpresence/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <nlohmann/json.hpp>

#include "netpresence/errors.hpp"

namespace netpresence {

namespace {
constexpr double kTruthSumTolerance = 1e-12;
}

std::uint64_t site_stream_seed(std::uint64_t seed, std::size_t site_index) {
    return seed + (static_cast<std::uint64_t>(site_index) + 1u) * 0x9E3779B97F4A7C15ull;
}

GroundTruth GroundTruth::create(std::vector<CountryCode> countries, Eigen::VectorXd p_true,
                                std::uint64_t seed) {
    if (countries.empty() || p_true.size() != static_cast<Eigen::Index>(countries.size())) {
        throw InvariantViolation("ground truth country list and p_true lengths differ");
    }
    std::set<CountryCode> seen;
    bool has_rest = false;
    for (const auto& cc : countries) {
        if (!seen.insert(cc).second) {
            throw InvariantViolation("duplicate country in ground truth: " + cc.str());
        }
        has_rest = has_rest || cc.is_rest_of_world();
    }
    if (!has_rest) {
        throw InvariantViolation("ground truth must include the rest-of-world bucket ZZ");
    }
    double sum = 0.0;
    for (Eigen::Index i = 0; i < p_true.size(); ++i) {
        if (!std::isfinite(p_true[i]) || p_true[i] < 0.0 || p_true[i] > 1.0) {
            throw InvariantViolation("p_true entry out of [0,1] for " + countries[i].str());
        }
        sum += p_true[i];
    }
    if (std::abs(sum - 1.0) > kTruthSumTolerance) {
        throw InvariantViolation("p_true sums to " + std::to_string(sum) + ", expected 1");
    }
    return GroundTruth{std::move(countries), std::move(p_true), seed};
}

GroundTruth parse_ground_truth(std::string_view bytes) {
    nlohmann::json doc = nlohmann::json::parse(bytes, nullptr, false);
    if (doc.is_discarded() || !doc.is_object() || !doc.contains("countries") ||
        !doc.contains("p_true") || !doc.contains("seed") || !doc["countries"].is_array() ||
        !doc["p_true"].is_array() || !doc["seed"].is_number_unsigned()) {
        throw ParseError(1, "ground truth must be {countries: [...], p_true: [...], seed: n}");
    }
    std::vector<CountryCode> countries;
    for (const auto& e : doc["countries"]) {
        if (!e.is_string()) throw ParseError(1, "countries must be strings");
        auto cc = CountryCode::try_parse(e.get<std::string>());
        if (!cc) throw ParseError(1, "invalid country code '" + e.get<std::string>() + "'");
        countries.push_back(*cc);
    }
    Eigen::VectorXd p(static_cast<Eigen::Index>(doc["p_true"].size()));
    for (std::size_t i = 0; i < doc["p_true"].size(); ++i) {
        if (!doc["p_true"][i].is_number()) throw ParseError(1, "p_true must be numeric");
        p[static_cast<Eigen::Index>(i)] = doc["p_true"][i].get<double>();
    }
    try {
        return GroundTruth::create(std::move(countries), std::move(p),
                                   doc["seed"].get<std::uint64_t>());
    } catch (const InvariantViolation& e) {
        throw ParseError(1, e.what());
    }
}

std::string write_ground_truth(const GroundTruth& truth) {
    nlohmann::json doc;
    auto codes = nlohmann::json::array();
    for (const auto& cc : truth.countries) codes.push_back(cc.str());
    doc["countries"] = std::move(codes);
    doc["p_true"] = std::vector<double>(truth.p_true.data(),
                                        truth.p_true.data() + truth.p_true.size());
    doc["seed"] = truth.seed;
    return doc.dump(2) + "\n";
}

ShareMatrix sample_shares(const GroundTruth& truth, const VolumeVector& volumes) {
    const auto n_countries = truth.p_true.size();
    std::vector<double> cumulative(static_cast<std::size_t>(n_countries));
    double acc = 0.0;
    for (Eigen::Index i = 0; i < n_countries; ++i) {
        acc += truth.p_true[i];
        cumulative[static_cast<std::size_t>(i)] = acc;
    }

    const auto n_sites = volumes.volumes.size();
    Eigen::MatrixXd rows(n_sites, n_countries);
    for (Eigen::Index j = 0; j < n_sites; ++j) {
        const auto trials = std::llround(volumes.volumes[j]);  // half-up for positive values
        if (trials < 1) {
            throw InvariantViolation("volume for site " + volumes.sites[j] +
                                     " rounds to zero samples");
        }
        SplitMix64 rng(site_stream_seed(truth.seed, static_cast<std::size_t>(j)));
        std::vector<std::int64_t> counts(static_cast<std::size_t>(n_countries), 0);
        for (std::int64_t t = 0; t < trials; ++t) {
            const double u = rng.next_unit();
            auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
            auto idx = static_cast<std::size_t>(it - cumulative.begin());
            if (idx >= counts.size()) idx = counts.size() - 1;  // guard the rounded tail
            ++counts[idx];
        }
        // Empirical frequencies; the most frequent outcome absorbs the
        // floating-point residue so the left-to-right row sum is exactly one.
        const auto total = static_cast<double>(trials);
        std::size_t top = 0;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            if (counts[i] > counts[top]) top = i;
        }
        std::vector<double> row(counts.size(), 0.0);
        double others = 0.0;
        for (std::size_t i = 0; i < counts.size(); ++i) {
            if (i != top) {
                row[i] = static_cast<double>(counts[i]) / total;
                others += row[i];
            }
        }
        const auto sequential_sum = [&](double t) {
            double s = 0.0;
            for (std::size_t i = 0; i < row.size(); ++i) s += (i == top) ? t : row[i];
            return s;
        };
        // walk at most a few ulps; the sequential sum is monotone in t and
        // its grid cannot skip 1.0
        double t = 1.0 - others;
        constexpr double inf = std::numeric_limits<double>::infinity();
        while (sequential_sum(t) < 1.0) t = std::nextafter(t, inf);
        while (sequential_sum(t) > 1.0) t = std::nextafter(t, -inf);
        row[top] = t;
        for (std::size_t i = 0; i < row.size(); ++i) {
            rows(j, static_cast<Eigen::Index>(i)) = row[i];
        }
    }
    return ShareMatrix::create(volumes.sites, truth.countries, std::move(rows));
}

double recovery_error(const GroundTruth& truth, const PresenceEstimate& estimate) {
    if (estimate.countries != truth.countries) {
        throw CountryMismatch("estimate and ground truth country orderings differ");
    }
    return (estimate.p_hat - truth.p_true).lpNorm<1>();
}

}  // namespace netpresence
