#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "netpresence/model.hpp"

namespace test_helpers {

inline std::string fixture_path(const std::string& name) {
    return std::string(NETPRESENCE_FIXTURES_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE_MESSAGE(in.good(), "cannot open ", path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

inline netpresence::Date d(const char* iso) { return netpresence::parse_date(iso); }

inline netpresence::CountryCode cc(const char* code) {
    return netpresence::CountryCode::parse(code);
}

inline netpresence::DailySeries series(
    const char* name, const std::vector<std::pair<const char*, double>>& pts) {
    std::vector<netpresence::DailyPoint> points;
    for (const auto& [date, value] : pts) points.push_back({d(date), value});
    return netpresence::DailySeries::create(name, "", std::move(points));
}

//! Random valid (ShareMatrix, VolumeVector) pair. Rows are normalized sums
//! of uniform positives, completed with a "ZZ" column, so every entry is
//! strictly positive and rows sum to ~1.
struct RandomPair {
    netpresence::ShareMatrix shares;
    netpresence::VolumeVector volumes;
};

inline RandomPair random_pair(std::mt19937_64& rng, int max_sites = 12,
                              int max_countries = 10, double vol_lo = 1e4,
                              double vol_hi = 1e6) {
    using namespace netpresence;
    std::uniform_int_distribution<int> ksize(1, max_sites);
    std::uniform_int_distribution<int> nsize(1, max_countries);
    std::uniform_real_distribution<double> unit(0.01, 1.0);
    std::uniform_real_distribution<double> vol(vol_lo, vol_hi);

    const int k = ksize(rng);
    const int n_listed = nsize(rng);
    std::vector<CountryCode> countries;
    for (int i = 0; i < n_listed; ++i) {
        std::string code = {static_cast<char>('A' + i / 25), static_cast<char>('A' + i % 25)};
        countries.push_back(CountryCode::parse(code));
    }
    countries.push_back(CountryCode::rest_of_world());

    Eigen::MatrixXd m(k, n_listed + 1);
    std::vector<std::string> sites;
    Eigen::VectorXd volumes(k);
    for (int j = 0; j < k; ++j) {
        sites.push_back("site" + std::to_string(j));
        double total = 0.0;
        for (int i = 0; i <= n_listed; ++i) {
            m(j, i) = unit(rng);
            total += m(j, i);
        }
        double rowsum = 0.0;
        for (int i = 0; i < n_listed; ++i) {
            m(j, i) /= total;
            rowsum += m(j, i);
        }
        m(j, n_listed) = 1.0 - rowsum;  // exact completion
        volumes[j] = vol(rng);
    }
    return RandomPair{ShareMatrix::create(sites, countries, std::move(m)),
                      VolumeVector::create(sites, std::move(volumes))};
}

}  // namespace test_helpers
