#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "netpresence/model.hpp"

namespace netpresence {

//! SplitMix64: the standard 64-bit state-advance-and-scramble generator.
//! State transition: s += 0x9E3779B97F4A7C15; output mixes the new state
//! with the usual xor-shift-multiply constants. Chosen because it is tiny,
//! well known, and trivially reimplemented bit-exactly in any language.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    //! Uniform double in [0, 1) built from the top 53 bits.
    double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

private:
    std::uint64_t state_;
};

//! Initial SplitMix64 state for site j (zero-based):
//! seed + (j + 1) * 0x9E3779B97F4A7C15, mod 2^64.
std::uint64_t site_stream_seed(std::uint64_t seed, std::size_t site_index);

//! A known presence vector to sample synthetic observations from.
struct GroundTruth {
    std::vector<CountryCode> countries;  // includes "ZZ"
    Eigen::VectorXd p_true;              // sums to 1 within 1e-12
    std::uint64_t seed;

    static GroundTruth create(std::vector<CountryCode> countries, Eigen::VectorXd p_true,
                              std::uint64_t seed);
};

//! `synth.json`: {countries: [...], p_true: [...], seed: integer}.
GroundTruth parse_ground_truth(std::string_view bytes);
std::string write_ground_truth(const GroundTruth& truth);

//! Draws round-half-up(A_j) independent categorical samples per site from
//! p_true (each site on its own SplitMix64 stream) and returns the empirical
//! frequency rows. Deterministic given (truth, volumes); each row sums to
//! exactly one.
ShareMatrix sample_shares(const GroundTruth& truth, const VolumeVector& volumes);

//! L1 distance sum_i |p_hat_i - p_true_i|; the estimate must carry the same
//! country ordering as the truth.
double recovery_error(const GroundTruth& truth, const PresenceEstimate& estimate);

}  // namespace netpresence
