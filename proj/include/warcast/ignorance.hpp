#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "warcast/bins.hpp"
#include "warcast/resample.hpp"

namespace warcast {

/// Binned ignorance-score configuration: draws are resampled to a common
/// length, binned, and every bin receives one pseudo-count so the score
/// stays finite for empty bins.
struct IgnConfig {
    int n_target = 1000;
    BinScheme scheme = BinScheme::fatality();
    ResampleMode resample_mode = ResampleMode::fourier;

    void validate() const {
        if (n_target < 1) throw std::domain_error("IgnConfig: n_target must be >= 1");
    }
};

/// -log2 p of the observation's bin, where p = (count + 1)/(n_target + bins).
/// Resampling sees the draws in submitted order; the Fourier path depends on
/// it, so callers must not sort beforehand.
inline double ignorance_score(const std::vector<std::int32_t>& draws, std::int32_t y,
                              const IgnConfig& cfg) {
    if (draws.empty()) throw std::domain_error("ignorance_score: empty draw list");
    if (y < 0) throw std::domain_error("ignorance_score: observation must be non-negative");
    cfg.validate();

    const std::vector<std::int32_t> resampled =
        resample_to_n(draws, cfg.n_target, cfg.resample_mode);
    const std::vector<std::int64_t> counts = bin_counts(resampled, cfg.scheme);
    const auto hit = static_cast<std::size_t>(cfg.scheme.index_of(y));
    const double p = static_cast<double>(counts[hit] + 1) /
                     static_cast<double>(cfg.n_target + static_cast<int>(cfg.scheme.size()));
    return -std::log2(p);
}

/// Attainable score range: the floor is a forecast whose every resampled
/// value lands in the observation's bin, the ceiling one that misses it
/// entirely and survives only on the pseudo-count.
inline double ign_floor(const IgnConfig& cfg) {
    const double denom = static_cast<double>(cfg.n_target + static_cast<int>(cfg.scheme.size()));
    return -std::log2(static_cast<double>(cfg.n_target + 1) / denom);
}

inline double ign_ceiling(const IgnConfig& cfg) {
    const double denom = static_cast<double>(cfg.n_target + static_cast<int>(cfg.scheme.size()));
    return -std::log2(1.0 / denom);
}

}  // namespace warcast
