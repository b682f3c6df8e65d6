#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "warcast/crps.hpp"
#include "warcast/ignorance.hpp"
#include "warcast/interval.hpp"

namespace warcast {

struct ScoreTriple {
    double crps = 0.0;
    double ign = 0.0;
    double mis = 0.0;
};

struct ScoreConfig {
    IgnConfig ign;
    MisConfig mis;
};

/// All three metrics for one (unit, month) cell. CRPS and the interval score
/// share a single sorted copy; the ignorance score sees the draws in
/// submitted order because Fourier resampling is order-sensitive.
inline ScoreTriple score_cell(const std::vector<std::int32_t>& draws, std::int32_t y,
                              const ScoreConfig& cfg) {
    if (draws.empty()) throw std::domain_error("score_cell: empty draw list");
    std::vector<std::int32_t> sorted(draws);
    std::sort(sorted.begin(), sorted.end());
    ScoreTriple t;
    t.crps = crps_sorted(sorted, y);
    t.mis = interval_score_sorted(sorted, y, cfg.mis);
    t.ign = ignorance_score(draws, y, cfg.ign);
    return t;
}

}  // namespace warcast
