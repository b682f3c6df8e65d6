#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "warcast/quantile.hpp"

namespace warcast {

/// Interval-score configuration. The standard central interval puts the
/// quantiles at (a/2, 1 - a/2); compat mode moves the upper quantile to
/// 1 - a, matching tooling that reads the 90th percentile for a = 0.1.
struct MisConfig {
    double a = 0.1;
    double q_low = 0.05;
    double q_high = 0.95;
    bool compat_mode = false;

    static MisConfig standard(double a = 0.1) { return make(a, false); }

    static MisConfig compat(double a = 0.1) { return make(a, true); }

    void validate() const {
        if (!(a > 0.0 && a < 1.0)) throw std::domain_error("MisConfig: a must lie in (0, 1)");
        if (!(0.0 < q_low && q_low < q_high && q_high < 1.0))
            throw std::domain_error("MisConfig: need 0 < q_low < q_high < 1");
    }

  private:
    static MisConfig make(double a, bool compat) {
        MisConfig cfg;
        cfg.a = a;
        cfg.q_low = a / 2.0;
        cfg.q_high = compat ? 1.0 - a : 1.0 - a / 2.0;
        cfg.compat_mode = compat;
        cfg.validate();
        return cfg;
    }
};

/// IS = (U - L) + (2/a)(L - Y)1(L - Y) + (2/a)(Y - U)1(Y - U), with the
/// indicator 1(z) = 1 iff z >= 0. The boundary convention is harmless (the
/// scaled term is zero when z is) but kept explicit to match the definition.
inline double interval_score_from_bounds(double lower, double upper, double y, double a) {
    if (!(a > 0.0 && a < 1.0))
        throw std::domain_error("interval_score_from_bounds: a must lie in (0, 1)");
    double score = upper - lower;
    if (lower - y >= 0.0) score += (2.0 / a) * (lower - y);
    if (y - upper >= 0.0) score += (2.0 / a) * (y - upper);
    return score;
}

inline double interval_score_sorted(std::span<const std::int32_t> sorted_draws, std::int32_t y,
                                    const MisConfig& cfg) {
    if (sorted_draws.empty()) throw std::domain_error("interval_score: empty draw list");
    cfg.validate();
    const double lower = quantile_type7(sorted_draws, cfg.q_low);
    const double upper = quantile_type7(sorted_draws, cfg.q_high);
    return interval_score_from_bounds(lower, upper, static_cast<double>(y), cfg.a);
}

inline double interval_score(const std::vector<std::int32_t>& draws, std::int32_t y,
                             const MisConfig& cfg) {
    if (draws.empty()) throw std::domain_error("interval_score: empty draw list");
    std::vector<std::int32_t> sorted(draws);
    std::sort(sorted.begin(), sorted.end());
    return interval_score_sorted(sorted, y, cfg);
}

}  // namespace warcast
