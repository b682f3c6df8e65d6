#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <span>
#include <stdexcept>
#include <vector>

namespace warcast {

/// CRPS of an equally-weighted integer ensemble against observation y, using
/// the pairwise estimator (1/n)Σ|xᵢ − y| − (1/(2n²))ΣᵢΣⱼ|xᵢ − xⱼ|. Draws
/// must be sorted ascending; both sums are accumulated in exact integer
/// arithmetic (the sorted form turns the double sum into Σ x₍ₖ₎(2k − n + 1)),
/// so a single-draw ensemble reduces to |x − y| with no rounding at all.
inline double crps_sorted(std::span<const std::int32_t> sorted_draws, std::int32_t y) {
    if (sorted_draws.empty()) throw std::domain_error("crps: empty draw list");
    if (y < 0) throw std::domain_error("crps: observation must be non-negative");

    const auto n = static_cast<std::int64_t>(sorted_draws.size());
    std::int64_t abs_sum = 0;
    std::int64_t spread_sum = 0;
    for (std::int64_t k = 0; k < n; ++k) {
        const auto x = static_cast<std::int64_t>(sorted_draws[static_cast<std::size_t>(k)]);
        abs_sum += std::llabs(x - y);
        spread_sum += x * (2 * k - n + 1);
    }
    const auto nd = static_cast<double>(n);
    return static_cast<double>(abs_sum) / nd -
           static_cast<double>(spread_sum) / (nd * nd);
}

inline double crps_ensemble(const std::vector<std::int32_t>& draws, std::int32_t y) {
    if (draws.empty()) throw std::domain_error("crps: empty draw list");
    std::vector<std::int32_t> sorted(draws);
    std::sort(sorted.begin(), sorted.end());
    return crps_sorted(sorted, y);
}

}  // namespace warcast
