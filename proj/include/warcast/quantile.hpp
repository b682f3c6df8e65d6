#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace warcast {

/// Hyndman-Fan type-7 quantile of an ascending sequence: the piecewise-linear
/// interpolation with h = (n − 1)q, so q = 0 is the minimum and q = 1 the
/// maximum. Accepts any random-access container of arithmetic values.
template <class Sorted>
double quantile_type7(const Sorted& sorted, double q) {
    const std::size_t n = sorted.size();
    if (n == 0) throw std::domain_error("quantile_type7: empty list");
    if (!(q >= 0.0 && q <= 1.0))
        throw std::domain_error("quantile_type7: q must lie in [0, 1]");

    const double h = static_cast<double>(n - 1) * q;
    const auto lo = static_cast<std::size_t>(h);
    if (lo + 1 >= n) return static_cast<double>(sorted[n - 1]);
    const double frac = h - static_cast<double>(lo);
    const double a = static_cast<double>(sorted[lo]);
    const double b = static_cast<double>(sorted[lo + 1]);
    return a + frac * (b - a);
}

}  // namespace warcast
