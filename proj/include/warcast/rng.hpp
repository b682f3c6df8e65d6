#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include "warcast/calendar.hpp"
#include "warcast/units.hpp"

namespace warcast {

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : s) {
        h ^= static_cast<unsigned char>(c);
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace detail

/// Deterministic random stream. Streams are derived from a user seed plus a
/// purpose tag and the (unit, month) cell they serve, so per-cell generation
/// yields identical results under any parallel schedule.
class RngStream {
  public:
    explicit RngStream(std::uint64_t key) : eng_(detail::splitmix64(key)) {}

    static RngStream keyed(std::uint64_t seed, std::string_view tag, UnitId unit, MonthId month) {
        std::uint64_t h = detail::splitmix64(seed);
        h = detail::splitmix64(h ^ detail::fnv1a(tag));
        h = detail::splitmix64(h ^ (static_cast<std::uint64_t>(unit.level == Level::pgm) << 48 |
                                    static_cast<std::uint32_t>(unit.id)));
        h = detail::splitmix64(h ^ static_cast<std::uint32_t>(month));
        return RngStream(h);
    }

    std::uint64_t bits() { return eng_(); }

    /// Uniform double in [0, 1) with 53-bit resolution.
    double uniform() { return static_cast<double>(bits() >> 11) * 0x1.0p-53; }

    /// Uniform integer in [0, n).
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::domain_error("RngStream::below: n must be positive");
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(bits()) * n) >> 64);
    }

    /// Standard normal via the polar method.
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u, v, s;
        do {
            u = 2.0 * uniform() - 1.0;
            v = 2.0 * uniform() - 1.0;
            s = u * u + v * v;
        } while (s >= 1.0 || s == 0.0);
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        spare_ = v * f;
        have_spare_ = true;
        return u * f;
    }

    /// Poisson variate: multiplicative inversion below mean 10, transformed
    /// rejection (PTRS) above. Exact for mean 0.
    std::int64_t poisson(double mean) {
        if (mean < 0.0 || !std::isfinite(mean))
            throw std::domain_error("poisson: mean must be finite and >= 0");
        if (mean == 0.0) return 0;
        if (mean < 10.0) return poisson_inversion(mean);
        return poisson_ptrs(mean);
    }

    /// Gamma(shape, scale) via Marsaglia-Tsang, boosted for shape < 1.
    double gamma(double shape, double scale) {
        if (shape <= 0.0 || scale <= 0.0)
            throw std::domain_error("gamma: shape and scale must be positive");
        if (shape < 1.0) {
            const double u = uniform_nonzero();
            return gamma(shape + 1.0, scale) * std::pow(u, 1.0 / shape);
        }
        const double d = shape - 1.0 / 3.0;
        const double c = 1.0 / std::sqrt(9.0 * d);
        for (;;) {
            double x, v;
            do {
                x = normal();
                v = 1.0 + c * x;
            } while (v <= 0.0);
            v = v * v * v;
            const double u = uniform_nonzero();
            if (u < 1.0 - 0.0331 * x * x * x * x) return d * v * scale;
            if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v * scale;
        }
    }

  private:
    double uniform_nonzero() {
        double u;
        do {
            u = uniform();
        } while (u == 0.0);
        return u;
    }

    std::int64_t poisson_inversion(double mean) {
        const double limit = std::exp(-mean);
        std::int64_t k = 0;
        double p = 1.0;
        do {
            ++k;
            p *= uniform();
        } while (p > limit);
        return k - 1;
    }

    // Hormann (1993) transformed rejection with squeeze, valid for mean >= 10.
    std::int64_t poisson_ptrs(double mean) {
        const double slam = std::sqrt(mean);
        const double loglam = std::log(mean);
        const double b = 0.931 + 2.53 * slam;
        const double a = -0.059 + 0.02483 * b;
        const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
        const double v_r = 0.9277 - 3.6224 / (b - 2.0);
        for (;;) {
            const double u = uniform() - 0.5;
            const double v = uniform();
            const double us = 0.5 - std::fabs(u);
            const double kf = std::floor((2.0 * a / us + b) * u + mean + 0.43);
            if (us >= 0.07 && v <= v_r) return static_cast<std::int64_t>(kf);
            if (kf < 0.0 || (us < 0.013 && v > us)) continue;
            const double k = kf;
            if (std::log(v) + std::log(inv_alpha) - std::log(a / (us * us) + b) <=
                k * loglam - mean - std::lgamma(k + 1.0))
                return static_cast<std::int64_t>(kf);
        }
    }

    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

}  // namespace warcast
