#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace warcast {

enum class ResampleMode { tile, fourier };

inline std::string_view resample_mode_name(ResampleMode m) {
    return m == ResampleMode::tile ? "tile" : "fourier";
}

inline ResampleMode resample_mode_from_name(std::string_view name) {
    if (name == "tile") return ResampleMode::tile;
    if (name == "fourier") return ResampleMode::fourier;
    throw std::domain_error("unknown resample mode '" + std::string(name) +
                            "' (expected tile or fourier)");
}

/// Deterministic length change that keeps each distinct value's share of the
/// output as close to its input share as integer counts allow. Allocation is
/// exact: floor shares first, then remaining slots go to the largest
/// remainders (first occurrence wins ties). Output lists each distinct value
/// as a contiguous run, in first-occurrence order.
inline std::vector<std::int32_t> resample_tile(const std::vector<std::int32_t>& draws,
                                               int n_target) {
    if (draws.empty()) throw std::domain_error("resample_tile: empty draw list");
    if (n_target < 1) throw std::domain_error("resample_tile: n_target must be >= 1");

    struct Run {
        std::int32_t value;
        std::int64_t count = 0;
        std::int64_t alloc = 0;
        std::int64_t remainder = 0;
    };
    std::vector<Run> runs;
    for (const std::int32_t d : draws) {
        auto it = std::find_if(runs.begin(), runs.end(),
                               [d](const Run& r) { return r.value == d; });
        if (it == runs.end())
            runs.push_back({d, 1, 0, 0});
        else
            ++it->count;
    }

    const auto n = static_cast<std::int64_t>(draws.size());
    std::int64_t allocated = 0;
    for (Run& r : runs) {
        const std::int64_t scaled = r.count * n_target;
        r.alloc = scaled / n;
        r.remainder = scaled % n;
        allocated += r.alloc;
    }
    std::vector<std::size_t> order(runs.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&runs](std::size_t a, std::size_t b) {
        return runs[a].remainder > runs[b].remainder;
    });
    for (std::size_t i = 0; allocated < n_target; ++i, ++allocated) ++runs[order[i]].alloc;

    std::vector<std::int32_t> out;
    out.reserve(static_cast<std::size_t>(n_target));
    for (const Run& r : runs) out.insert(out.end(), static_cast<std::size_t>(r.alloc), r.value);
    return out;
}

/// Fourier-domain resampling of a real sequence to `num` points: keep the
/// low-frequency half-spectrum, adjust the Nyquist term when the shorter
/// length is even, inverse-transform at the new length, and rescale by
/// num/n. Evaluated as a direct DFT; sequences here are short enough that
/// the O(n * num) cost is irrelevant and the exact modular angles keep the
/// arithmetic reproducible.
inline std::vector<double> resample_fourier_real(const std::vector<double>& x, int num) {
    if (x.empty()) throw std::domain_error("resample_fourier_real: empty input");
    if (num < 1) throw std::domain_error("resample_fourier_real: num must be >= 1");

    const int n = static_cast<int>(x.size());
    const int nyq = std::min(n, num) / 2 + 1;
    const double two_pi = 2.0 * std::numbers::pi;

    std::vector<double> re(static_cast<std::size_t>(nyq), 0.0);
    std::vector<double> im(static_cast<std::size_t>(nyq), 0.0);
    for (int j = 0; j < nyq; ++j) {
        double sr = 0.0, si = 0.0;
        for (int k = 0; k < n; ++k) {
            const auto m = static_cast<std::int64_t>(j) * k % n;
            const double angle = two_pi * static_cast<double>(m) / n;
            sr += x[static_cast<std::size_t>(k)] * std::cos(angle);
            si -= x[static_cast<std::size_t>(k)] * std::sin(angle);
        }
        re[static_cast<std::size_t>(j)] = sr;
        im[static_cast<std::size_t>(j)] = si;
    }
    // The half-spectrum of a real even-length sequence has a purely real
    // Nyquist coefficient; zero the numerical residue so it cannot leak
    // through the weight-2 inverse terms below.
    if (n % 2 == 0 && n / 2 < nyq) im[static_cast<std::size_t>(n / 2)] = 0.0;

    const int nmin = std::min(n, num);
    if (nmin % 2 == 0) {
        const auto h = static_cast<std::size_t>(nmin / 2);
        if (num < n) {
            re[h] *= 2.0;
            im[h] *= 2.0;
        } else if (num > n) {
            re[h] *= 0.5;
            im[h] *= 0.5;
        }
    }

    std::vector<double> y(static_cast<std::size_t>(num), 0.0);
    for (int k = 0; k < num; ++k) {
        double acc = 0.0;
        for (int j = 0; j < nyq; ++j) {
            const bool nyquist_out = 2 * j == num;
            const double w = (j == 0 || nyquist_out) ? 1.0 : 2.0;
            const auto m = static_cast<std::int64_t>(j) * k % num;
            const double angle = two_pi * static_cast<double>(m) / num;
            // The real inverse transform reads only the real part of its own
            // Nyquist bin, so the imaginary part is dropped there.
            const double ij = nyquist_out ? 0.0 : im[static_cast<std::size_t>(j)];
            acc += w * (re[static_cast<std::size_t>(j)] * std::cos(angle) -
                        ij * std::sin(angle));
        }
        y[static_cast<std::size_t>(k)] = acc / n;
    }
    return y;
}

/// Resample integer draws to exactly n_target values. A sequence already at
/// the target length is returned unchanged in both modes. Fourier output is
/// rounded to the nearest integer and clamped below at zero, since draws
/// live on non-negative counts.
inline std::vector<std::int32_t> resample_to_n(const std::vector<std::int32_t>& draws,
                                               int n_target, ResampleMode mode) {
    if (draws.empty()) throw std::domain_error("resample_to_n: empty draw list");
    if (n_target < 1) throw std::domain_error("resample_to_n: n_target must be >= 1");
    if (static_cast<int>(draws.size()) == n_target) return draws;
    if (mode == ResampleMode::tile) return resample_tile(draws, n_target);

    std::vector<double> x(draws.begin(), draws.end());
    const std::vector<double> y = resample_fourier_real(x, n_target);
    std::vector<std::int32_t> out(y.size());
    for (std::size_t i = 0; i < y.size(); ++i) {
        const long long r = std::llround(y[i]);
        out[i] = r < 0 ? 0 : static_cast<std::int32_t>(r);
    }
    return out;
}

}  // namespace warcast
