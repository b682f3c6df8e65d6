#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "warcast/forecast.hpp"
#include "warcast/grid.hpp"
#include "warcast/panel.hpp"
#include "warcast/rng.hpp"
#include "warcast/window.hpp"

namespace warcast {

enum class BenchmarkKind { exactly_zero, last_historical, conflictology_window, bootstrap_pool };

inline std::string_view benchmark_kind_name(BenchmarkKind k) {
    switch (k) {
        case BenchmarkKind::exactly_zero: return "exactly_zero";
        case BenchmarkKind::last_historical: return "last_historical";
        case BenchmarkKind::conflictology_window: return "conflictology";
        case BenchmarkKind::bootstrap_pool: return "bootstrap";
    }
    throw std::logic_error("benchmark_kind_name: bad enum value");
}

inline BenchmarkKind benchmark_kind_from_name(std::string_view name) {
    if (name == "exactly_zero") return BenchmarkKind::exactly_zero;
    if (name == "last_historical") return BenchmarkKind::last_historical;
    if (name == "conflictology") return BenchmarkKind::conflictology_window;
    if (name == "bootstrap") return BenchmarkKind::bootstrap_pool;
    throw std::domain_error("unknown benchmark kind '" + std::string(name) +
                            "' (expected exactly_zero, last_historical, conflictology, "
                            "or bootstrap)");
}

struct BenchmarkSpec {
    BenchmarkKind kind = BenchmarkKind::exactly_zero;
    int lookback_months = 12;
    bool use_neighbors = false;
    int n_draws = 1000;
    std::uint64_t seed = 0;

    static BenchmarkSpec for_kind(BenchmarkKind kind) {
        BenchmarkSpec s;
        s.kind = kind;
        s.lookback_months = kind == BenchmarkKind::bootstrap_pool ? 240 : 12;
        return s;
    }

    void validate() const {
        if (lookback_months < 1)
            throw std::domain_error("BenchmarkSpec: lookback_months must be >= 1");
        if (n_draws < static_cast<int>(kMinDraws) || n_draws > static_cast<int>(kMaxDraws))
            throw std::domain_error("BenchmarkSpec: n_draws must lie in [" +
                                    std::to_string(kMinDraws) + ", " +
                                    std::to_string(kMaxDraws) + "]");
        if (use_neighbors && kind != BenchmarkKind::conflictology_window)
            throw std::domain_error("BenchmarkSpec: neighbors apply only to conflictology");
    }
};

/// n_draws independent Poisson(point) variates from the given stream.
inline std::vector<std::int32_t> poisson_expand(double point, int n_draws, RngStream& rng) {
    if (point < 0.0 || !std::isfinite(point))
        throw std::domain_error("poisson_expand: point must be finite and >= 0");
    if (n_draws < 1) throw std::domain_error("poisson_expand: n_draws must be >= 1");
    std::vector<std::int32_t> draws(static_cast<std::size_t>(n_draws));
    for (auto& d : draws) d = static_cast<std::int32_t>(rng.poisson(point));
    return draws;
}

/// Seeded variant for standalone use; submission-sized draw counts only.
inline std::vector<std::int32_t> poisson_expand(double point, int n_draws, std::uint64_t seed) {
    if (n_draws < static_cast<int>(kMinDraws) || n_draws > static_cast<int>(kMaxDraws))
        throw std::domain_error("poisson_expand: n_draws must lie in [" +
                                std::to_string(kMinDraws) + ", " + std::to_string(kMaxDraws) +
                                "]");
    RngStream rng(detail::splitmix64(seed) ^ detail::fnv1a("poisson_expand"));
    return poisson_expand(point, n_draws, rng);
}

namespace detail {

inline void throw_missing_history(std::string_view generator, std::string_view what,
                                  const std::vector<std::int32_t>& units) {
    std::string msg(generator);
    msg += ": panel lacks ";
    msg += what;
    msg += " for units:";
    for (const std::int32_t u : units) msg += " " + std::to_string(u);
    throw std::runtime_error(msg);
}

/// Repeat the multiset whole, as many times as needed to reach the draw
/// floor. Whole-copy repetition keeps every value's share exact.
inline std::vector<std::int32_t> tile_to_floor(std::vector<std::int32_t> values) {
    if (values.empty()) throw std::logic_error("tile_to_floor: empty multiset");
    if (values.size() > kMaxDraws)
        throw std::domain_error("conflictology window yields " + std::to_string(values.size()) +
                                " draws, above the " + std::to_string(kMaxDraws) + " ceiling");
    if (values.size() >= kMinDraws) return values;
    const std::size_t copies = (kMinDraws + values.size() - 1) / values.size();
    std::vector<std::int32_t> out;
    out.reserve(copies * values.size());
    for (std::size_t c = 0; c < copies; ++c) out.insert(out.end(), values.begin(), values.end());
    return out;
}

}  // namespace detail

/// Point mass at zero for every unit and forecast month.
inline ForecastTable gen_exactly_zero(Level level, const std::vector<std::int32_t>& units,
                                      const EvaluationWindow& window, int n_draws) {
    if (n_draws < static_cast<int>(kMinDraws) || n_draws > static_cast<int>(kMaxDraws))
        throw std::domain_error("gen_exactly_zero: n_draws out of range");
    ForecastTable out(level);
    const std::vector<std::int32_t> zeros(static_cast<std::size_t>(n_draws), 0);
    for (const std::int32_t unit : units)
        for (const MonthId m : window.forecast_months) out.insert(unit, m, zeros);
    return out;
}

/// Poisson draws around the last observed value before the window. Each
/// forecast month gets fresh variates from its own (seed, unit, month)
/// stream; the distribution is the same across the horizon.
inline ForecastTable gen_last_historical(const ObservationPanel& panel,
                                         const std::vector<std::int32_t>& units,
                                         const EvaluationWindow& window, int n_draws,
                                         std::uint64_t seed) {
    if (n_draws < static_cast<int>(kMinDraws) || n_draws > static_cast<int>(kMaxDraws))
        throw std::domain_error("gen_last_historical: n_draws out of range");
    std::vector<std::int32_t> missing;
    for (const std::int32_t unit : units)
        if (!panel.has(unit, window.train_cutoff)) missing.push_back(unit);
    if (!missing.empty())
        detail::throw_missing_history("gen_last_historical",
                                      "the cutoff month " + format_year_month(window.train_cutoff),
                                      missing);

    ForecastTable out(panel.level());
    for (const std::int32_t unit : units) {
        const auto point = static_cast<double>(panel.at(unit, window.train_cutoff));
        for (const MonthId m : window.forecast_months) {
            RngStream rng = RngStream::keyed(seed, "last_historical",
                                             UnitId{panel.level(), unit}, m);
            out.insert(unit, m, poisson_expand(point, n_draws, rng));
        }
    }
    return out;
}

/// The observed values of the trailing window, used directly as the forecast
/// distribution for every month of the horizon. With neighbors enabled the
/// multiset also pools each grid neighbor's trailing values. Windows smaller
/// than the draw floor are repeated whole until they reach it.
inline ForecastTable gen_conflictology_window(const ObservationPanel& panel,
                                              const std::vector<std::int32_t>& units,
                                              const EvaluationWindow& window, int lookback = 12,
                                              bool use_neighbors = false,
                                              const GridTopology* topo = nullptr) {
    if (lookback < 1) throw std::domain_error("gen_conflictology_window: lookback must be >= 1");
    if (use_neighbors && panel.level() != Level::pgm)
        throw std::domain_error("gen_conflictology_window: neighbors require the pgm level");
    if (use_neighbors && topo == nullptr)
        throw std::invalid_argument("gen_conflictology_window: neighbors need a grid topology");

    const MonthId first = window.train_cutoff - lookback + 1;
    const MonthId last = window.train_cutoff;

    std::vector<std::int32_t> missing;
    for (const std::int32_t unit : units) {
        bool ok = panel.covers(unit, first, last);
        if (ok && use_neighbors)
            for (const std::int32_t nb : topo->neighbors(unit))
                if (!panel.covers(nb, first, last)) {
                    ok = false;
                    break;
                }
        if (!ok) missing.push_back(unit);
    }
    if (!missing.empty())
        detail::throw_missing_history(
            "gen_conflictology_window",
            "months " + format_year_month(first) + ".." + format_year_month(last) +
                (use_neighbors ? " (including neighbors)" : ""),
            missing);

    ForecastTable out(panel.level());
    std::vector<std::int32_t> values;
    for (const std::int32_t unit : units) {
        values.clear();
        for (MonthId m = first; m <= last; ++m) values.push_back(panel.at(unit, m));
        if (use_neighbors)
            for (const std::int32_t nb : topo->neighbors(unit))
                for (MonthId m = first; m <= last; ++m) values.push_back(panel.at(nb, m));
        const std::vector<std::int32_t> draws = detail::tile_to_floor(values);
        for (const MonthId m : window.forecast_months) out.insert(unit, m, draws);
    }
    return out;
}

/// Uniform resamples from one global pool: every value observed anywhere in
/// the panel over the trailing window. The pool is assembled in (unit,
/// month) order, so sampling is reproducible; cells the panel does not
/// cover simply contribute nothing.
inline ForecastTable gen_bootstrap_pool(const ObservationPanel& panel,
                                        const std::vector<std::int32_t>& units,
                                        const EvaluationWindow& window, int lookback, int n_draws,
                                        std::uint64_t seed) {
    if (lookback < 1) throw std::domain_error("gen_bootstrap_pool: lookback must be >= 1");
    if (n_draws < static_cast<int>(kMinDraws) || n_draws > static_cast<int>(kMaxDraws))
        throw std::domain_error("gen_bootstrap_pool: n_draws out of range");

    const MonthId first = window.train_cutoff - lookback + 1;
    const MonthId last = window.train_cutoff;
    std::vector<std::int32_t> pool;
    for (const auto& [unit, s] : panel.series()) {
        const MonthId lo = std::max(first, s.first);
        const MonthId hi = std::min(last, s.last());
        for (MonthId m = lo; m <= hi; ++m)
            pool.push_back(s.values[static_cast<std::size_t>(m - s.first)]);
    }
    if (pool.empty())
        throw std::runtime_error("gen_bootstrap_pool: no observations in " +
                                 format_year_month(first) + ".." + format_year_month(last));

    ForecastTable out(panel.level());
    std::vector<std::int32_t> draws(static_cast<std::size_t>(n_draws));
    for (const std::int32_t unit : units) {
        for (const MonthId m : window.forecast_months) {
            RngStream rng = RngStream::keyed(seed, "bootstrap", UnitId{panel.level(), unit}, m);
            for (auto& d : draws) d = pool[rng.below(pool.size())];
            out.insert(unit, m, draws);
        }
    }
    return out;
}

/// One benchmark across several evaluation windows, merged into one table.
/// Windows must not overlap (a duplicate cell is rejected by the table).
inline ForecastTable generate_benchmark(const BenchmarkSpec& spec, const ObservationPanel& panel,
                                        const std::vector<std::int32_t>& units,
                                        const std::vector<EvaluationWindow>& windows,
                                        const GridTopology* topo = nullptr) {
    spec.validate();
    if (windows.empty()) throw std::domain_error("generate_benchmark: no evaluation windows");
    ForecastTable out(panel.level());
    for (const EvaluationWindow& w : windows) {
        ForecastTable part(panel.level());
        switch (spec.kind) {
            case BenchmarkKind::exactly_zero:
                part = gen_exactly_zero(panel.level(), units, w, spec.n_draws);
                break;
            case BenchmarkKind::last_historical:
                part = gen_last_historical(panel, units, w, spec.n_draws, spec.seed);
                break;
            case BenchmarkKind::conflictology_window:
                part = gen_conflictology_window(panel, units, w, spec.lookback_months,
                                                spec.use_neighbors, topo);
                break;
            case BenchmarkKind::bootstrap_pool:
                part = gen_bootstrap_pool(panel, units, w, spec.lookback_months, spec.n_draws,
                                          spec.seed);
                break;
        }
        for (auto& [key, draws] : part.cells()) out.insert(key.first, key.second, draws);
    }
    return out;
}

}  // namespace warcast
