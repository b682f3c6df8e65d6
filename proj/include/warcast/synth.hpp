#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "warcast/calendar.hpp"
#include "warcast/grid.hpp"
#include "warcast/panel.hpp"
#include "warcast/rng.hpp"
#include "warcast/units.hpp"

namespace warcast {

/// Synthetic-panel recipe: a zero-inflated, heavy-tailed count process with
/// tunable month-to-month persistence. Per unit, a two-state peace/conflict
/// chain runs with stationary conflict probability 1 - zero_share; conflict
/// months emit 1 + NB(tail_mean, tail_dispersion) fatalities.
struct SynthSpec {
    Level level = Level::cm;
    int n_units = 100;
    MonthId first_month = month_id_from_date(2010, 1);
    MonthId last_month = month_id_from_date(2015, 12);
    double zero_share = 0.87;
    double tail_mean = 30.0;
    double tail_dispersion = 0.5;
    double persistence = 0.9;
    std::uint64_t seed = 0;

    static SynthSpec defaults(Level level) {
        SynthSpec s;
        s.level = level;
        s.zero_share = level == Level::cm ? 0.87 : 0.99;
        return s;
    }

    void validate() const {
        if (n_units < 1) throw std::domain_error("SynthSpec: n_units must be >= 1");
        if (level == Level::pgm && n_units > kPgmMaxGid)
            throw std::domain_error("SynthSpec: n_units exceeds the grid size");
        if (first_month < 1 || last_month < first_month)
            throw std::domain_error("SynthSpec: degenerate month range");
        if (!(zero_share > 0.0 && zero_share < 1.0))
            throw std::domain_error("SynthSpec: zero_share must lie in (0, 1)");
        if (!(tail_mean > 0.0)) throw std::domain_error("SynthSpec: tail_mean must be > 0");
        if (!(tail_dispersion > 0.0))
            throw std::domain_error("SynthSpec: tail_dispersion must be > 0");
        if (!(persistence >= 0.0 && persistence < 1.0))
            throw std::domain_error("SynthSpec: persistence must lie in [0, 1)");
    }
};

/// Unit ids for a synthetic panel: 1..n at cm; at pgm, a compact square-ish
/// block of grid cells so neighbor queries have something to find.
inline std::vector<std::int32_t> synth_unit_ids(Level level, int n_units) {
    std::vector<std::int32_t> units;
    units.reserve(static_cast<std::size_t>(n_units));
    if (level == Level::cm) {
        for (int i = 1; i <= n_units; ++i) units.push_back(i);
        return units;
    }
    const int width = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n_units))));
    for (int i = 0; i < n_units; ++i) {
        const int row = i / width + 1;
        const int col = i % width + 1;
        units.push_back(GridTopology::gid_at(row, col));
    }
    return units;
}

/// Negative-binomial variate as a Gamma-mixed Poisson: rate ~ Gamma(k, mu/k)
/// gives mean mu and variance mu + mu^2/k.
inline std::int64_t negative_binomial(RngStream& rng, double mean, double dispersion) {
    return rng.poisson(rng.gamma(dispersion, mean / dispersion));
}

inline ObservationPanel generate_panel(const SynthSpec& spec) {
    spec.validate();

    // With persistence phi, entering conflict from peace happens at rate
    // (1 - phi) * pi and staying in conflict at phi + (1 - phi) * pi, which
    // keeps the stationary conflict share at exactly pi = 1 - zero_share and
    // makes phi the lag-1 autocorrelation of the state.
    const double pi = 1.0 - spec.zero_share;
    const double phi = spec.persistence;
    const double enter = (1.0 - phi) * pi;
    const double stay = phi + (1.0 - phi) * pi;

    ObservationPanel::Builder builder(spec.level);
    for (const std::int32_t unit : synth_unit_ids(spec.level, spec.n_units)) {
        RngStream rng = RngStream::keyed(spec.seed, "synth", UnitId{spec.level, unit}, 0);
        bool conflict = rng.uniform() < pi;
        for (MonthId m = spec.first_month; m <= spec.last_month; ++m) {
            std::int32_t count = 0;
            if (conflict) {
                const std::int64_t nb =
                    negative_binomial(rng, spec.tail_mean, spec.tail_dispersion);
                if (nb >= std::numeric_limits<std::int32_t>::max())
                    throw std::overflow_error("generate_panel: count exceeds int32 range");
                count = static_cast<std::int32_t>(1 + nb);
            }
            builder.add(unit, m, count);
            conflict = rng.uniform() < (conflict ? stay : enter);
        }
    }
    return std::move(builder).build();
}

}  // namespace warcast
