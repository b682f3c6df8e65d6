#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "warcast/evaluate.hpp"
#include "warcast/forecast.hpp"
#include "warcast/rng.hpp"

namespace warcast {

enum class WeightRule { inverse_crps, softmin_crps };

inline std::string_view weight_rule_name(WeightRule r) {
    return r == WeightRule::inverse_crps ? "inverse" : "softmin";
}

inline WeightRule weight_rule_from_name(std::string_view name) {
    if (name == "inverse") return WeightRule::inverse_crps;
    if (name == "softmin") return WeightRule::softmin_crps;
    throw std::domain_error("unknown weight rule '" + std::string(name) +
                            "' (expected inverse or softmin)");
}

struct EnsembleSpec {
    std::map<std::string, double> weights;
    int n_draws = 1000;
    std::uint64_t seed = 0;

    void validate() const {
        if (weights.empty()) throw std::domain_error("EnsembleSpec: no members");
        if (n_draws < static_cast<int>(kMinDraws) || n_draws > static_cast<int>(kMaxDraws))
            throw std::domain_error("EnsembleSpec: n_draws out of range");
        double sum = 0.0;
        for (const auto& [name, w] : weights) {
            if (!(w >= 0.0))
                throw std::domain_error("EnsembleSpec: negative weight for '" + name + "'");
            sum += w;
        }
        if (std::fabs(sum - 1.0) > 1e-12)
            throw std::domain_error("EnsembleSpec: weights sum to " + std::to_string(sum) +
                                    ", expected 1");
    }
};

/// Per-member weights from overall test-set CRPS. Inverse weighting sends a
/// zero-CRPS member's weight to 1 (split evenly if several members are
/// exactly zero, since 1/0 dominates any finite score); softmin weights are
/// exp(-crps/tau), computed against the minimum CRPS so the exponentials
/// cannot underflow together. Tables must cover identical cells, which
/// rank_submissions already enforces.
inline std::map<std::string, double> compute_weights(
    const std::map<std::string, ScoreTable>& test_tables, WeightRule rule, double tau = 1.0) {
    const std::vector<LeaderboardEntry> board = rank_submissions(test_tables);

    std::map<std::string, double> weights;
    if (rule == WeightRule::inverse_crps) {
        std::size_t zeros = 0;
        for (const LeaderboardEntry& e : board)
            if (e.overall.crps == 0.0) ++zeros;
        if (zeros > 0) {
            for (const LeaderboardEntry& e : board)
                weights[e.name] = e.overall.crps == 0.0 ? 1.0 / static_cast<double>(zeros) : 0.0;
            return weights;
        }
        double sum = 0.0;
        for (const LeaderboardEntry& e : board) sum += 1.0 / e.overall.crps;
        for (const LeaderboardEntry& e : board) weights[e.name] = 1.0 / e.overall.crps / sum;
        return weights;
    }

    if (!(tau > 0.0)) throw std::domain_error("compute_weights: softmin needs tau > 0");
    const double best =
        std::min_element(board.begin(), board.end(), [](const auto& a, const auto& b) {
            return a.overall.crps < b.overall.crps;
        })->overall.crps;
    double sum = 0.0;
    for (const LeaderboardEntry& e : board) sum += std::exp(-(e.overall.crps - best) / tau);
    for (const LeaderboardEntry& e : board)
        weights[e.name] = std::exp(-(e.overall.crps - best) / tau) / sum;
    return weights;
}

/// Largest-remainder allocation of n_draws slots proportional to weights
/// (which must sum to 1). Every count differs from its exact share by less
/// than one slot, and the counts sum to n_draws exactly.
inline std::vector<std::int64_t> allocate_slots(const std::vector<double>& weights, int n_draws) {
    if (weights.empty()) throw std::domain_error("allocate_slots: no weights");
    if (n_draws < 1) throw std::domain_error("allocate_slots: n_draws must be >= 1");

    std::vector<std::int64_t> alloc(weights.size());
    std::vector<double> frac(weights.size());
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (!(weights[i] >= 0.0)) throw std::domain_error("allocate_slots: negative weight");
        const double target = weights[i] * n_draws;
        alloc[i] = static_cast<std::int64_t>(std::floor(target));
        frac[i] = target - std::floor(target);
        assigned += alloc[i];
    }
    std::vector<std::size_t> order(weights.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&frac](std::size_t a, std::size_t b) { return frac[a] > frac[b]; });
    for (std::size_t i = 0; assigned < n_draws; ++i) {
        if (i >= order.size())
            throw std::logic_error("allocate_slots: weights sum too far from 1");
        if (weights[order[i]] == 0.0) continue;
        ++alloc[order[i]];
        ++assigned;
    }
    return alloc;
}

/// Pool one cell from several members: each member receives its slot count
/// and fills it with uniform-with-replacement samples of its own draws.
/// Members are consumed in name order from a single per-cell stream, so the
/// result depends only on (names, weights, seed), never on input ordering.
inline ForecastSet pool_draws(const std::map<std::string, ForecastSet>& members,
                              const std::map<std::string, double>& weights, int n_draws,
                              std::uint64_t seed) {
    if (members.empty()) throw std::domain_error("pool_draws: no members");
    const ForecastSet& first = members.begin()->second;
    for (const auto& [name, f] : members) {
        if (!(f.unit == first.unit) || f.month != first.month)
            throw std::invalid_argument("pool_draws: member '" + name +
                                        "' addresses a different (unit, month)");
        if (f.draws.empty())
            throw std::invalid_argument("pool_draws: member '" + name + "' has no draws");
        if (weights.find(name) == weights.end())
            throw std::invalid_argument("pool_draws: no weight for member '" + name + "'");
    }

    std::vector<double> w;
    w.reserve(members.size());
    for (const auto& [name, f] : members) w.push_back(weights.at(name));
    const std::vector<std::int64_t> slots = allocate_slots(w, n_draws);

    ForecastSet pooled{first.unit, first.month, {}};
    pooled.draws.reserve(static_cast<std::size_t>(n_draws));
    RngStream rng = RngStream::keyed(seed, "ensemble", first.unit, first.month);
    std::size_t m = 0;
    for (const auto& [name, f] : members) {
        for (std::int64_t s = 0; s < slots[m]; ++s)
            pooled.draws.push_back(f.draws[rng.below(f.draws.size())]);
        ++m;
    }
    return pooled;
}

/// Pool entire submissions cell by cell. All members must cover exactly the
/// same cells at the same level.
inline ForecastTable pool_submissions(const std::map<std::string, ForecastTable>& members,
                                      const EnsembleSpec& spec) {
    spec.validate();
    if (members.empty()) throw std::domain_error("pool_submissions: no members");
    const auto& [ref_name, ref_table] = *members.begin();
    for (const auto& [name, table] : members) {
        if (table.level() != ref_table.level())
            throw std::invalid_argument("pool_submissions: member '" + name +
                                        "' is at a different level than '" + ref_name + "'");
        if (spec.weights.find(name) == spec.weights.end())
            throw std::invalid_argument("pool_submissions: no weight for member '" + name + "'");
    }

    std::vector<double> w;
    w.reserve(members.size());
    for (const auto& [name, table] : members) w.push_back(spec.weights.at(name));
    const std::vector<std::int64_t> slots_per_member = allocate_slots(w, spec.n_draws);

    ForecastTable pooled(ref_table.level());
    for (const auto& [key, ref_draws] : ref_table.cells()) {
        const auto [unit, month] = key;
        RngStream rng =
            RngStream::keyed(spec.seed, "ensemble", UnitId{ref_table.level(), unit}, month);
        std::vector<std::int32_t> draws;
        draws.reserve(static_cast<std::size_t>(spec.n_draws));
        std::size_t m = 0;
        for (const auto& [name, table] : members) {
            if (!table.has(unit, month))
                throw std::invalid_argument("pool_submissions: member '" + name +
                                            "' is missing cell unit " + std::to_string(unit) +
                                            " month " + format_year_month(month));
            const std::vector<std::int32_t>& src = table.draws(unit, month);
            for (std::int64_t s = 0; s < slots_per_member[m]; ++s)
                draws.push_back(src[rng.below(src.size())]);
            ++m;
        }
        pooled.insert(unit, month, std::move(draws));
    }
    for (const auto& [name, table] : members)
        if (table.cell_count() != ref_table.cell_count())
            throw std::invalid_argument("pool_submissions: member '" + name +
                                        "' covers a different cell set than '" + ref_name + "'");
    return pooled;
}

}  // namespace warcast
