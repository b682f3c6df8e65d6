#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "warcast/calendar.hpp"
#include "warcast/units.hpp"

namespace warcast {

inline constexpr std::size_t kMinDraws = 15;
inline constexpr std::size_t kMaxDraws = 1000;

/// One cell of a submission: the ensemble of draws for a (unit, month).
/// Draw order is preserved as submitted; spectral resampling depends on it.
struct ForecastSet {
    UnitId unit;
    MonthId month = 0;
    std::vector<std::int32_t> draws;
};

/// A full submission: draws keyed by (unit id, month), one level throughout.
/// Iteration order is deterministic (unit, then month, ascending).
class ForecastTable {
  public:
    using Key = std::pair<std::int32_t, MonthId>;

    explicit ForecastTable(Level level) : level_(level) {}

    Level level() const { return level_; }
    std::size_t cell_count() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }

    void insert(std::int32_t unit_id, MonthId month, std::vector<std::int32_t> draws) {
        const auto [it, inserted] = cells_.emplace(Key{unit_id, month}, std::move(draws));
        if (!inserted)
            throw std::invalid_argument("duplicate forecast cell: unit " +
                                        std::to_string(unit_id) + " month " +
                                        std::to_string(month));
    }

    bool has(std::int32_t unit_id, MonthId month) const {
        return cells_.count(Key{unit_id, month}) > 0;
    }

    const std::vector<std::int32_t>& draws(std::int32_t unit_id, MonthId month) const {
        const auto it = cells_.find(Key{unit_id, month});
        if (it == cells_.end())
            throw std::out_of_range("no forecast for unit " + std::to_string(unit_id) +
                                    " month " + std::to_string(month));
        return it->second;
    }

    const std::map<Key, std::vector<std::int32_t>>& cells() const { return cells_; }

  private:
    Level level_;
    std::map<Key, std::vector<std::int32_t>> cells_;
};

}  // namespace warcast
