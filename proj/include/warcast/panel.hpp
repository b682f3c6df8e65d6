#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "warcast/calendar.hpp"
#include "warcast/units.hpp"

namespace warcast {

/// Ground-truth fatality counts keyed by (unit, month). Each unit covers a
/// contiguous month range; values are non-negative. Immutable once built.
class ObservationPanel {
  public:
    struct Series {
        MonthId first = 0;
        std::vector<std::int32_t> values;
        MonthId last() const { return first + static_cast<MonthId>(values.size()) - 1; }
    };

    class Builder {
      public:
        explicit Builder(Level level) : level_(level) {}

        Builder& add(std::int32_t unit_id, MonthId month, std::int32_t fatalities) {
            const UnitId u{level_, unit_id};
            require_valid_unit(u);
            if (month < 1)
                throw std::domain_error("observation month_id must be >= 1, got " +
                                        std::to_string(month));
            if (fatalities < 0)
                throw std::domain_error("negative fatality count " + std::to_string(fatalities) +
                                        " for unit " + std::to_string(unit_id) + " month " +
                                        std::to_string(month));
            const auto [it, inserted] = staged_[unit_id].emplace(month, fatalities);
            if (!inserted)
                throw std::invalid_argument("duplicate observation for unit " +
                                            std::to_string(unit_id) + " month " +
                                            std::to_string(month));
            return *this;
        }

        ObservationPanel build() && {
            ObservationPanel panel(level_);
            for (auto& [unit_id, months] : staged_) {
                Series s;
                s.first = months.begin()->first;
                s.values.reserve(months.size());
                MonthId expected = s.first;
                for (const auto& [month, value] : months) {
                    if (month != expected)
                        throw std::invalid_argument(
                            "unit " + std::to_string(unit_id) + " has a gap at month " +
                            format_year_month(expected) + "; per-unit coverage must be contiguous");
                    s.values.push_back(value);
                    ++expected;
                }
                panel.series_.emplace(unit_id, std::move(s));
            }
            return panel;
        }

      private:
        Level level_;
        std::map<std::int32_t, std::map<MonthId, std::int32_t>> staged_;
    };

    Level level() const { return level_; }
    std::size_t unit_count() const { return series_.size(); }
    std::size_t cell_count() const {
        std::size_t n = 0;
        for (const auto& [id, s] : series_) n += s.values.size();
        return n;
    }

    bool has(std::int32_t unit_id, MonthId month) const { return get(unit_id, month).has_value(); }

    std::optional<std::int32_t> get(std::int32_t unit_id, MonthId month) const {
        const auto it = series_.find(unit_id);
        if (it == series_.end()) return std::nullopt;
        const Series& s = it->second;
        if (month < s.first || month > s.last()) return std::nullopt;
        return s.values[static_cast<std::size_t>(month - s.first)];
    }

    std::int32_t at(std::int32_t unit_id, MonthId month) const {
        const auto v = get(unit_id, month);
        if (!v)
            throw std::out_of_range("no observation for " + std::string(level_name(level_)) +
                                    " unit " + std::to_string(unit_id) + " month " +
                                    format_year_month(month));
        return *v;
    }

    /// Unit ids in ascending order.
    std::vector<std::int32_t> unit_ids() const {
        std::vector<std::int32_t> out;
        out.reserve(series_.size());
        for (const auto& [id, s] : series_) out.push_back(id);
        return out;
    }

    const std::map<std::int32_t, Series>& series() const { return series_; }

    /// True when every unit covers [first, last] entirely.
    bool covers(std::int32_t unit_id, MonthId first, MonthId last) const {
        const auto it = series_.find(unit_id);
        if (it == series_.end()) return false;
        return it->second.first <= first && it->second.last() >= last;
    }

  private:
    explicit ObservationPanel(Level level) : level_(level) {}

    Level level_;
    std::map<std::int32_t, Series> series_;
};

}  // namespace warcast
