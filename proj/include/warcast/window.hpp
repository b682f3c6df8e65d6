#pragma once

#include <array>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "warcast/calendar.hpp"

namespace warcast {

/// One forecast window: a training cutoff (last usable month of data) and
/// the twelve consecutive months to be forecast.
struct EvaluationWindow {
    std::string name;
    MonthId train_cutoff = 0;
    std::array<MonthId, 12> forecast_months{};

    static EvaluationWindow from_parts(std::string name, MonthId cutoff, MonthId first_forecast) {
        if (cutoff < 1)
            throw std::invalid_argument("window '" + name + "': cutoff month_id must be >= 1");
        if (first_forecast <= cutoff)
            throw std::invalid_argument("window '" + name +
                                        "': first forecast month must follow the cutoff");
        EvaluationWindow w;
        w.name = std::move(name);
        w.train_cutoff = cutoff;
        for (int i = 0; i < 12; ++i) w.forecast_months[static_cast<std::size_t>(i)] = first_forecast + i;
        return w;
    }

    /// Calendar-year test window: data through October of the preceding year.
    static EvaluationWindow test_year(int year) {
        return from_parts(std::to_string(year), month_id_from_date(year - 1, 10),
                          month_id_from_date(year, 1));
    }

    /// July 2024 - June 2025 on data through April 2024.
    static EvaluationWindow true_future() {
        return from_parts("true_future", month_id_from_date(2024, 4), month_id_from_date(2024, 7));
    }

    MonthId first_month() const { return forecast_months.front(); }
    MonthId last_month() const { return forecast_months.back(); }
    bool contains(MonthId m) const { return m >= first_month() && m <= last_month(); }
};

/// Maps a month to the index of the (unique) window forecasting it.
class WindowIndex {
  public:
    explicit WindowIndex(const std::vector<EvaluationWindow>& windows) : windows_(&windows) {
        for (std::size_t i = 0; i < windows.size(); ++i) {
            for (const MonthId m : windows[i].forecast_months) {
                const auto [it, inserted] = by_month_.emplace(m, i);
                if (!inserted)
                    throw std::invalid_argument("month " + format_year_month(m) +
                                                " is claimed by windows '" +
                                                windows[it->second].name + "' and '" +
                                                windows[i].name + "'");
            }
        }
    }

    /// Window index for month m, or -1 if no declared window forecasts it.
    int find(MonthId m) const {
        const auto it = by_month_.find(m);
        return it == by_month_.end() ? -1 : static_cast<int>(it->second);
    }

    const std::vector<EvaluationWindow>& windows() const { return *windows_; }

  private:
    const std::vector<EvaluationWindow>* windows_;
    std::map<MonthId, std::size_t> by_month_;
};

}  // namespace warcast
