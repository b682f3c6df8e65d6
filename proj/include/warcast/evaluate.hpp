#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "warcast/forecast.hpp"
#include "warcast/panel.hpp"
#include "warcast/parallel.hpp"
#include "warcast/score.hpp"
#include "warcast/window.hpp"

namespace warcast {

/// Per-cell scores plus the two aggregate layers: a mean per evaluation
/// window and an overall figure that is the unweighted mean of the window
/// means (not the pooled mean over cells; the two differ whenever windows
/// hold different cell counts). Window order is the declaration order and is
/// preserved through files and reports.
class ScoreTable {
  public:
    struct Row {
        int window = 0;
        std::int32_t unit = 0;
        MonthId month = 0;
        ScoreTriple score;
    };

    ScoreTable(Level level, std::vector<std::string> window_names)
        : level_(level), window_names_(std::move(window_names)) {
        if (window_names_.empty())
            throw std::invalid_argument("ScoreTable: at least one window required");
    }

    Level level() const { return level_; }
    const std::vector<std::string>& window_names() const { return window_names_; }
    const std::vector<Row>& rows() const { return rows_; }

    void add_row(int window, std::int32_t unit, MonthId month, ScoreTriple score) {
        if (window < 0 || window >= static_cast<int>(window_names_.size()))
            throw std::out_of_range("ScoreTable: window index out of range");
        if (!std::isfinite(score.crps) || !std::isfinite(score.ign) || !std::isfinite(score.mis))
            throw std::runtime_error("ScoreTable: non-finite score for unit " +
                                     std::to_string(unit) + " month " + format_year_month(month));
        rows_.push_back(Row{window, unit, month, score});
    }

    /// Canonical row order: window declaration order, then unit, then month.
    void sort_rows() {
        std::sort(rows_.begin(), rows_.end(), [](const Row& a, const Row& b) {
            if (a.window != b.window) return a.window < b.window;
            if (a.unit != b.unit) return a.unit < b.unit;
            return a.month < b.month;
        });
    }

    std::size_t window_cell_count(int window) const {
        std::size_t n = 0;
        for (const Row& r : rows_)
            if (r.window == window) ++n;
        return n;
    }

    /// Arithmetic mean of the per-cell scores inside one window.
    ScoreTriple window_mean(int window) const {
        ScoreTriple sum;
        std::size_t n = 0;
        for (const Row& r : rows_) {
            if (r.window != window) continue;
            sum.crps += r.score.crps;
            sum.ign += r.score.ign;
            sum.mis += r.score.mis;
            ++n;
        }
        if (n == 0)
            throw std::runtime_error("ScoreTable: window '" + window_names_.at(
                                         static_cast<std::size_t>(window)) +
                                     "' has no scored cells");
        const auto d = static_cast<double>(n);
        return ScoreTriple{sum.crps / d, sum.ign / d, sum.mis / d};
    }

    /// Unweighted mean of the window means.
    ScoreTriple overall() const {
        ScoreTriple sum;
        for (int w = 0; w < static_cast<int>(window_names_.size()); ++w) {
            const ScoreTriple m = window_mean(w);
            sum.crps += m.crps;
            sum.ign += m.ign;
            sum.mis += m.mis;
        }
        const auto d = static_cast<double>(window_names_.size());
        return ScoreTriple{sum.crps / d, sum.ign / d, sum.mis / d};
    }

    /// The (unit, month) keys this table scored, in row order.
    std::vector<std::pair<std::int32_t, MonthId>> cell_keys() const {
        std::vector<std::pair<std::int32_t, MonthId>> keys;
        keys.reserve(rows_.size());
        for (const Row& r : rows_) keys.emplace_back(r.unit, r.month);
        return keys;
    }

  private:
    Level level_;
    std::vector<std::string> window_names_;
    std::vector<Row> rows_;
};

/// Accounting of panel cells inside the declared windows that no forecast
/// addressed. Gaps are reported, never silently scored or skipped.
struct CoverageReport {
    std::size_t forecast_cells = 0;
    std::size_t panel_cells_in_windows = 0;
    std::vector<std::pair<std::int32_t, MonthId>> unforecast_cells;
};

struct EvaluationResult {
    ScoreTable table;
    CoverageReport coverage;
};

namespace detail {

inline std::string format_cell_list(const std::vector<std::pair<std::int32_t, MonthId>>& cells,
                                    std::size_t cap = 20) {
    std::string msg;
    for (std::size_t i = 0; i < cells.size() && i < cap; ++i) {
        msg += (i ? ", " : "") + std::to_string(cells[i].first) + "@" +
               format_year_month(cells[i].second);
    }
    if (cells.size() > cap)
        msg += ", and " + std::to_string(cells.size() - cap) + " more";
    return msg;
}

}  // namespace detail

/// Score every forecast cell against the panel. Every forecast month must
/// fall inside a declared window and have an observation; both failures
/// abort with the offending keys. Cells are scored in parallel; results land
/// in index-addressed slots, so the table is identical for any schedule.
inline EvaluationResult score_submission(const ForecastTable& forecasts,
                                         const ObservationPanel& panel,
                                         const std::vector<EvaluationWindow>& windows,
                                         const ScoreConfig& cfg) {
    if (forecasts.level() != panel.level())
        throw std::invalid_argument("score_submission: forecast level " +
                                    std::string(level_name(forecasts.level())) +
                                    " does not match panel level " +
                                    std::string(level_name(panel.level())));
    if (forecasts.empty()) throw std::invalid_argument("score_submission: empty submission");
    const WindowIndex index(windows);

    struct Cell {
        const std::vector<std::int32_t>* draws;
        std::int32_t unit;
        MonthId month;
        int window;
        std::int32_t observed;
    };
    std::vector<Cell> cells;
    cells.reserve(forecasts.cell_count());
    std::vector<std::pair<std::int32_t, MonthId>> unwindowed;
    std::vector<std::pair<std::int32_t, MonthId>> unobserved;
    for (const auto& [key, draws] : forecasts.cells()) {
        const auto [unit, month] = key;
        const int w = index.find(month);
        if (w < 0) {
            unwindowed.emplace_back(unit, month);
            continue;
        }
        const auto obs = panel.get(unit, month);
        if (!obs) {
            unobserved.emplace_back(unit, month);
            continue;
        }
        cells.push_back(Cell{&draws, unit, month, w, *obs});
    }
    if (!unwindowed.empty())
        throw std::invalid_argument("score_submission: forecast months outside every declared "
                                    "window: " +
                                    detail::format_cell_list(unwindowed));
    if (!unobserved.empty())
        throw std::invalid_argument("score_submission: no observation for forecast cells: " +
                                    detail::format_cell_list(unobserved));

    std::vector<ScoreTriple> scores(cells.size());
    parallel_for(cells.size(), [&](std::size_t i) {
        scores[i] = score_cell(*cells[i].draws, cells[i].observed, cfg);
    });

    std::vector<std::string> names;
    names.reserve(windows.size());
    for (const EvaluationWindow& w : windows) names.push_back(w.name);
    EvaluationResult result{ScoreTable(panel.level(), std::move(names)), CoverageReport{}};
    for (std::size_t i = 0; i < cells.size(); ++i)
        result.table.add_row(cells[i].window, cells[i].unit, cells[i].month, scores[i]);
    result.table.sort_rows();

    result.coverage.forecast_cells = cells.size();
    for (const auto& [unit, series] : panel.series()) {
        for (MonthId m = series.first; m <= series.last(); ++m) {
            if (index.find(m) < 0) continue;
            ++result.coverage.panel_cells_in_windows;
            if (!forecasts.has(unit, m)) result.coverage.unforecast_cells.emplace_back(unit, m);
        }
    }
    return result;
}

struct LeaderboardEntry {
    std::string name;
    ScoreTriple overall;
    int rank = 0;
};

/// Rank by ascending overall CRPS, ties broken by name. Submissions must
/// have scored exactly the same (unit, month) cells; otherwise the overall
/// figures measure different test sets and ordering them is meaningless.
inline std::vector<LeaderboardEntry> rank_submissions(
    const std::map<std::string, ScoreTable>& tables) {
    if (tables.empty()) throw std::invalid_argument("rank_submissions: no score tables");

    const auto& reference = *tables.begin();
    auto ref_keys = reference.second.cell_keys();
    std::sort(ref_keys.begin(), ref_keys.end());
    for (const auto& [name, table] : tables) {
        auto keys = table.cell_keys();
        std::sort(keys.begin(), keys.end());
        if (keys != ref_keys)
            throw std::invalid_argument("rank_submissions: '" + name + "' and '" +
                                        reference.first +
                                        "' scored different cell sets; overall scores are not "
                                        "comparable");
    }

    std::vector<LeaderboardEntry> board;
    board.reserve(tables.size());
    for (const auto& [name, table] : tables)
        board.push_back(LeaderboardEntry{name, table.overall(), 0});
    std::sort(board.begin(), board.end(), [](const LeaderboardEntry& a,
                                             const LeaderboardEntry& b) {
        if (a.overall.crps != b.overall.crps) return a.overall.crps < b.overall.crps;
        return a.name < b.name;
    });
    for (std::size_t i = 0; i < board.size(); ++i) board[i].rank = static_cast<int>(i) + 1;
    return board;
}

}  // namespace warcast
