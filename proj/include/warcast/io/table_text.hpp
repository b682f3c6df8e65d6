#pragma once

#include <cstdio>
#include <string>
#include <vector>

#include "warcast/evaluate.hpp"
#include "warcast/io/csv.hpp"

namespace warcast::io {

namespace detail {

inline std::string fixed2(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

}  // namespace detail

/// One submission's aggregate table in markdown: a row per window in
/// declaration order, then the overall row (mean of the window rows).
inline std::string render_score_table_md(const std::string& name, const ScoreTable& table) {
    std::string out = "## " + name + "\n\n";
    out += "| window | cells | crps | ign | mis |\n";
    out += "|---|---:|---:|---:|---:|\n";
    for (int w = 0; w < static_cast<int>(table.window_names().size()); ++w) {
        const ScoreTriple m = table.window_mean(w);
        out += "| " + table.window_names()[static_cast<std::size_t>(w)] + " | " +
               std::to_string(table.window_cell_count(w)) + " | " + detail::fixed2(m.crps) +
               " | " + detail::fixed2(m.ign) + " | " + detail::fixed2(m.mis) + " |\n";
    }
    const ScoreTriple o = table.overall();
    out += "| overall | " + std::to_string(table.rows().size()) + " | " +
           detail::fixed2(o.crps) + " | " + detail::fixed2(o.ign) + " | " +
           detail::fixed2(o.mis) + " |\n";
    return out;
}

inline std::string render_leaderboard_md(const std::vector<LeaderboardEntry>& board) {
    std::string out = "## leaderboard\n\n";
    out += "| rank | submission | crps | ign | mis |\n";
    out += "|---:|---|---:|---:|---:|\n";
    for (const LeaderboardEntry& e : board)
        out += "| " + std::to_string(e.rank) + " | " + e.name + " | " +
               detail::fixed2(e.overall.crps) + " | " + detail::fixed2(e.overall.ign) + " | " +
               detail::fixed2(e.overall.mis) + " |\n";
    return out;
}

/// Aggregates for any number of submissions as one flat CSV, full precision.
/// Submissions appear in the given order; each closes with its overall row.
inline std::string render_aggregates_csv(
    const std::vector<std::pair<std::string, const ScoreTable*>>& tables) {
    std::string out = "submission,window,cells,crps,ign,mis\n";
    for (const auto& [name, table] : tables) {
        for (int w = 0; w < static_cast<int>(table->window_names().size()); ++w) {
            const ScoreTriple m = table->window_mean(w);
            out += name + "," + table->window_names()[static_cast<std::size_t>(w)] + "," +
                   std::to_string(table->window_cell_count(w)) + "," + format_double(m.crps) +
                   "," + format_double(m.ign) + "," + format_double(m.mis) + "\n";
        }
        const ScoreTriple o = table->overall();
        out += name + ",overall," + std::to_string(table->rows().size()) + "," +
               format_double(o.crps) + "," + format_double(o.ign) + "," + format_double(o.mis) +
               "\n";
    }
    return out;
}

}  // namespace warcast::io
