#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "warcast/benchmarks.hpp"
#include "warcast/calendar.hpp"
#include "warcast/evaluate.hpp"
#include "warcast/forecast.hpp"
#include "warcast/io/csv.hpp"
#include "warcast/panel.hpp"
#include "warcast/units.hpp"
#include "warcast/window.hpp"

namespace warcast::io {

// ---------------------------------------------------------------------------
// Header resolution. Columns are matched by name in any order; the unit
// column name doubles as the level declaration (country_id vs priogrid_gid).
// ---------------------------------------------------------------------------

namespace detail {

struct Header {
    Level level = Level::cm;
    std::vector<int> index;  // position of each requested column in the file
};

/// Resolve `names` (with "<unit>" standing for either unit column) against
/// the header fields. Every requested column must appear exactly once and no
/// unrequested column may appear.
inline Header resolve_header(const std::string& path,
                             const std::vector<std::string_view>& fields,
                             const std::vector<std::string_view>& names) {
    Header h;
    bool level_known = false;
    h.index.assign(names.size(), -1);
    for (std::size_t col = 0; col < fields.size(); ++col) {
        const std::string_view field = fields[col];
        std::size_t slot = names.size();
        for (std::size_t i = 0; i < names.size(); ++i) {
            const bool unit_slot = names[i] == "<unit>";
            if ((unit_slot && (field == "country_id" || field == "priogrid_gid")) ||
                (!unit_slot && field == names[i])) {
                slot = i;
                break;
            }
        }
        if (slot == names.size())
            throw ParseError(path, 1, "unexpected column '" + std::string(field) + "'");
        if (h.index[slot] != -1)
            throw ParseError(path, 1, "duplicate column '" + std::string(field) + "'");
        h.index[slot] = static_cast<int>(col);
        if (names[slot] == "<unit>") {
            h.level = field == "country_id" ? Level::cm : Level::pgm;
            level_known = true;
        }
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (h.index[i] != -1) continue;
        const std::string want = names[i] == "<unit>" ? "country_id or priogrid_gid"
                                                      : std::string(names[i]);
        throw ParseError(path, 1, "missing column '" + want + "'");
    }
    if (!level_known) throw std::logic_error("resolve_header: no unit column requested");
    return h;
}

inline std::int32_t field_i32(const std::string& path, std::size_t line,
                              std::string_view column, std::string_view value) {
    std::int32_t out = 0;
    if (!parse_i32(value, out))
        throw ParseError(path, line, "column '" + std::string(column) + "': '" +
                                         std::string(value) + "' is not a 32-bit integer");
    return out;
}

inline double field_f64(const std::string& path, std::size_t line, std::string_view column,
                        std::string_view value) {
    double out = 0.0;
    if (!parse_f64(value, out))
        throw ParseError(path, line, "column '" + std::string(column) + "': '" +
                                         std::string(value) + "' is not a number");
    return out;
}

inline void require_field_count(const std::string& path, std::size_t line,
                                const std::vector<std::string_view>& fields, std::size_t want) {
    if (fields.size() != want)
        throw ParseError(path, line,
                         "expected " + std::to_string(want) + " fields, found " +
                             std::to_string(fields.size()));
}

/// Large outputs are assembled in a string buffer and flushed in chunks.
class ChunkedWriter {
  public:
    explicit ChunkedWriter(const std::string& path) : out_(path) { buf_.reserve(kChunk + 256); }

    void append(std::string_view s) {
        buf_ += s;
        if (buf_.size() >= kChunk) flush();
    }

    void append_i64(std::int64_t v) { buf_ += std::to_string(v); }
    void append_f64(double v) { buf_ += format_double(v); }

    void close() {
        flush();
        out_.close();
    }

  private:
    static constexpr std::size_t kChunk = 1 << 20;

    void flush() {
        out_.write(buf_);
        buf_.clear();
    }

    FileWriter out_;
    std::string buf_;
};

}  // namespace detail

// ---------------------------------------------------------------------------
// Submission files: one draw per row, draw ids 0..n-1 within each cell.
// ---------------------------------------------------------------------------

/// Read a submission. Columns may come in either index order; draws are
/// ordered by their draw id. Structural invariants (unit validity, draw-id
/// contiguity, draw-count bounds, non-negative predictions) are enforced
/// here; use the validation report instead when a classified diagnosis of a
/// possibly-broken file is wanted.
inline ForecastTable read_submission(const std::string& path) {
    LineReader in(path);
    std::string_view line;
    std::vector<std::string_view> fields;
    if (!in.next(line)) throw ParseError(path, 1, "empty file: missing header");
    split_fields(line, fields);
    const detail::Header h =
        detail::resolve_header(path, fields, {"<unit>", "month_id", "draw", "prediction"});

    std::map<ForecastTable::Key, std::vector<std::pair<std::int32_t, std::int32_t>>> cells;
    while (in.next(line)) {
        if (line.empty()) continue;
        split_fields(line, fields);
        detail::require_field_count(path, in.line_number(), fields, 4);
        const std::size_t ln = in.line_number();
        const auto unit = detail::field_i32(path, ln, "unit", fields[static_cast<std::size_t>(h.index[0])]);
        const auto month = detail::field_i32(path, ln, "month_id", fields[static_cast<std::size_t>(h.index[1])]);
        const auto draw = detail::field_i32(path, ln, "draw", fields[static_cast<std::size_t>(h.index[2])]);
        const auto pred = detail::field_i32(path, ln, "prediction", fields[static_cast<std::size_t>(h.index[3])]);
        if (!unit_id_valid(UnitId{h.level, unit}))
            throw ParseError(path, ln, "invalid " + std::string(unit_column_name(h.level)) + " " +
                                           std::to_string(unit));
        if (month < 1) throw ParseError(path, ln, "month_id must be >= 1");
        if (draw < 0) throw ParseError(path, ln, "draw id must be >= 0");
        if (pred < 0)
            throw ParseError(path, ln, "negative prediction " + std::to_string(pred));
        cells[{unit, month}].emplace_back(draw, pred);
    }

    ForecastTable table(h.level);
    for (auto& [key, pairs] : cells) {
        std::sort(pairs.begin(), pairs.end());
        const std::string cell = std::string(unit_column_name(h.level)) + " " +
                                 std::to_string(key.first) + " month " +
                                 std::to_string(key.second);
        for (std::size_t i = 0; i < pairs.size(); ++i) {
            if (pairs[i].first != static_cast<std::int32_t>(i))
                throw ParseError(path, 0,
                                 cell + ": draw ids are not contiguous 0.." +
                                     std::to_string(pairs.size() - 1));
        }
        if (pairs.size() < kMinDraws || pairs.size() > kMaxDraws)
            throw ParseError(path, 0,
                             cell + ": " + std::to_string(pairs.size()) +
                                 " draws, outside [" + std::to_string(kMinDraws) + ", " +
                                 std::to_string(kMaxDraws) + "]");
        std::vector<std::int32_t> draws;
        draws.reserve(pairs.size());
        for (const auto& [id, value] : pairs) draws.push_back(value);
        table.insert(key.first, key.second, std::move(draws));
    }
    return table;
}

/// Write a submission in canonical form: header and row order follow the
/// level's index convention (month-major at cm, unit-major at pgm), draw ids
/// count up in draw order.
inline void write_submission(const ForecastTable& table, const std::string& path) {
    detail::ChunkedWriter out(path);
    const bool cm = table.level() == Level::cm;
    out.append(cm ? "month_id,country_id,draw,prediction\n"
                  : "priogrid_gid,month_id,draw,prediction\n");

    std::vector<const std::pair<const ForecastTable::Key, std::vector<std::int32_t>>*> order;
    order.reserve(table.cell_count());
    for (const auto& cell : table.cells()) order.push_back(&cell);
    if (cm)
        std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) {
            return std::pair(a->first.second, a->first.first) <
                   std::pair(b->first.second, b->first.first);
        });

    for (const auto* cell : order) {
        const auto [unit, month] = cell->first;
        const std::int32_t a = cm ? month : unit;
        const std::int32_t b = cm ? unit : month;
        for (std::size_t i = 0; i < cell->second.size(); ++i) {
            out.append_i64(a);
            out.append(",");
            out.append_i64(b);
            out.append(",");
            out.append_i64(static_cast<std::int64_t>(i));
            out.append(",");
            out.append_i64(cell->second[i]);
            out.append("\n");
        }
    }
    out.close();
}

// ---------------------------------------------------------------------------
// Observation files: one (unit, month, fatalities) row per cell.
// ---------------------------------------------------------------------------

inline ObservationPanel read_observations(const std::string& path) {
    LineReader in(path);
    std::string_view line;
    std::vector<std::string_view> fields;
    if (!in.next(line)) throw ParseError(path, 1, "empty file: missing header");
    split_fields(line, fields);
    const detail::Header h =
        detail::resolve_header(path, fields, {"<unit>", "month_id", "fatalities"});

    ObservationPanel::Builder builder(h.level);
    while (in.next(line)) {
        if (line.empty()) continue;
        split_fields(line, fields);
        detail::require_field_count(path, in.line_number(), fields, 3);
        const std::size_t ln = in.line_number();
        const auto unit = detail::field_i32(path, ln, "unit", fields[static_cast<std::size_t>(h.index[0])]);
        const auto month = detail::field_i32(path, ln, "month_id", fields[static_cast<std::size_t>(h.index[1])]);
        const auto count = detail::field_i32(path, ln, "fatalities", fields[static_cast<std::size_t>(h.index[2])]);
        try {
            builder.add(unit, month, count);
        } catch (const std::exception& e) {
            throw ParseError(path, ln, e.what());
        }
    }
    return std::move(builder).build();
}

inline void write_observations(const ObservationPanel& panel, const std::string& path) {
    detail::ChunkedWriter out(path);
    const bool cm = panel.level() == Level::cm;
    out.append(cm ? "month_id,country_id,fatalities\n" : "priogrid_gid,month_id,fatalities\n");

    if (cm) {
        // Month-major ordering needs the transpose of the per-unit storage.
        std::vector<std::tuple<MonthId, std::int32_t, std::int32_t>> rows;
        rows.reserve(panel.cell_count());
        for (const auto& [unit, s] : panel.series())
            for (MonthId m = s.first; m <= s.last(); ++m)
                rows.emplace_back(m, unit, s.values[static_cast<std::size_t>(m - s.first)]);
        std::sort(rows.begin(), rows.end());
        for (const auto& [m, unit, count] : rows) {
            out.append_i64(m);
            out.append(",");
            out.append_i64(unit);
            out.append(",");
            out.append_i64(count);
            out.append("\n");
        }
    } else {
        for (const auto& [unit, s] : panel.series()) {
            for (MonthId m = s.first; m <= s.last(); ++m) {
                out.append_i64(unit);
                out.append(",");
                out.append_i64(m);
                out.append(",");
                out.append_i64(s.values[static_cast<std::size_t>(m - s.first)]);
                out.append("\n");
            }
        }
    }
    out.close();
}

// ---------------------------------------------------------------------------
// Point submissions: one row per cell, expanded to draws via Poisson.
// ---------------------------------------------------------------------------

/// Read a point-prediction file and expand every cell into n_draws Poisson
/// samples around its point, seeded per (unit, month).
inline ForecastTable load_point_submission(const std::string& path, int n_draws,
                                           std::uint64_t seed) {
    if (n_draws < static_cast<int>(kMinDraws) || n_draws > static_cast<int>(kMaxDraws))
        throw std::domain_error("load_point_submission: n_draws out of range");
    LineReader in(path);
    std::string_view line;
    std::vector<std::string_view> fields;
    if (!in.next(line)) throw ParseError(path, 1, "empty file: missing header");
    split_fields(line, fields);
    const detail::Header h = detail::resolve_header(path, fields, {"<unit>", "month_id", "point"});

    ForecastTable table(h.level);
    while (in.next(line)) {
        if (line.empty()) continue;
        split_fields(line, fields);
        detail::require_field_count(path, in.line_number(), fields, 3);
        const std::size_t ln = in.line_number();
        const auto unit = detail::field_i32(path, ln, "unit", fields[static_cast<std::size_t>(h.index[0])]);
        const auto month = detail::field_i32(path, ln, "month_id", fields[static_cast<std::size_t>(h.index[1])]);
        const double point = detail::field_f64(path, ln, "point", fields[static_cast<std::size_t>(h.index[2])]);
        if (!unit_id_valid(UnitId{h.level, unit}))
            throw ParseError(path, ln, "invalid " + std::string(unit_column_name(h.level)) + " " +
                                           std::to_string(unit));
        if (month < 1) throw ParseError(path, ln, "month_id must be >= 1");
        if (point < 0.0 || !std::isfinite(point))
            throw ParseError(path, ln, "point must be finite and >= 0");
        RngStream rng = RngStream::keyed(seed, "point_expand", UnitId{h.level, unit}, month);
        try {
            table.insert(unit, month, poisson_expand(point, n_draws, rng));
        } catch (const std::exception& e) {
            throw ParseError(path, ln, e.what());
        }
    }
    return table;
}

// ---------------------------------------------------------------------------
// Window config: one window per line, `name,cutoff,first_forecast` with
// dates as YYYY-MM. Blank lines and #-comments are allowed.
// ---------------------------------------------------------------------------

inline std::vector<EvaluationWindow> read_windows(const std::string& path) {
    LineReader in(path);
    std::string_view line;
    std::vector<std::string_view> fields;
    std::vector<EvaluationWindow> windows;
    std::set<std::string> seen;
    while (in.next(line)) {
        const std::string_view trimmed = detail::trim(line);
        if (trimmed.empty() || trimmed.front() == '#') continue;
        split_fields(trimmed, fields);
        detail::require_field_count(path, in.line_number(), fields, 3);
        const std::string name(fields[0]);
        if (name.empty()) throw ParseError(path, in.line_number(), "empty window name");
        if (!seen.insert(name).second)
            throw ParseError(path, in.line_number(), "duplicate window name '" + name + "'");
        try {
            windows.push_back(EvaluationWindow::from_parts(name, parse_year_month(fields[1]),
                                                           parse_year_month(fields[2])));
        } catch (const std::exception& e) {
            throw ParseError(path, in.line_number(), e.what());
        }
    }
    if (windows.empty()) throw ParseError(path, in.line_number(), "no windows declared");
    return windows;
}

// ---------------------------------------------------------------------------
// Region masks: newline-delimited grid ids.
// ---------------------------------------------------------------------------

inline std::vector<std::int32_t> read_mask(const std::string& path) {
    LineReader in(path);
    std::string_view line;
    std::vector<std::int32_t> gids;
    std::set<std::int32_t> seen;
    while (in.next(line)) {
        const std::string_view trimmed = detail::trim(line);
        if (trimmed.empty() || trimmed.front() == '#') continue;
        std::int32_t gid = 0;
        if (!parse_i32(trimmed, gid))
            throw ParseError(path, in.line_number(),
                             "'" + std::string(trimmed) + "' is not a grid id");
        if (gid < 1 || gid > kPgmMaxGid)
            throw ParseError(path, in.line_number(),
                             "grid id " + std::to_string(gid) + " outside 1.." +
                                 std::to_string(kPgmMaxGid));
        if (!seen.insert(gid).second)
            throw ParseError(path, in.line_number(), "duplicate grid id " + std::to_string(gid));
        gids.push_back(gid);
    }
    if (gids.empty()) throw ParseError(path, in.line_number(), "empty mask");
    std::sort(gids.begin(), gids.end());
    return gids;
}

// ---------------------------------------------------------------------------
// Score tables: the per-cell rows; aggregates are recomputed on read.
// ---------------------------------------------------------------------------

inline void write_score_table(const ScoreTable& table, const std::string& path) {
    for (const std::string& name : table.window_names())
        if (name.find(',') != std::string::npos || name.find('\n') != std::string::npos)
            throw std::invalid_argument("write_score_table: window name '" + name +
                                        "' contains a delimiter");
    detail::ChunkedWriter out(path);
    out.append("window,");
    out.append(unit_column_name(table.level()));
    out.append(",month_id,crps,ign,mis\n");
    for (const ScoreTable::Row& r : table.rows()) {
        out.append(table.window_names()[static_cast<std::size_t>(r.window)]);
        out.append(",");
        out.append_i64(r.unit);
        out.append(",");
        out.append_i64(r.month);
        out.append(",");
        out.append_f64(r.score.crps);
        out.append(",");
        out.append_f64(r.score.ign);
        out.append(",");
        out.append_f64(r.score.mis);
        out.append("\n");
    }
    out.close();
}

inline ScoreTable read_score_table(const std::string& path) {
    LineReader in(path);
    std::string_view line;
    std::vector<std::string_view> fields;
    if (!in.next(line)) throw ParseError(path, 1, "empty file: missing header");
    split_fields(line, fields);
    const detail::Header h = detail::resolve_header(
        path, fields, {"window", "<unit>", "month_id", "crps", "ign", "mis"});

    struct Raw {
        int window;
        std::int32_t unit;
        MonthId month;
        ScoreTriple score;
    };
    std::vector<Raw> raws;
    std::vector<std::string> names;
    std::map<std::string, int, std::less<>> name_index;
    std::set<std::tuple<std::int32_t, MonthId>> seen;
    while (in.next(line)) {
        if (line.empty()) continue;
        split_fields(line, fields);
        detail::require_field_count(path, in.line_number(), fields, 6);
        const std::size_t ln = in.line_number();
        const std::string_view window = fields[static_cast<std::size_t>(h.index[0])];
        if (window.empty()) throw ParseError(path, ln, "empty window name");
        const auto unit = detail::field_i32(path, ln, "unit", fields[static_cast<std::size_t>(h.index[1])]);
        const auto month = detail::field_i32(path, ln, "month_id", fields[static_cast<std::size_t>(h.index[2])]);
        if (!unit_id_valid(UnitId{h.level, unit}))
            throw ParseError(path, ln, "invalid " + std::string(unit_column_name(h.level)) + " " +
                                           std::to_string(unit));
        if (month < 1) throw ParseError(path, ln, "month_id must be >= 1");
        if (!seen.emplace(unit, month).second)
            throw ParseError(path, ln, "duplicate score row for unit " + std::to_string(unit) +
                                           " month " + std::to_string(month));
        auto it = name_index.find(window);
        if (it == name_index.end()) {
            it = name_index.emplace(std::string(window), static_cast<int>(names.size())).first;
            names.emplace_back(window);
        }
        raws.push_back(Raw{
            it->second, unit, month,
            ScoreTriple{detail::field_f64(path, ln, "crps", fields[static_cast<std::size_t>(h.index[3])]),
                        detail::field_f64(path, ln, "ign", fields[static_cast<std::size_t>(h.index[4])]),
                        detail::field_f64(path, ln, "mis", fields[static_cast<std::size_t>(h.index[5])])}});
    }
    if (raws.empty()) throw ParseError(path, in.line_number(), "no score rows");

    ScoreTable table(h.level, std::move(names));
    for (const Raw& r : raws) {
        try {
            table.add_row(r.window, r.unit, r.month, r.score);
        } catch (const std::exception& e) {
            throw ParseError(path, 0, e.what());
        }
    }
    table.sort_rows();
    return table;
}

}  // namespace warcast::io
