#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "warcast/forecast.hpp"
#include "warcast/io/csv.hpp"
#include "warcast/io/formats.hpp"
#include "warcast/units.hpp"

namespace warcast::io {

/// Everything that can be wrong with a submission, as a closed set of
/// classes. Validation is total: malformed content lands in one of these,
/// it never escapes as an exception (only an unopenable file does).
enum class ViolationClass {
    schema,                // header unusable or level mismatch
    ill_typed,             // cell value of the wrong type, bad field count
    draw_count_low,        // fewer than 15 draws in a cell
    draw_count_high,       // more than 1000 draws in a cell
    negative_prediction,   // prediction below zero
    duplicate,             // repeated (unit, month, draw)
    non_contiguous_draws,  // draw ids not exactly 0..n-1
    unknown_unit,          // unit invalid for the level or outside the universe
    missing_cell,          // universe cell with no forecast
};

inline std::string_view violation_class_name(ViolationClass c) {
    switch (c) {
        case ViolationClass::schema: return "schema";
        case ViolationClass::ill_typed: return "ill_typed";
        case ViolationClass::draw_count_low: return "draw_count_low";
        case ViolationClass::draw_count_high: return "draw_count_high";
        case ViolationClass::negative_prediction: return "negative_prediction";
        case ViolationClass::duplicate: return "duplicate";
        case ViolationClass::non_contiguous_draws: return "non_contiguous_draws";
        case ViolationClass::unknown_unit: return "unknown_unit";
        case ViolationClass::missing_cell: return "missing_cell";
    }
    return "unknown";
}

struct Violation {
    ViolationClass cls;
    std::size_t line = 0;  // 0 when the finding spans a cell or the file
    std::string detail;
};

struct ValidationReport {
    std::vector<Violation> violations;
    std::size_t rows = 0;
    std::size_t cells = 0;

    bool valid() const { return violations.empty(); }

    bool has(ViolationClass c) const {
        return std::any_of(violations.begin(), violations.end(),
                           [c](const Violation& v) { return v.cls == c; });
    }

    std::size_t count(ViolationClass c) const {
        return static_cast<std::size_t>(
            std::count_if(violations.begin(), violations.end(),
                          [c](const Violation& v) { return v.cls == c; }));
    }

    /// Human-readable summary: per-class counts with a few examples each.
    std::string summary(std::size_t examples_per_class = 5) const {
        if (valid())
            return "valid: " + std::to_string(cells) + " cells, " + std::to_string(rows) +
                   " rows, no violations\n";
        std::string out = std::to_string(violations.size()) + " violation(s) across " +
                          std::to_string(rows) + " rows\n";
        for (int c = static_cast<int>(ViolationClass::schema);
             c <= static_cast<int>(ViolationClass::missing_cell); ++c) {
            const auto cls = static_cast<ViolationClass>(c);
            const std::size_t n = count(cls);
            if (n == 0) continue;
            out += "  " + std::string(violation_class_name(cls)) + ": " + std::to_string(n) + "\n";
            std::size_t shown = 0;
            for (const Violation& v : violations) {
                if (v.cls != cls || shown == examples_per_class) continue;
                out += "    ";
                if (v.line > 0) out += "line " + std::to_string(v.line) + ": ";
                out += v.detail + "\n";
                ++shown;
            }
            if (n > shown) out += "    ... and " + std::to_string(n - shown) + " more\n";
        }
        return out;
    }
};

/// The declared cell universe a submission must cover exactly.
struct Universe {
    Level level = Level::cm;
    std::set<std::pair<std::int32_t, MonthId>> cells;
};

inline Universe read_universe(const std::string& path) {
    LineReader in(path);
    std::string_view line;
    std::vector<std::string_view> fields;
    if (!in.next(line)) throw ParseError(path, 1, "empty file: missing header");
    split_fields(line, fields);
    const detail::Header h = detail::resolve_header(path, fields, {"<unit>", "month_id"});

    Universe u;
    u.level = h.level;
    while (in.next(line)) {
        if (line.empty()) continue;
        split_fields(line, fields);
        detail::require_field_count(path, in.line_number(), fields, 2);
        const std::size_t ln = in.line_number();
        const auto unit = detail::field_i32(path, ln, "unit", fields[static_cast<std::size_t>(h.index[0])]);
        const auto month = detail::field_i32(path, ln, "month_id", fields[static_cast<std::size_t>(h.index[1])]);
        if (!unit_id_valid(UnitId{h.level, unit}))
            throw ParseError(path, ln, "invalid " + std::string(unit_column_name(h.level)) + " " +
                                           std::to_string(unit));
        if (month < 1) throw ParseError(path, ln, "month_id must be >= 1");
        if (!u.cells.emplace(unit, month).second)
            throw ParseError(path, ln, "duplicate universe cell");
    }
    if (u.cells.empty()) throw ParseError(path, in.line_number(), "empty universe");
    return u;
}

/// Scan a submission and classify every defect. Returns after the header
/// when it is unusable (rows cannot be interpreted); otherwise every row is
/// scanned and cell-level checks run on whatever rows were readable.
inline ValidationReport validate_submission(const std::string& path,
                                            std::optional<Level> expected_level,
                                            const Universe* universe = nullptr) {
    ValidationReport report;
    LineReader in(path);
    std::string_view line;
    std::vector<std::string_view> fields;

    if (!in.next(line)) {
        report.violations.push_back({ViolationClass::schema, 1, "empty file: missing header"});
        return report;
    }
    split_fields(line, fields);
    detail::Header header;
    try {
        header = detail::resolve_header(path, fields,
                                        {"<unit>", "month_id", "draw", "prediction"});
    } catch (const ParseError& e) {
        report.violations.push_back({ViolationClass::schema, 1, e.what()});
        return report;
    }
    if (expected_level && header.level != *expected_level)
        report.violations.push_back(
            {ViolationClass::schema, 1,
             "file is at the " + std::string(level_name(header.level)) + " level, expected " +
                 std::string(level_name(*expected_level))});
    if (universe && universe->level != header.level)
        report.violations.push_back(
            {ViolationClass::schema, 1,
             "file is at the " + std::string(level_name(header.level)) +
                 " level but the universe is " + std::string(level_name(universe->level))});

    struct CellRows {
        std::vector<std::int32_t> draw_ids;
    };
    std::map<std::pair<std::int32_t, MonthId>, CellRows> cells;
    std::set<std::int32_t> bad_units;
    std::set<std::tuple<std::int32_t, MonthId, std::int32_t>> seen_rows;
    std::set<std::int32_t> universe_units;
    if (universe)
        for (const auto& cell : universe->cells) universe_units.insert(cell.first);

    while (in.next(line)) {
        if (line.empty()) continue;
        ++report.rows;
        split_fields(line, fields);
        const std::size_t ln = in.line_number();
        if (fields.size() != 4) {
            report.violations.push_back({ViolationClass::ill_typed, ln,
                                         "expected 4 fields, found " +
                                             std::to_string(fields.size())});
            continue;
        }
        std::int32_t unit = 0, month = 0, draw = 0, pred = 0;
        bool typed = true;
        const std::string_view col_names[4] = {"unit", "month_id", "draw", "prediction"};
        std::int32_t* dests[4] = {&unit, &month, &draw, &pred};
        for (int i = 0; i < 4 && typed; ++i) {
            const std::string_view raw = fields[static_cast<std::size_t>(header.index[i])];
            if (!parse_i32(raw, *dests[i])) {
                report.violations.push_back(
                    {ViolationClass::ill_typed, ln,
                     "column '" + std::string(col_names[i]) + "': '" + std::string(raw) +
                         "' is not a 32-bit integer"});
                typed = false;
            }
        }
        if (!typed) continue;
        if (month < 1 || draw < 0) {
            report.violations.push_back({ViolationClass::ill_typed, ln,
                                         month < 1 ? "month_id must be >= 1"
                                                   : "draw id must be >= 0"});
            continue;
        }
        const bool valid_unit = unit_id_valid(UnitId{header.level, unit});
        const bool known_unit =
            valid_unit && (universe == nullptr || universe_units.count(unit) > 0);
        if (!known_unit && bad_units.insert(unit).second)
            report.violations.push_back(
                {ViolationClass::unknown_unit, ln,
                 std::string(unit_column_name(header.level)) + " " + std::to_string(unit) +
                     (valid_unit ? " is not in the declared universe" : " is not a valid id")});
        if (pred < 0)
            report.violations.push_back({ViolationClass::negative_prediction, ln,
                                         "prediction " + std::to_string(pred) + " for " +
                                             std::to_string(unit) + "@" + std::to_string(month)});
        if (!seen_rows.emplace(unit, month, draw).second) {
            report.violations.push_back({ViolationClass::duplicate, ln,
                                         "repeated (unit " + std::to_string(unit) + ", month " +
                                             std::to_string(month) + ", draw " +
                                             std::to_string(draw) + ")"});
            continue;  // count each physical draw row once below
        }
        cells[{unit, month}].draw_ids.push_back(draw);
    }

    report.cells = cells.size();
    for (auto& [key, cell] : cells) {
        const std::string where = std::string(unit_column_name(header.level)) + " " +
                                  std::to_string(key.first) + " month " +
                                  std::to_string(key.second);
        const std::size_t n = cell.draw_ids.size();
        if (n < kMinDraws)
            report.violations.push_back({ViolationClass::draw_count_low, 0,
                                         where + ": " + std::to_string(n) + " draws, need >= " +
                                             std::to_string(kMinDraws)});
        else if (n > kMaxDraws)
            report.violations.push_back({ViolationClass::draw_count_high, 0,
                                         where + ": " + std::to_string(n) + " draws, max " +
                                             std::to_string(kMaxDraws)});
        std::sort(cell.draw_ids.begin(), cell.draw_ids.end());
        for (std::size_t i = 0; i < n; ++i) {
            if (cell.draw_ids[i] != static_cast<std::int32_t>(i)) {
                report.violations.push_back({ViolationClass::non_contiguous_draws, 0,
                                             where + ": draw ids are not 0.." +
                                                 std::to_string(n - 1)});
                break;
            }
        }
    }

    if (universe && header.level == universe->level) {
        for (const auto& cell : universe->cells) {
            if (cells.find(cell) == cells.end())
                report.violations.push_back(
                    {ViolationClass::missing_cell, 0,
                     std::string(unit_column_name(header.level)) + " " +
                         std::to_string(cell.first) + " month " + std::to_string(cell.second) +
                         " has no forecast"});
        }
    }
    return report;
}

}  // namespace warcast::io
