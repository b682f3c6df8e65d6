#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace warcast {

/// Months are indexed by a single integer: month_id 1 is January 1980.
using MonthId = std::int32_t;

struct YearMonth {
    int year = 0;
    int month = 0;  // 1..12
    bool operator==(const YearMonth&) const = default;
};

inline MonthId month_id_from_date(int year, int month) {
    if (year < 1980)
        throw std::domain_error("month_id_from_date: year must be >= 1980, got " +
                                std::to_string(year));
    if (month < 1 || month > 12)
        throw std::domain_error("month_id_from_date: month must be in [1,12], got " +
                                std::to_string(month));
    return static_cast<MonthId>((year - 1980) * 12 + month);
}

inline YearMonth date_from_month_id(MonthId m) {
    if (m < 1)
        throw std::domain_error("date_from_month_id: month_id must be >= 1, got " +
                                std::to_string(m));
    return YearMonth{1980 + (m - 1) / 12, (m - 1) % 12 + 1};
}

/// "2018-01" style formatting used in window configs and reports.
inline std::string format_year_month(MonthId m) {
    const YearMonth ym = date_from_month_id(m);
    char buf[16];
    std::snprintf(buf, sizeof(buf), "%04d-%02d", ym.year, ym.month);
    return std::string(buf);
}

/// Accepts either "YYYY-MM" or a bare month_id integer.
inline MonthId parse_year_month(std::string_view s) {
    const auto dash = s.find('-');
    try {
        if (dash == std::string_view::npos)
            return static_cast<MonthId>(std::stol(std::string(s)));
        const int year = std::stoi(std::string(s.substr(0, dash)));
        const int month = std::stoi(std::string(s.substr(dash + 1)));
        return month_id_from_date(year, month);
    } catch (const std::domain_error&) {
        throw;
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_year_month: cannot parse '" + std::string(s) + "'");
    }
}

}  // namespace warcast
