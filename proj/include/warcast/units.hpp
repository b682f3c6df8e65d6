#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace warcast {

/// Level of analysis: whole countries or 0.5-degree grid cells.
enum class Level { cm, pgm };

inline constexpr std::int32_t kGridRows = 360;
inline constexpr std::int32_t kGridCols = 720;
inline constexpr std::int32_t kPgmMaxGid = kGridRows * kGridCols;  // 259200

inline std::string_view level_name(Level level) {
    return level == Level::cm ? "cm" : "pgm";
}

inline Level level_from_name(std::string_view s) {
    if (s == "cm") return Level::cm;
    if (s == "pgm") return Level::pgm;
    throw std::invalid_argument("unknown level '" + std::string(s) + "' (expected cm or pgm)");
}

/// Column that indexes units in interchange files at each level.
inline std::string_view unit_column_name(Level level) {
    return level == Level::cm ? "country_id" : "priogrid_gid";
}

struct UnitId {
    Level level = Level::cm;
    std::int32_t id = 0;  // country id at cm, grid-cell gid at pgm

    auto operator<=>(const UnitId&) const = default;
};

inline bool unit_id_valid(UnitId u) {
    if (u.level == Level::pgm) return u.id >= 1 && u.id <= kPgmMaxGid;
    return u.id > 0;
}

inline void require_valid_unit(UnitId u) {
    if (!unit_id_valid(u))
        throw std::domain_error("invalid " + std::string(level_name(u.level)) + " unit id " +
                                std::to_string(u.id));
}

}  // namespace warcast

template <>
struct std::hash<warcast::UnitId> {
    std::size_t operator()(const warcast::UnitId& u) const noexcept {
        const std::uint64_t packed =
            (static_cast<std::uint64_t>(u.level == warcast::Level::pgm) << 32) |
            static_cast<std::uint32_t>(u.id);
        return std::hash<std::uint64_t>{}(packed);
    }
};
