#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "warcast/units.hpp"

namespace warcast {

enum class Contiguity { queen, rook };

/// The 720x360 grid of 0.5-degree cells. Cell ids are row-major from the
/// south-west corner: gid = (row - 1) * 720 + col, row 1 at the southernmost
/// band and col 1 at 180W. A region mask restricts the universe of cells;
/// neighbor queries clip to grid edges (no east-west wrap) and to the mask.
class GridTopology {
  public:
    GridTopology(std::span<const std::int32_t> mask_gids, Contiguity contiguity = Contiguity::queen)
        : in_mask_(static_cast<std::size_t>(kPgmMaxGid) + 1, false), contiguity_(contiguity) {
        for (const std::int32_t gid : mask_gids) {
            require_valid_unit(UnitId{Level::pgm, gid});
            if (!in_mask_[static_cast<std::size_t>(gid)]) {
                in_mask_[static_cast<std::size_t>(gid)] = true;
                ++mask_size_;
            }
        }
    }

    /// Every cell on the globe is in the universe.
    static GridTopology full(Contiguity contiguity = Contiguity::queen) {
        GridTopology topo({}, contiguity);
        std::fill(topo.in_mask_.begin() + 1, topo.in_mask_.end(), true);
        topo.mask_size_ = static_cast<std::size_t>(kPgmMaxGid);
        return topo;
    }

    static std::int32_t row_of(std::int32_t gid) { return (gid - 1) / kGridCols + 1; }
    static std::int32_t col_of(std::int32_t gid) { return (gid - 1) % kGridCols + 1; }
    static std::int32_t gid_at(std::int32_t row, std::int32_t col) {
        return (row - 1) * kGridCols + col;
    }

    bool contains(std::int32_t gid) const {
        return gid >= 1 && gid <= kPgmMaxGid && in_mask_[static_cast<std::size_t>(gid)];
    }

    std::size_t mask_size() const { return mask_size_; }
    Contiguity contiguity() const { return contiguity_; }

    /// Adjacent in-mask cells of gid, ascending, never containing gid itself.
    std::vector<std::int32_t> neighbors(std::int32_t gid) const {
        if (gid < 1 || gid > kPgmMaxGid)
            throw std::domain_error("neighbors: gid " + std::to_string(gid) +
                                    " outside [1, " + std::to_string(kPgmMaxGid) + "]");
        const std::int32_t row = row_of(gid);
        const std::int32_t col = col_of(gid);
        std::vector<std::int32_t> out;
        out.reserve(8);
        for (std::int32_t dr = -1; dr <= 1; ++dr) {
            for (std::int32_t dc = -1; dc <= 1; ++dc) {
                if (dr == 0 && dc == 0) continue;
                if (contiguity_ == Contiguity::rook && dr != 0 && dc != 0) continue;
                const std::int32_t r = row + dr;
                const std::int32_t c = col + dc;
                if (r < 1 || r > kGridRows || c < 1 || c > kGridCols) continue;
                const std::int32_t n = gid_at(r, c);
                if (in_mask_[static_cast<std::size_t>(n)]) out.push_back(n);
            }
        }
        std::sort(out.begin(), out.end());
        return out;
    }

  private:
    std::vector<bool> in_mask_;
    std::size_t mask_size_ = 0;
    Contiguity contiguity_;
};

}  // namespace warcast
