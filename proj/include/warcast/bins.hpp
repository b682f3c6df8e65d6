#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace warcast {

/// Partition of the non-negative integers into ordered intervals.
/// The fatality scheme has 11 bins:
///   {0}, [1,2], [3,5], [6,10], [11,25], [26,50], [51,100],
///   [101,250], [251,500], [501,1000], [1001,inf)
class BinScheme {
  public:
    explicit BinScheme(std::vector<std::int64_t> lower_edges) : edges_(std::move(lower_edges)) {
        if (edges_.empty() || edges_.front() != 0)
            throw std::invalid_argument("BinScheme: first bin must start at 0");
        if (!std::is_sorted(edges_.begin(), edges_.end()) ||
            std::adjacent_find(edges_.begin(), edges_.end()) != edges_.end())
            throw std::invalid_argument("BinScheme: lower edges must be strictly increasing");
    }

    static const BinScheme& fatality() {
        static const BinScheme scheme({0, 1, 3, 6, 11, 26, 51, 101, 251, 501, 1001});
        return scheme;
    }

    std::size_t size() const { return edges_.size(); }

    /// Index of the unique interval containing y.
    int index_of(std::int64_t y) const {
        if (y < 0)
            throw std::domain_error("bin_index: negative count " + std::to_string(y));
        const auto it = std::upper_bound(edges_.begin(), edges_.end(), y);
        return static_cast<int>(it - edges_.begin()) - 1;
    }

    std::int64_t lower_edge(int bin) const { return edges_.at(static_cast<std::size_t>(bin)); }

  private:
    std::vector<std::int64_t> edges_;
};

inline int bin_index(std::int64_t y, const BinScheme& scheme) { return scheme.index_of(y); }

/// Histogram of values over the scheme's bins.
inline std::vector<std::int64_t> bin_counts(const std::vector<std::int32_t>& values,
                                            const BinScheme& scheme) {
    std::vector<std::int64_t> counts(scheme.size(), 0);
    for (const std::int32_t v : values)
        ++counts[static_cast<std::size_t>(scheme.index_of(v))];
    return counts;
}

}  // namespace warcast
