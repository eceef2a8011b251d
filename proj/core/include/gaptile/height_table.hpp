#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <shared_mutex>
#include <tuple>

#include "gaptile/oracle.hpp"
#include "gaptile/types.hpp"

namespace gaptile::grid {

struct HeightEntry {
    Int f = 0;
    /// Tiling of [0,m-1] x [0,f-1] by paths of type {e1^(k), e2^(l)}.
    RectangleTiling witness;
    /// Every smaller admissible height was searched exhaustively.
    bool proven_minimal = false;
};

/// Memo of minimal rectangle heights keyed by (k, l, m). When a directory is
/// given the table persists there as height_table.json plus one witness file
/// per entry, written with temp-file-then-rename. Entries loaded from disk are
/// re-verified; bad ones are dropped.
class HeightTable {
public:
    static constexpr const char* kIndexFile = "height_table.json";
    static constexpr const char* kCacheEnv = "GAPTILE_CACHE_DIR";

    HeightTable() = default;
    explicit HeightTable(std::filesystem::path directory);

    /// Process-wide table; persistent when GAPTILE_CACHE_DIR is set.
    static HeightTable& shared();

    std::optional<HeightEntry> lookup(Int k, Int l, Int m) const;
    void store(Int k, Int l, Int m, const HeightEntry& entry);
    std::size_t size() const;
    const std::optional<std::filesystem::path>& directory() const noexcept { return directory_; }

private:
    using Key = std::tuple<Int, Int, Int>;
    void load();
    void persist_locked() const;

    mutable std::shared_mutex mutex_;
    std::map<Key, HeightEntry> entries_;
    std::optional<std::filesystem::path> directory_;
};

struct MinHeightOptions {
    /// Largest height tried before giving up with SearchExhausted.
    Int max_height = 400;
    oracle::SearchConfig search{.max_nodes = 50'000'000};
};

/// Least f such that [0,m-1] x [0,f-1] is tiled by paths of type
/// {e1^(k), e2^(l)}, with a witness. Requires k+1 <= m <= k+l+1. For
/// m = k+l+1 the stair tiling gives f = l+1 directly; otherwise heights with
/// m*f divisible by k+l+1 are searched in increasing order.
HeightEntry min_height_rect(Int k, Int l, Int m, HeightTable& table = HeightTable::shared(),
                            const MinHeightOptions& options = {});

}  // namespace gaptile::grid
