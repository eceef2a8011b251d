#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "gaptile/types.hpp"

namespace gaptile::cli {

struct CatalogConfig {
    Int max_distance = 3;
    Int max_multiplicity = 2;  // total number of gaps
    Int max_length = 30;
    std::uint64_t max_nodes = 20'000'000;
    unsigned threads = 1;
    std::filesystem::path witness_dir;  // empty: next to the catalog file
    bool record_timing = false;
};

/// Gap sets with distances <= max_distance and 2..max_total gaps, ordered by
/// number of gaps, then lexicographically by the ascending gap list.
std::vector<GapSet> enumerate_gap_sets(Int max_distance, Int max_total);

/// Stable hash of the fields that determine record contents.
std::string config_hash(const CatalogConfig& cfg);

struct CatalogRecord {
    std::size_t index = 0;
    GapSet gaps;
    std::optional<Int> min_length;
    bool exhaustive = true;
    std::string witness;  // path relative to the catalog directory
    std::optional<double> wall_time;
    std::string hash;
};

std::string to_jsonl(const CatalogRecord& record, Int max_length);

struct CatalogSummary {
    std::size_t total = 0;
    std::size_t resumed_from = 0;  // records already present
    std::size_t written = 0;
    std::vector<std::size_t> not_found;
};

/// Appends one JSONL record per enumerated gap set to `file`, resuming after
/// the last complete record written under the same config hash. A trailing
/// partial line is discarded. Throws TilingError(Io) on I/O problems or a
/// hash mismatch.
CatalogSummary run_catalog(const CatalogConfig& cfg, const std::filesystem::path& file, std::ostream& log,
                           std::optional<std::size_t> stop_after = std::nullopt);

}  // namespace gaptile::cli
