#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gaptile/height_table.hpp"
#include "gaptile/types.hpp"

namespace gaptile::construct {

enum class StageKind { BoundaryPrefix, Homogeneous };

const char* to_string(StageKind kind);

struct BlockRecord {
    std::string role;
    Int width = 0;
    Int height = 0;
    Int copies = 0;
};

/// One pipeline stage as it appears in the trace.
struct StageRecord {
    std::string stage;
    Int L_in = -1;  // -1 for the first stage
    Int L_out = 0;
    std::optional<Int> h;
    std::vector<BlockRecord> blocks;
    std::optional<Int> threshold_required;
    std::optional<Int> d_used;
    std::string note;
};

using Trace = std::vector<StageRecord>;

struct ThresholdEntry {
    std::string stage;
    std::string rule;
    Int required = 0;
    std::optional<Int> achieved;
    bool satisfied() const noexcept { return achieved && *achieved >= required; }
};

struct ThresholdReport {
    std::vector<ThresholdEntry> entries;
    bool ok() const noexcept;
};

/// Running construction state over [0, L].
///
/// BoundaryPrefix stages hold a tiling whose tiles ending in the last d1
/// points start with `boundary_prefix_count` gaps equal to d1. Homogeneous
/// stages hold a tiling by sequences that are homogeneous for `gap_prefix`.
struct StageState {
    IntervalTiling tiling;
    Int L = 0;
    Int d1 = 0;
    Int boundary_prefix_count = 0;
    StageKind kind = StageKind::BoundaryPrefix;
    /// Tile index of the tile or sequence ending at x, for x in (L-d1, L].
    std::map<Int, std::size_t> endpoint_index;
    GapSet gap_prefix;
    /// Multiplicities added by homogeneous steps so far.
    Int cardinality_budget = 0;
    Trace trace;
};

struct CoinSplit {
    Int b = 0;  // copies of the wider coin
    Int c = 0;  // copies of the narrower coin
    bool operator==(const CoinSplit&) const = default;
};

/// Writes value = b*wide + c*narrow with wide = narrow+1, c >= 0 minimal and
/// b >= 1 when require_positive_b (b >= 0 otherwise). Throws
/// NoRepresentation when no such pair exists.
CoinSplit represent_two_coins(Int value, Int narrow, Int wide, bool require_positive_b);

struct BaseDecomposition {
    Int a = 0;
    Int t = 0;
    CoinSplit for_a;       // a   = b1(k1+k2+1) + c1(k1+k2)
    CoinSplit for_a_plus;  // a+1 = b2(k1+k2+1) + c2(k1+k2)
};

BaseDecomposition base_decomposition(Int d1, Int d2, Int k1, Int k2);

struct Options {
    grid::HeightTable* table = nullptr;  // null means HeightTable::shared()
    grid::MinHeightOptions heights{};
    /// Verify every intermediate block tiling, not only stage outputs.
    bool verify_blocks = true;
    /// Called by construct with each verified stage output.
    std::function<void(const std::string& stage, const IntervalTiling& tiling)> on_stage;
};

Int base_threshold(Int d1, Int k1, Int k2);
Int boundary_step_threshold(Int L, Int k, Int d1);
Int homogeneous_step_threshold(Int L);
Int final_threshold(Int L);

StageState lemma1_base(Int d1, Int d2, Int k1, Int k2, const Options& options = {});
StageState lemma1_step(const StageState& prev, Int d, Int k, const Options& options = {});
StageState lemma2_base(const StageState& prev);
StageState lemma2_step(const StageState& prev, Int d, Int k, const Options& options = {});
IntervalTiling theorem_final(const StageState& prev, Int d, Int k, const Options& options = {},
                             StageRecord* record = nullptr);

/// Drops the last point of the interval from the sequence that contains it.
/// The sequence must keep at least two points.
IntervalTiling remove_last_point(const IntervalTiling& tiling);

struct ConstructResult {
    IntervalTiling tiling;
    ThresholdReport thresholds;
    Trace trace;
    bool boundary_only = false;  // p = 0
};

/// Checks s >= 2, s+p = number of distinct distances and the two
/// multiplicity inequalities. Throws MultiplicityViolation / InvalidInput.
void check_split(const GapSet& gaps, SplitSpec split);

/// Runs the full pipeline for the distinct distances d_1 < ... < d_{s+p} of
/// `gaps`. Every stage output is verified before the next stage starts.
ConstructResult construct(const GapSet& gaps, SplitSpec split, const Options& options = {});

/// Stage-by-stage thresholds for the distances present in `prefix`, plus the
/// requirement on the next distance (with multiplicity `next_multiplicity`)
/// under `split`. Computed from stage dimensions without building tilings.
ThresholdReport thresholds(const GapSet& prefix, SplitSpec split, Int next_multiplicity = 1,
                           const Options& options = {});

/// All (s, p) with s >= 2 and s+p = distinct distances that satisfy the
/// multiplicity inequalities, s descending. Throws EmptyResult if none.
std::vector<SplitSpec> auto_split(const GapSet& gaps);

std::string to_json_string(const Trace& trace);
std::string to_json_string(const ThresholdReport& report);

}  // namespace gaptile::construct
