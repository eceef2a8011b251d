#include "gaptile/construct.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gaptile/grid.hpp"
#include "gaptile/verify.hpp"
#include "json_detail.hpp"

namespace gaptile::construct {

const char* to_string(StageKind kind) {
    return kind == StageKind::BoundaryPrefix ? "boundary-prefix" : "homogeneous";
}

bool ThresholdReport::ok() const noexcept {
    return std::all_of(entries.begin(), entries.end(),
                       [](const ThresholdEntry& e) { return !e.achieved || *e.achieved >= e.required; });
}

namespace {

grid::HeightTable& table_of(const Options& o) { return o.table ? *o.table : grid::HeightTable::shared(); }

grid::HeightEntry height_entry(const Options& o, Int k, Int l, Int m) {
    return grid::min_height_rect(k, l, m, table_of(o), o.heights);
}

void require_ok(const VerificationReport& report, const std::string& what) {
    if (!report.ok()) throw TilingError(ErrorKind::VerificationFailed, what + " failed verification: " + report.summary());
}

std::map<Int, std::size_t> endpoint_index(const IntervalTiling& tiling, Int d1) {
    std::map<Int, std::size_t> out;
    const Int lo = tiling.length - d1;
    for (std::size_t i = 0; i < tiling.tiles.size(); ++i) {
        if (tiling.tiles[i].back() >= lo) out[tiling.tiles[i].back()] = i;
    }
    return out;
}

std::size_t tile_ending_at(const StageState& s, Int x) {
    auto it = s.endpoint_index.find(x);
    if (it == s.endpoint_index.end()) {
        throw TilingError(ErrorKind::PreconditionError, "no tile ends at " + std::to_string(x));
    }
    return it->second;
}

// Lifts `unit` over xs, repeats it up to `height` and appends the paths.
void append_column(RectangleTiling& block, const RectangleTiling& unit, std::span<const Int> xs, Int height) {
    auto part = grid::stack_to_height(grid::lift_over_points(unit, xs), height);
    for (auto& path : part.paths) block.paths.push_back(std::move(path));
}

RectangleTiling empty_block(Int width, Int height, StepType type, Int window) {
    RectangleTiling b;
    b.width = width;
    b.height = height;
    b.step_type = std::move(type);
    b.window = window;
    return b;
}

std::string stage_label(std::size_t index) { return "stage " + std::to_string(index); }

}  // namespace

// ---------------------------------------------------------------------------
// Arithmetic
// ---------------------------------------------------------------------------

CoinSplit represent_two_coins(Int value, Int narrow, Int wide, bool require_positive_b) {
    if (narrow < 1 || wide != narrow + 1) {
        throw TilingError(ErrorKind::PreconditionError, "two-coin representation needs consecutive coins");
    }
    if (value < 0) throw TilingError(ErrorKind::NoRepresentation, "negative value has no representation");
    // narrow = -1 (mod wide), so value - c*narrow = value + c (mod wide).
    const Int c = ((-value) % wide + wide) % wide;
    const Int rest = value - c * narrow;
    const Int min_b = require_positive_b ? 1 : 0;
    if (rest < 0 || rest / wide < min_b) {
        throw TilingError(ErrorKind::NoRepresentation,
                          std::to_string(value) + " is not b*" + std::to_string(wide) + " + c*" +
                              std::to_string(narrow) + (require_positive_b ? " with b >= 1" : " with b >= 0"));
    }
    return {rest / wide, c};
}

BaseDecomposition base_decomposition(Int d1, Int d2, Int k1, Int k2) {
    const Int K = k1 + k2;
    BaseDecomposition out;
    out.a = d2 / d1;
    out.t = d2 % d1;
    out.for_a = represent_two_coins(out.a, K, K + 1, true);
    out.for_a_plus = represent_two_coins(out.a + 1, K, K + 1, true);
    return out;
}

Int base_threshold(Int d1, Int k1, Int k2) {
    const Int s = k1 + k2 + 1;
    return checked_mul(d1, checked_mul(s, s));
}

Int boundary_step_threshold(Int L, Int k, Int d1) {
    return checked_add(checked_mul(L + 1, L + 2), checked_add(L + 1, checked_mul(k, d1)));
}

Int homogeneous_step_threshold(Int L) { return checked_mul(L + 1, L + 1); }

Int final_threshold(Int L) { return checked_mul(L, L + 1); }

// ---------------------------------------------------------------------------
// Boundary-prefix stages
// ---------------------------------------------------------------------------

StageState lemma1_base(Int d1, Int d2, Int k1, Int k2, const Options& options) {
    if (d1 < 1 || k1 < 1 || k2 < 1) throw TilingError(ErrorKind::InvalidInput, "lemma1_base needs positive inputs");
    const Int required = base_threshold(d1, k1, k2);
    if (d2 < required) {
        throw TilingError(ErrorKind::GrowthViolation,
                          "stage 2 requires d2 >= " + std::to_string(required) + " (got " + std::to_string(d2) + ")",
                          required, d2);
    }
    const Int K = k1 + k2;
    const auto dec = base_decomposition(d1, d2, k1, k2);
    const auto first = height_entry(options, k1, k2, K);
    const Int h = lcm_checked(k2 + 1, first.f);

    const auto narrow_block = grid::stack_to_height(first.witness, h);          // width K
    const auto wide_block = grid::stack_to_height(grid::stair_tiling(k1, k2), h);  // width K+1

    // Second-type blocks go rightmost so the stair corner sits top right.
    auto column = [&](const CoinSplit& split) {
        std::vector<RectangleTiling> blocks;
        for (Int i = 0; i < split.c; ++i) blocks.push_back(narrow_block);
        for (Int i = 0; i < split.b; ++i) blocks.push_back(wide_block);
        return grid::concat_columns(blocks);
    };
    const auto col_a = column(dec.for_a);
    const auto col_a_plus = dec.t > 0 ? column(dec.for_a_plus) : col_a;
    if (options.verify_blocks) {
        require_ok(verify_rectangle_tiling(col_a), "base column of width a");
        if (dec.t > 0) require_ok(verify_rectangle_tiling(col_a_plus), "base column of width a+1");
    }

    const auto rect = grid::residue_interleave(col_a_plus, col_a, d1, dec.t);
    if (options.verify_blocks) require_ok(verify_rectangle_tiling(rect), "base rectangle");

    StageState st;
    st.tiling = grid::flatten(rect, d2);
    st.tiling.annotations.boundary_prefix_count = k1;
    st.L = st.tiling.length - 1;
    st.d1 = d1;
    st.boundary_prefix_count = k1;
    st.kind = StageKind::BoundaryPrefix;
    st.gap_prefix = GapSet({{d1, k1}, {d2, k2}});
    st.endpoint_index = endpoint_index(st.tiling, d1);

    require_ok(verify_interval_tiling(st.tiling, st.gap_prefix), "stage 2 interval tiling");
    require_ok(verify_boundary_prefix(st.tiling, d1, k1), "stage 2 boundary prefix");

    StageRecord rec;
    rec.stage = "lemma1_base";
    rec.L_out = st.L;
    rec.h = h;
    rec.threshold_required = required;
    rec.d_used = d2;
    rec.blocks = {{"paths-minimal-height", K, first.f, (dec.t > 0 ? dec.t * dec.for_a_plus.c : 0) +
                                                         (d1 - dec.t) * dec.for_a.c},
                  {"stair", K + 1, k2 + 1, (dec.t > 0 ? dec.t * dec.for_a_plus.b : 0) + (d1 - dec.t) * dec.for_a.b}};
    std::ostringstream note;
    note << "a=" << dec.a << " t=" << dec.t << " (b1,c1)=(" << dec.for_a.b << "," << dec.for_a.c << ") (b2,c2)=("
         << dec.for_a_plus.b << "," << dec.for_a_plus.c << ")";
    rec.note = note.str();
    st.trace.push_back(std::move(rec));
    return st;
}

StageState lemma1_step(const StageState& prev, Int d, Int k, const Options& options) {
    if (prev.kind != StageKind::BoundaryPrefix) {
        throw TilingError(ErrorKind::PreconditionError, "lemma1_step needs a boundary-prefix stage");
    }
    if (k < 1) throw TilingError(ErrorKind::InvalidInput, "multiplicity must be positive");
    const Int L = prev.L;
    const Int d1 = prev.d1;
    const Int n = prev.gap_prefix.size();
    if (prev.boundary_prefix_count < k + 1) {
        throw TilingError(ErrorKind::MultiplicityViolation,
                          "multiplicity " + std::to_string(k) + " needs a boundary prefix of at least " +
                              std::to_string(k + 1) + " (have " + std::to_string(prev.boundary_prefix_count) + ")",
                          k + 1, prev.boundary_prefix_count);
    }
    const Int required = boundary_step_threshold(L, k, d1);
    if (d < required) {
        throw TilingError(ErrorKind::GrowthViolation,
                          "requires d >= " + std::to_string(required) + " (got " + std::to_string(d) + ")", required,
                          d);
    }

    const auto f1 = height_entry(options, n, k, n + 1);
    const auto f2 = height_entry(options, n, k, n + 2);
    const auto stair = grid::stair_tiling(n, k);
    const Int h = lcm_checked(lcm_checked(k + 1, f1.f), f2.f);
    const auto type = StepType::lifted(prev.gap_prefix, k);
    const auto& tiles = prev.tiling.tiles;

    const std::size_t widened = tile_ending_at(prev, L - d1 + 1);
    std::vector<std::size_t> extended(static_cast<std::size_t>(d1));
    std::vector<bool> is_extended(tiles.size(), false);
    for (Int t = 0; t < d1; ++t) {
        extended[static_cast<std::size_t>(t)] = tile_ending_at(prev, L - t);
        is_extended[extended[static_cast<std::size_t>(t)]] = true;
    }

    // [0,L] x [0,h-1]
    auto block_a = empty_block(L + 1, h, type, 0);
    for (const auto& tile : tiles) append_column(block_a, f1.witness, tile.points(), h);

    // [0,L+1] x [0,h-1]: the tile ending at L-d1+1 absorbs L+1.
    auto block_b = empty_block(L + 2, h, type, 0);
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        if (i == widened) {
            auto xs = tiles[i].points();
            xs.push_back(L + 1);
            append_column(block_b, f2.witness, xs, h);
        } else {
            append_column(block_b, f1.witness, tiles[i].points(), h);
        }
    }

    // [0,L+k*d1] x [0,h-1]: tiles ending in the last d1 points are extended by
    // k points spaced d1 and carry a lifted stair tiling of height k+1.
    auto block_c = empty_block(L + k * d1 + 1, h, type, 0);
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        if (!is_extended[i]) append_column(block_c, f1.witness, tiles[i].points(), h);
    }
    for (Int t = 0; t < d1; ++t) {
        auto xs = tiles[extended[static_cast<std::size_t>(t)]].points();
        for (Int j = 1; j <= k; ++j) xs.push_back(L - t + d1 * j);
        append_column(block_c, stair, xs, h);
    }

    if (options.verify_blocks) {
        require_ok(verify_rectangle_tiling(block_a), "block [0,L]");
        require_ok(verify_rectangle_tiling(block_b), "block [0,L+1]");
        require_ok(verify_rectangle_tiling(block_c), "block [0,L+k*d1]");
    }

    const Int rest = d - block_c.width;
    const auto coins = represent_two_coins(rest, L + 1, L + 2, false);
    const std::vector<grid::ColumnRun> runs = {{&block_a, coins.c}, {&block_b, coins.b}, {&block_c, 1}};

    StageState st;
    st.tiling = grid::flatten_columns(runs);
    st.L = st.tiling.length - 1;
    st.d1 = d1;
    st.boundary_prefix_count = prev.boundary_prefix_count - k;
    st.tiling.annotations.boundary_prefix_count = st.boundary_prefix_count;
    st.kind = StageKind::BoundaryPrefix;
    st.gap_prefix = prev.gap_prefix.with(d, k);
    st.endpoint_index = endpoint_index(st.tiling, d1);
    st.trace = prev.trace;

    require_ok(verify_interval_tiling(st.tiling, st.gap_prefix), "boundary step interval tiling");
    require_ok(verify_boundary_prefix(st.tiling, d1, st.boundary_prefix_count), "boundary step prefix");

    StageRecord rec;
    rec.stage = "lemma1_step";
    rec.L_in = L;
    rec.L_out = st.L;
    rec.h = h;
    rec.threshold_required = required;
    rec.d_used = d;
    rec.blocks = {{"interval", L + 1, h, coins.c}, {"interval+1", L + 2, h, coins.b},
                  {"interval+k*d1", block_c.width, h, 1}};
    rec.note = "f(n+1)=" + std::to_string(f1.f) + " f(n+2)=" + std::to_string(f2.f);
    st.trace.push_back(std::move(rec));
    return st;
}

// ---------------------------------------------------------------------------
// Homogeneous stages
// ---------------------------------------------------------------------------

StageState lemma2_base(const StageState& prev) {
    if (prev.kind != StageKind::BoundaryPrefix || prev.boundary_prefix_count < 1) {
        throw TilingError(ErrorKind::PreconditionError, "lemma2_base needs a boundary-prefix stage with prefix >= 1");
    }
    const Int L = prev.L;
    const std::size_t idx = tile_ending_at(prev, L - prev.d1 + 1);

    StageState st;
    st.tiling.length = L + 2;
    st.tiling.annotations.homogeneous_for = prev.gap_prefix;
    st.tiling.tiles = prev.tiling.tiles;
    auto pts = st.tiling.tiles[idx].points();
    if (pts[1] - pts[0] != prev.d1) {
        throw TilingError(ErrorKind::PreconditionError, "tile ending at L-d1+1 must start with gap d1");
    }
    pts.push_back(L + 1);
    st.tiling.tiles[idx] = Tile(std::move(pts));
    st.L = L + 1;
    st.d1 = prev.d1;
    st.boundary_prefix_count = 0;
    st.kind = StageKind::Homogeneous;
    st.gap_prefix = prev.gap_prefix;
    st.cardinality_budget = 0;
    st.endpoint_index = endpoint_index(st.tiling, 1);
    st.trace = prev.trace;

    require_ok(verify_homogeneous(st.tiling.tiles, st.tiling.length, st.gap_prefix), "homogeneous base");

    StageRecord rec;
    rec.stage = "lemma2_base";
    rec.L_in = L;
    rec.L_out = st.L;
    rec.note = "extended tile " + std::to_string(idx) + " by point " + std::to_string(L + 1);
    st.trace.push_back(std::move(rec));
    return st;
}

IntervalTiling remove_last_point(const IntervalTiling& tiling) {
    const Int last = tiling.length - 1;
    IntervalTiling out = tiling;
    out.length = tiling.length - 1;
    for (auto& tile : out.tiles) {
        if (tile.back() != last) continue;
        auto pts = tile.points();
        pts.pop_back();
        tile = Tile(std::move(pts));
        return out;
    }
    throw TilingError(ErrorKind::PreconditionError, "no sequence contains the last point");
}

namespace {

const Tile& sequence_at_end(const IntervalTiling& tiling) {
    for (const auto& tile : tiling.tiles) {
        if (tile.back() == tiling.length - 1) return tile;
    }
    throw TilingError(ErrorKind::PreconditionError, "no sequence contains the last point");
}

// Builds the [0,length-1] x [0,h-1] block for a homogeneous stage: every
// sequence gets a lifted unit tiling chosen by its size.
template <typename UnitFor>
RectangleTiling homogeneous_block(const IntervalTiling& seqs, const StepType& type, Int window, UnitFor&& unit_for) {
    Int h = 1;
    for (const auto& seq : seqs.tiles) h = lcm_checked(h, unit_for(static_cast<Int>(seq.size())).height);
    auto block = empty_block(seqs.length, h, type, window);
    for (const auto& seq : seqs.tiles) append_column(block, unit_for(static_cast<Int>(seq.size())), seq.points(), h);
    return block;
}

}  // namespace

StageState lemma2_step(const StageState& prev, Int d, Int k, const Options& options) {
    if (prev.kind != StageKind::Homogeneous) {
        throw TilingError(ErrorKind::PreconditionError, "lemma2_step needs a homogeneous stage");
    }
    if (k < 1) throw TilingError(ErrorKind::InvalidInput, "multiplicity must be positive");
    const Int L = prev.L;
    const Int n = prev.gap_prefix.size();
    const Int required = homogeneous_step_threshold(L);
    if (d < required) {
        throw TilingError(ErrorKind::GrowthViolation,
                          "requires d >= " + std::to_string(required) + " (got " + std::to_string(d) + ")", required,
                          d);
    }
    for (const auto& seq : prev.tiling.tiles) {
        const Int m = static_cast<Int>(seq.size()) - 1;
        if (m < n || m >= 2 * n) {
            throw TilingError(ErrorKind::CardinalityViolation,
                              "sequence of " + std::to_string(seq.size()) + " points outside [n+1, 2n] for n=" +
                                  std::to_string(n),
                              2 * n, m + 1);
        }
    }
    if (static_cast<Int>(sequence_at_end(prev.tiling).size()) <= n + 1) {
        throw TilingError(ErrorKind::CardinalityViolation, "the sequence through the last point must exceed one tile");
    }

    const auto type = StepType::lifted(prev.gap_prefix, k);
    const Int window = n + k;
    std::map<Int, RectangleTiling> units;
    auto unit_for = [&](Int size) -> const RectangleTiling& {
        auto it = units.find(size);
        if (it != units.end()) return it->second;
        const Int m = size - 1;
        auto unit = m == n ? height_entry(options, n, k, n + 1).witness : grid::diagonal_stripe_tiling(n, k, m);
        return units.emplace(size, std::move(unit)).first->second;
    };

    const auto shorter = remove_last_point(prev.tiling);
    auto full_block = homogeneous_block(prev.tiling, type, window, unit_for);
    auto short_block = homogeneous_block(shorter, type, window, unit_for);
    if (options.verify_blocks) {
        require_ok(verify_rectangle_tiling(full_block), "homogeneous block [0,L]");
        require_ok(verify_rectangle_tiling(short_block), "homogeneous block [0,L-1]");
    }
    const Int h = full_block.height;
    const Int h_short = short_block.height;
    const Int H = lcm_checked(h, h_short);
    full_block = grid::stack_to_height(full_block, H);
    short_block = grid::stack_to_height(short_block, H);

    // The [0,L] block must occupy the top right corner.
    const auto coins = represent_two_coins(d, L, L + 1, true);
    const std::vector<grid::ColumnRun> runs = {{&short_block, coins.c}, {&full_block, coins.b}};

    StageState st;
    st.tiling = grid::flatten_columns(runs);
    st.tiling.gap_set.reset();
    st.tiling.annotations.homogeneous_for = prev.gap_prefix.with(d, k);
    st.L = st.tiling.length - 1;
    st.d1 = prev.d1;
    st.kind = StageKind::Homogeneous;
    st.gap_prefix = prev.gap_prefix.with(d, k);
    st.cardinality_budget = prev.cardinality_budget + k;
    st.endpoint_index = endpoint_index(st.tiling, 1);
    st.trace = prev.trace;

    require_ok(verify_homogeneous(st.tiling.tiles, st.tiling.length, st.gap_prefix), "homogeneous step");
    const Int max_points = st.gap_prefix.size() + st.cardinality_budget + 2;
    for (const auto& seq : st.tiling.tiles) {
        if (static_cast<Int>(seq.size()) > max_points) {
            throw TilingError(ErrorKind::CardinalityViolation, "homogeneous sequence exceeds the cardinality bound",
                              max_points, static_cast<Int>(seq.size()));
        }
    }
    if (static_cast<Int>(sequence_at_end(st.tiling).size()) <= st.gap_prefix.size() + 1) {
        throw TilingError(ErrorKind::VerificationFailed, "sequence through the last point is a single tile");
    }

    StageRecord rec;
    rec.stage = "lemma2_step";
    rec.L_in = L;
    rec.L_out = st.L;
    rec.h = H;
    rec.threshold_required = required;
    rec.d_used = d;
    rec.blocks = {{"interval-minus-last", L, H, coins.c}, {"interval", L + 1, H, coins.b}};
    rec.note = "h=" + std::to_string(h) + " h'=" + std::to_string(h_short);
    st.trace.push_back(std::move(rec));
    return st;
}

IntervalTiling theorem_final(const StageState& prev, Int d, Int k, const Options& options, StageRecord* record) {
    if (prev.kind != StageKind::Homogeneous) {
        throw TilingError(ErrorKind::PreconditionError, "theorem_final needs a homogeneous stage");
    }
    if (k < 1) throw TilingError(ErrorKind::InvalidInput, "multiplicity must be positive");
    const Int L = prev.L;
    const Int n = prev.gap_prefix.size();
    for (const auto& seq : prev.tiling.tiles) {
        const Int size = static_cast<Int>(seq.size());
        if (size < n + 1 || size > n + k + 1) {
            throw TilingError(ErrorKind::CardinalityViolation,
                              "sequence of " + std::to_string(size) + " points outside [" + std::to_string(n + 1) +
                                  ", " + std::to_string(n + k + 1) + "]",
                              n + k + 1, size);
        }
    }
    if (static_cast<Int>(sequence_at_end(prev.tiling).size()) <= n + 1) {
        throw TilingError(ErrorKind::CardinalityViolation, "the sequence through the last point must exceed one tile");
    }
    const Int required = final_threshold(L);
    if (d < required) {
        throw TilingError(ErrorKind::GrowthViolation,
                          "requires d >= " + std::to_string(required) + " (got " + std::to_string(d) + ")", required,
                          d);
    }

    const auto type = StepType::lifted(prev.gap_prefix, k);
    std::map<Int, RectangleTiling> units;
    auto unit_for = [&](Int size) -> const RectangleTiling& {
        auto it = units.find(size);
        if (it != units.end()) return it->second;
        return units.emplace(size, height_entry(options, n, k, size).witness).first->second;
    };

    const auto shorter = remove_last_point(prev.tiling);
    auto full_block = homogeneous_block(prev.tiling, type, 0, unit_for);
    auto short_block = homogeneous_block(shorter, type, 0, unit_for);
    if (options.verify_blocks) {
        require_ok(verify_rectangle_tiling(full_block), "final block [0,L]");
        require_ok(verify_rectangle_tiling(short_block), "final block [0,L-1]");
    }
    const Int h = full_block.height;
    const Int h_short = short_block.height;
    const Int H = lcm_checked(h, h_short);
    full_block = grid::stack_to_height(full_block, H);
    short_block = grid::stack_to_height(short_block, H);

    const auto coins = represent_two_coins(d, L, L + 1, false);
    const std::vector<grid::ColumnRun> runs = {{&short_block, coins.c}, {&full_block, coins.b}};
    auto out = grid::flatten_columns(runs);
    const auto full = prev.gap_prefix.with(d, k);
    out.gap_set = full;
    require_ok(verify_interval_tiling(out, full), "final interval tiling");

    if (record) {
        record->stage = "final";
        record->L_in = L;
        record->L_out = out.length - 1;
        record->h = H;
        record->threshold_required = required;
        record->d_used = d;
        record->blocks = {{"interval-minus-last", L, H, coins.c}, {"interval", L + 1, H, coins.b}};
        record->note = "h=" + std::to_string(h) + " h'=" + std::to_string(h_short);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Orchestration
// ---------------------------------------------------------------------------

void check_split(const GapSet& gaps, SplitSpec split) {
    const auto& e = gaps.entries();
    if (split.s < 2 || split.p < 0) throw TilingError(ErrorKind::InvalidInput, "split needs s >= 2 and p >= 0");
    if (static_cast<std::size_t>(split.s + split.p) != e.size()) {
        throw TilingError(ErrorKind::InvalidInput, "split s+p=" + std::to_string(split.s + split.p) +
                                                       " does not match " + std::to_string(e.size()) +
                                                       " distinct distances");
    }
    // k_i is e[i-1].multiplicity
    Int middle = 0;
    for (int i = 3; i <= split.s; ++i) middle += e[static_cast<std::size_t>(i - 1)].multiplicity;
    if (middle + 1 > e[0].multiplicity) {
        throw TilingError(ErrorKind::MultiplicityViolation,
                          "needs k_3 + ... + k_s + 1 <= k_1 (" + std::to_string(middle + 1) + " > " +
                              std::to_string(e[0].multiplicity) + ")",
                          middle + 1, e[0].multiplicity);
    }
    if (split.p >= 1) {
        Int tail = 0;
        for (int i = split.s + 1; i <= split.s + split.p - 1; ++i) tail += e[static_cast<std::size_t>(i - 1)].multiplicity;
        const Int last = e.back().multiplicity;
        if (tail + 1 > last) {
            throw TilingError(ErrorKind::MultiplicityViolation,
                              "needs k_{s+1} + ... + k_{s+p-1} + 1 <= k_{s+p} (" + std::to_string(tail + 1) + " > " +
                                  std::to_string(last) + ")",
                              tail + 1, last);
        }
    }
}

std::vector<SplitSpec> auto_split(const GapSet& gaps) {
    std::vector<SplitSpec> out;
    const int total = static_cast<int>(gaps.distinct());
    for (int s = total; s >= 2; --s) {
        const SplitSpec split{s, total - s};
        try {
            check_split(gaps, split);
            out.push_back(split);
        } catch (const TilingError&) {
        }
    }
    if (out.empty()) throw TilingError(ErrorKind::EmptyResult, "no split satisfies the multiplicity inequalities");
    return out;
}

ConstructResult construct(const GapSet& gaps, SplitSpec split, const Options& options) {
    check_split(gaps, split);
    const auto& e = gaps.entries();
    auto d = [&](int i) { return e[static_cast<std::size_t>(i - 1)].distance; };
    auto k = [&](int i) { return e[static_cast<std::size_t>(i - 1)].multiplicity; };

    ConstructResult result;
    auto run_stage = [&](int index, auto&& fn) {
        try {
            return fn();
        } catch (TilingError& err) {
            err.set_stage(stage_label(static_cast<std::size_t>(index)));
            throw;
        }
    };
    auto record_threshold = [&](int index, const std::string& rule, Int required) {
        result.thresholds.entries.push_back({stage_label(static_cast<std::size_t>(index)), rule, required, d(index)});
    };

    auto notify = [&](const std::string& label, const IntervalTiling& tiling) {
        if (options.on_stage) options.on_stage(label, tiling);
    };

    StageState state = run_stage(2, [&] { return lemma1_base(d(1), d(2), k(1), k(2), options); });
    record_threshold(2, "d1*(k1+k2+1)^2", base_threshold(d(1), k(1), k(2)));
    notify(stage_label(2), state.tiling);
    for (int i = 3; i <= split.s; ++i) {
        const Int req = boundary_step_threshold(state.L, k(i), state.d1);
        state = run_stage(i, [&] { return lemma1_step(state, d(i), k(i), options); });
        record_threshold(i, "(L+1)(L+2)+(L+k*d1+1)", req);
        notify(stage_label(static_cast<std::size_t>(i)), state.tiling);
    }
    auto check_length = [](const StageRecord& rec) {
        if (rec.h && rec.d_used && rec.L_out + 1 != *rec.d_used * *rec.h) {
            throw TilingError(ErrorKind::VerificationFailed, "stage length differs from d*h in " + rec.stage);
        }
    };
    for (const auto& rec : state.trace) check_length(rec);

    if (split.p == 0) {
        result.tiling = std::move(state.tiling);
        result.trace = std::move(state.trace);
        result.trace.back().note += (result.trace.back().note.empty() ? "" : "; ") + std::string("lemma1-only");
        result.boundary_only = true;
        return result;
    }

    state = run_stage(split.s + 1, [&] { return lemma2_base(state); });
    notify("homogeneous base", state.tiling);
    for (int l = 1; l <= split.p - 1; ++l) {
        const int i = split.s + l;
        const Int req = homogeneous_step_threshold(state.L);
        state = run_stage(i, [&] { return lemma2_step(state, d(i), k(i), options); });
        record_threshold(i, "(L+1)^2", req);
        check_length(state.trace.back());
        notify(stage_label(static_cast<std::size_t>(i)), state.tiling);
    }
    const int last = split.s + split.p;
    StageRecord rec;
    const Int req = final_threshold(state.L);
    result.tiling = run_stage(last, [&] { return theorem_final(state, d(last), k(last), options, &rec); });
    record_threshold(last, "L(L+1)", req);
    check_length(rec);
    result.trace = std::move(state.trace);
    result.trace.push_back(std::move(rec));
    for (std::size_t i = 1; i < e.size(); ++i) {
        if (e[i].distance <= e[i - 1].distance) {
            throw TilingError(ErrorKind::VerificationFailed, "distances are not increasing");
        }
    }
    return result;
}

ThresholdReport thresholds(const GapSet& prefix, SplitSpec split, Int next_multiplicity, const Options& options) {
    const auto& e = prefix.entries();
    const int m = static_cast<int>(e.size());
    if (m < 2) throw TilingError(ErrorKind::InvalidInput, "thresholds need at least two distances");
    if (split.s < 2 || split.p < 0) throw TilingError(ErrorKind::InvalidInput, "split needs s >= 2 and p >= 0");
    if (m > split.s + split.p) {
        throw TilingError(ErrorKind::InvalidInput, "prefix has more distances than the split");
    }
    if (next_multiplicity < 1) throw TilingError(ErrorKind::InvalidInput, "multiplicity must be positive");
    auto d = [&](int i) { return e[static_cast<std::size_t>(i - 1)].distance; };
    auto k = [&](int i) { return e[static_cast<std::size_t>(i - 1)].multiplicity; };
    const int last = split.s + split.p;

    ThresholdReport report;
    auto run_stage = [&](int index, auto&& fn) {
        try {
            return fn();
        } catch (TilingError& err) {
            err.set_stage(stage_label(static_cast<std::size_t>(index)));
            throw;
        }
    };
    auto add = [&](int index, std::string rule, Int required, std::optional<Int> achieved) {
        report.entries.push_back({stage_label(static_cast<std::size_t>(index)), std::move(rule), required, achieved});
    };

    add(2, "d1*(k1+k2+1)^2", base_threshold(d(1), k(1), k(2)), d(2));
    // Later entries need the stage built; a prefix that ends at the final
    // stage only needs its requirement, not the final tiling.
    if (m == 2 && last == 2) return report;
    StageState state = run_stage(2, [&] { return lemma1_base(d(1), d(2), k(1), k(2), options); });

    auto requirement = [&](int index, Int multiplicity) -> std::pair<std::string, Int> {
        if (index <= split.s) {
            std::string rule = "(L+1)(L+2)+(L+k*d1+1)";
            if (state.boundary_prefix_count < multiplicity + 1) {
                rule += "; boundary prefix " + std::to_string(state.boundary_prefix_count) + " < k+1";
            }
            return {rule, boundary_step_threshold(state.L, multiplicity, state.d1)};
        }
        if (state.kind == StageKind::BoundaryPrefix) {
            state = run_stage(split.s + 1, [&] { return lemma2_base(state); });
        }
        if (index == last) return {"L(L+1)", final_threshold(state.L)};
        return {"(L+1)^2", homogeneous_step_threshold(state.L)};
    };

    for (int i = 3; i <= m; ++i) {
        const auto [rule, required] = requirement(i, k(i));
        add(i, rule, required, d(i));
        if (i == last) return report;
        if (i <= split.s) {
            state = run_stage(i, [&] { return lemma1_step(state, d(i), k(i), options); });
        } else {
            state = run_stage(i, [&] { return lemma2_step(state, d(i), k(i), options); });
        }
    }
    if (m < last) {
        const auto [rule, required] = requirement(m + 1, next_multiplicity);
        add(m + 1, rule, required, std::nullopt);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

std::string to_json_string(const Trace& trace) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : trace) {
        nlohmann::json j;
        j["stage"] = r.stage;
        j["L_in"] = r.L_in >= 0 ? nlohmann::json(r.L_in) : nlohmann::json(nullptr);
        j["L_out"] = r.L_out;
        j["h"] = r.h ? nlohmann::json(*r.h) : nlohmann::json(nullptr);
        nlohmann::json blocks = nlohmann::json::array();
        for (const auto& b : r.blocks) {
            blocks.push_back({{"role", b.role}, {"width", b.width}, {"height", b.height}, {"copies", b.copies}});
        }
        j["blocks"] = std::move(blocks);
        j["threshold_required"] = r.threshold_required ? nlohmann::json(*r.threshold_required) : nlohmann::json(nullptr);
        j["d_used"] = r.d_used ? nlohmann::json(*r.d_used) : nlohmann::json(nullptr);
        if (!r.note.empty()) j["note"] = r.note;
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

std::string to_json_string(const ThresholdReport& report) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : report.entries) {
        nlohmann::json j;
        j["stage"] = e.stage;
        j["rule"] = e.rule;
        j["required"] = e.required;
        j["achieved"] = e.achieved ? nlohmann::json(*e.achieved) : nlohmann::json(nullptr);
        arr.push_back(std::move(j));
    }
    return arr.dump(2);
}

}  // namespace gaptile::construct
