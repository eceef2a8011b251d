#include "gaptile/grid.hpp"

#include <algorithm>

namespace gaptile::grid {
namespace {

StepType translate_type(const StepType& type, Int xscale) {
    std::vector<StepEntry> entries;
    for (const auto& e : type.entries()) entries.push_back({{e.step.x * xscale, e.step.y}, e.multiplicity});
    return StepType(std::move(entries));
}

std::optional<GapSet> flattened_gaps(const StepType& type, Int width) {
    if (type.empty()) return std::nullopt;
    std::vector<GapEntry> entries;
    for (const auto& e : type.entries()) entries.push_back({e.step.x + width * e.step.y, e.multiplicity});
    return GapSet(std::move(entries));
}

void sort_tiles(std::vector<Tile>& tiles) {
    std::sort(tiles.begin(), tiles.end(), [](const Tile& a, const Tile& b) { return a.front() < b.front(); });
}

IntervalTiling make_interval(Int length, const StepType& type, Int window, Int width, std::vector<Tile> tiles) {
    IntervalTiling out;
    out.length = length;
    out.gap_set = flattened_gaps(type, width);
    if (window > 0) out.annotations.homogeneous_for = out.gap_set;
    sort_tiles(tiles);
    out.tiles = std::move(tiles);
    return out;
}

}  // namespace

RectangleTiling stair_tiling(Int k, Int l) {
    if (k < 1 || l < 1) throw TilingError(ErrorKind::PreconditionError, "stair_tiling needs k, l >= 1");
    RectangleTiling out;
    out.width = k + l + 1;
    out.height = l + 1;
    out.step_type = StepType::unit(k, l);
    for (Int i = 0; i <= l; ++i) {
        std::vector<Vec2> pts;
        pts.reserve(static_cast<std::size_t>(k + l + 1));
        for (Int y = 0; y <= l - i; ++y) pts.push_back({i, y});
        for (Int x = i + 1; x <= k + i; ++x) pts.push_back({x, l - i});
        for (Int y = l - i + 1; y <= l; ++y) pts.push_back({k + i, y});
        out.paths.emplace_back(std::move(pts));
    }
    return out;
}

RectangleTiling diagonal_stripe_tiling(Int n, Int kv, Int m) {
    if (n < 1 || kv < 1) throw TilingError(ErrorKind::PreconditionError, "diagonal_stripe_tiling needs n, kv >= 1");
    if (m <= n || m >= 2 * n) {
        throw TilingError(ErrorKind::PreconditionError, "diagonal_stripe_tiling needs n < m < 2n");
    }
    const Int period = n + kv;
    const Int width = m + 1;
    const Int height = m + kv + 1;
    // Phase of the anti-diagonal through (x,y); phases [0,kv) step up,
    // phases [kv,period) step right.
    auto phase = [&](Int x, Int y) { return (((x + y - m) % period) + period) % period; };
    auto has_predecessor = [&](Int x, Int y) {
        const Int r = phase(x, y);
        if (r >= 1 && r <= kv) return y > 0;
        return x > 0;
    };

    RectangleTiling out;
    out.width = width;
    out.height = height;
    out.step_type = StepType::unit(n, kv);
    out.window = n + kv;
    for (Int y = 0; y < height; ++y) {
        for (Int x = 0; x < width; ++x) {
            if (has_predecessor(x, y)) continue;
            std::vector<Vec2> pts;
            Vec2 p{x, y};
            while (p.x < width && p.y < height) {
                pts.push_back(p);
                if (phase(p.x, p.y) < kv) {
                    ++p.y;
                } else {
                    ++p.x;
                }
            }
            out.paths.emplace_back(std::move(pts));
        }
    }
    return out;
}

RectangleTiling stack_to_height(const ColumnTiling& column, Int height) {
    if (column.period <= 0 || column.base.height != column.period) {
        throw TilingError(ErrorKind::PeriodError, "column period must equal the base height");
    }
    if (height <= 0 || height % column.period != 0) {
        throw TilingError(ErrorKind::PeriodError,
                          "height " + std::to_string(height) + " is not a multiple of period " +
                              std::to_string(column.period),
                          column.period, height);
    }
    RectangleTiling out = column.base;
    out.height = height;
    out.paths.clear();
    out.paths.reserve(column.base.paths.size() * static_cast<std::size_t>(height / column.period));
    for (Int j = 0; j < height / column.period; ++j) {
        for (const auto& path : column.base.paths) {
            auto pts = path.points();
            for (auto& p : pts) p.y += j * column.period;
            out.paths.emplace_back(std::move(pts));
        }
    }
    return out;
}

RectangleTiling stack_to_height(const RectangleTiling& base, Int height) {
    return stack_to_height(ColumnTiling{base, base.height}, height);
}

LiftedTiling stack_to_height(const LiftedTiling& base, Int height) {
    if (base.height <= 0 || height <= 0 || height % base.height != 0) {
        throw TilingError(ErrorKind::PeriodError,
                          "height " + std::to_string(height) + " is not a multiple of period " +
                              std::to_string(base.height),
                          base.height, height);
    }
    LiftedTiling out = base;
    out.height = height;
    out.paths.clear();
    out.paths.reserve(base.paths.size() * static_cast<std::size_t>(height / base.height));
    for (Int j = 0; j < height / base.height; ++j) {
        for (const auto& path : base.paths) {
            auto pts = path.points();
            for (auto& p : pts) p.y += j * base.height;
            out.paths.emplace_back(std::move(pts));
        }
    }
    return out;
}

RectangleTiling concat_columns(std::span<const RectangleTiling> blocks) {
    if (blocks.empty()) throw TilingError(ErrorKind::PreconditionError, "concat_columns needs at least one block");
    RectangleTiling out;
    out.height = blocks.front().height;
    out.step_type = blocks.front().step_type;
    out.window = blocks.front().window;
    for (const auto& b : blocks) {
        if (b.height != out.height) {
            throw TilingError(ErrorKind::HeightMismatch, "concat_columns blocks must share a height", out.height,
                              b.height);
        }
        if (b.step_type != out.step_type || b.window != out.window) {
            out.step_type = StepType{};
            out.window = 0;
        }
    }
    Int offset = 0;
    for (const auto& b : blocks) {
        for (const auto& path : b.paths) {
            auto pts = path.points();
            for (auto& p : pts) p.x += offset;
            out.paths.emplace_back(std::move(pts));
        }
        offset += b.width;
    }
    out.width = offset;
    return out;
}

LiftedTiling lift_over_points(const RectangleTiling& tiling, std::span<const Int> xs, const StepType& declared) {
    if (static_cast<Int>(xs.size()) != tiling.width) {
        throw TilingError(ErrorKind::WidthMismatch, "lift support size must equal the tiling width", tiling.width,
                          static_cast<Int>(xs.size()));
    }
    for (std::size_t i = 1; i < xs.size(); ++i) {
        if (xs[i] <= xs[i - 1]) throw TilingError(ErrorKind::InvalidInput, "lift support must be strictly increasing");
    }
    LiftedTiling out;
    out.support.assign(xs.begin(), xs.end());
    out.height = tiling.height;
    out.step_type = declared;
    out.window = tiling.window;
    out.paths.reserve(tiling.paths.size());
    for (const auto& path : tiling.paths) {
        auto pts = path.points();
        for (auto& p : pts) p.x = xs[static_cast<std::size_t>(p.x)];
        out.paths.emplace_back(std::move(pts));
    }
    return out;
}

LiftedTiling dilate_x(const RectangleTiling& tiling, Int d, Int offset) {
    if (d < 1) throw TilingError(ErrorKind::PreconditionError, "dilation ratio must be positive");
    if (offset < 0 || offset >= d) {
        throw TilingError(ErrorKind::OffsetError, "dilation offset must lie in [0, d)", d, offset);
    }
    std::vector<Int> xs(static_cast<std::size_t>(tiling.width));
    for (Int i = 0; i < tiling.width; ++i) xs[static_cast<std::size_t>(i)] = offset + d * i;
    return lift_over_points(tiling, xs, translate_type(tiling.step_type, d));
}

RectangleTiling residue_interleave(const RectangleTiling& wide, const RectangleTiling& narrow, Int d1, Int t) {
    if (d1 < 1 || t < 0 || t >= d1) {
        throw TilingError(ErrorKind::PreconditionError, "residue_interleave needs 0 <= t < d1", d1, t);
    }
    if (t > 0) {
        if (wide.height != narrow.height) {
            throw TilingError(ErrorKind::HeightMismatch, "residue columns must share a height", narrow.height,
                              wide.height);
        }
        if (wide.width != narrow.width + 1) {
            throw TilingError(ErrorKind::WidthMismatch, "wide column must be one wider than the narrow column",
                              narrow.width + 1, wide.width);
        }
    }
    const Int a = narrow.width;
    RectangleTiling out;
    out.width = a * d1 + t;
    out.height = narrow.height;
    out.step_type = translate_type(narrow.step_type, d1);
    out.window = narrow.window;

    std::vector<bool> column_used(static_cast<std::size_t>(out.width), false);
    for (Int i = 0; i < d1; ++i) {
        const auto lifted = dilate_x(i < t ? wide : narrow, d1, i);
        for (Int x : lifted.support) {
            if (x < 0 || x >= out.width || column_used[static_cast<std::size_t>(x)]) {
                throw TilingError(ErrorKind::OffsetCollision,
                                  "residue copies collide at column " + std::to_string(x));
            }
            column_used[static_cast<std::size_t>(x)] = true;
        }
        for (const auto& path : lifted.paths) out.paths.push_back(path);
    }
    if (std::find(column_used.begin(), column_used.end(), false) != column_used.end()) {
        throw TilingError(ErrorKind::OffsetCollision, "residue copies leave a column uncovered");
    }
    return out;
}

RectangleTiling merge_lifted(std::span<const LiftedTiling> parts, Int width, const StepType& type, Int window) {
    RectangleTiling out;
    out.width = width;
    out.height = parts.empty() ? 0 : parts.front().height;
    out.step_type = type;
    out.window = window;
    std::size_t total = 0;
    for (const auto& part : parts) total += part.paths.size();
    out.paths.reserve(total);
    for (const auto& part : parts) {
        if (part.height != out.height) {
            throw TilingError(ErrorKind::HeightMismatch, "merged parts must share a height", out.height,
                              part.height);
        }
        for (const auto& path : part.paths) out.paths.push_back(path);
    }
    return out;
}

IntervalTiling flatten(const RectangleTiling& tiling, Int width) {
    if (width != tiling.width) {
        throw TilingError(ErrorKind::WidthMismatch, "flatten width must equal the tiling width", tiling.width,
                          width);
    }
    std::vector<Tile> tiles;
    tiles.reserve(tiling.paths.size());
    for (const auto& path : tiling.paths) {
        std::vector<Int> pts;
        pts.reserve(path.size());
        for (const auto& p : path.points()) pts.push_back(p.x + width * p.y);
        tiles.emplace_back(std::move(pts));
    }
    return make_interval(checked_mul(width, tiling.height), tiling.step_type, tiling.window, width,
                         std::move(tiles));
}

RectangleTiling unflatten(const IntervalTiling& tiling, Int width) {
    if (width <= 0 || tiling.length % width != 0) {
        throw TilingError(ErrorKind::WidthMismatch, "interval length must be a multiple of the width", width,
                          tiling.length);
    }
    RectangleTiling out;
    out.width = width;
    out.height = tiling.length / width;
    out.paths.reserve(tiling.tiles.size());
    for (const auto& tile : tiling.tiles) {
        std::vector<Vec2> pts;
        pts.reserve(tile.size());
        for (Int p : tile.points()) pts.push_back({p % width, p / width});
        out.paths.emplace_back(std::move(pts));
    }
    return out;
}

IntervalTiling flatten_columns(std::span<const ColumnRun> runs) {
    if (runs.empty()) throw TilingError(ErrorKind::PreconditionError, "flatten_columns needs at least one run");
    const Int height = runs.front().block->height;
    Int width = 0;
    std::size_t tile_count = 0;
    for (const auto& run : runs) {
        if (run.block->height != height) {
            throw TilingError(ErrorKind::HeightMismatch, "column runs must share a height", height,
                              run.block->height);
        }
        if (run.copies < 0) throw TilingError(ErrorKind::InvalidInput, "negative column run");
        width = checked_add(width, checked_mul(run.copies, run.block->width));
        tile_count += run.block->paths.size() * static_cast<std::size_t>(run.copies);
    }

    std::vector<Tile> tiles;
    tiles.reserve(tile_count);
    Int offset = 0;
    for (const auto& run : runs) {
        for (Int c = 0; c < run.copies; ++c) {
            for (const auto& path : run.block->paths) {
                std::vector<Int> pts;
                pts.reserve(path.size());
                for (const auto& p : path.points()) pts.push_back(offset + p.x + width * p.y);
                tiles.emplace_back(std::move(pts));
            }
            offset += run.block->width;
        }
    }
    const auto& first = *runs.front().block;
    return make_interval(checked_mul(width, height), first.step_type, first.window, width, std::move(tiles));
}

}  // namespace gaptile::grid
