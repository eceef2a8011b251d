#include "gaptile/verify.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

namespace gaptile {
namespace {

// Ring of coverage bits addressed by absolute point mod capacity.
class CoverageRing {
public:
    explicit CoverageRing(Int span) {
        const auto need = static_cast<std::uint64_t>(std::max<Int>(span + 1, 64));
        capacity_ = std::bit_ceil(need);
        words_.assign(capacity_ / 64, 0);
        mask_ = capacity_ - 1;
    }

    bool test(Int q) const noexcept {
        const auto i = static_cast<std::uint64_t>(q) & mask_;
        return (words_[i >> 6] >> (i & 63)) & 1u;
    }
    void set(Int q) noexcept {
        const auto i = static_cast<std::uint64_t>(q) & mask_;
        words_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    void clear(Int q) noexcept {
        const auto i = static_cast<std::uint64_t>(q) & mask_;
        words_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

private:
    std::vector<std::uint64_t> words_;
    std::uint64_t capacity_ = 0;
    std::uint64_t mask_ = 0;
};

std::string describe_gaps(std::span<const Int> gaps) {
    std::ostringstream os;
    os << "gaps (";
    for (std::size_t i = 0; i < gaps.size(); ++i) os << (i ? "," : "") << gaps[i];
    os << ')';
    return os.str();
}

bool same_gaps(std::span<const Int> window, std::span<const Int> expected_sorted, std::vector<Int>& scratch) {
    if (window.size() != expected_sorted.size()) return false;
    scratch.assign(window.begin(), window.end());
    std::sort(scratch.begin(), scratch.end());
    return std::equal(scratch.begin(), scratch.end(), expected_sorted.begin());
}

std::vector<Vec2> expand(const StepType& type) {
    std::vector<Vec2> out;
    for (const auto& e : type.entries()) out.insert(out.end(), static_cast<std::size_t>(e.multiplicity), e.step);
    return out;
}

// Shared rectangle / ragged-rectangle check. `support` empty means the
// identity support [0, width-1].
VerificationReport verify_paths(std::span<const Int> support, Int width, Int height,
                                std::span<const LatticePath> paths, const StepType& type, Int window,
                                std::size_t cap) {
    VerificationReport report(cap);
    const bool identity = support.empty();
    const Int columns = identity ? width : static_cast<Int>(support.size());
    if (columns <= 0 || height <= 0) {
        report.add(ViolationKind::OutOfRange, {columns, height}, "empty rectangle");
        return report;
    }
    const auto area = static_cast<std::size_t>(checked_mul(columns, height));
    std::vector<bool> covered(area, false);

    auto column_of = [&](Int x) -> Int {
        if (identity) return (x >= 0 && x < width) ? x : -1;
        auto it = std::lower_bound(support.begin(), support.end(), x);
        if (it == support.end() || *it != x) return -1;
        return static_cast<Int>(it - support.begin());
    };

    for (std::size_t pi = 0; pi < paths.size(); ++pi) {
        for (const auto& pt : paths[pi].points()) {
            const Int col = column_of(pt.x);
            if (col < 0 || pt.y < 0 || pt.y >= height) {
                report.add(ViolationKind::OutOfRange, {pt.x, pt.y}, "path " + std::to_string(pi));
                continue;
            }
            const auto idx = static_cast<std::size_t>(pt.y * columns + col);
            if (covered[idx]) {
                report.add(ViolationKind::Overlap, {pt.x, pt.y}, "path " + std::to_string(pi));
            } else {
                covered[idx] = true;
            }
        }
    }
    for (Int y = 0; y < height; ++y) {
        for (Int c = 0; c < columns; ++c) {
            if (!covered[static_cast<std::size_t>(y * columns + c)]) {
                report.add(ViolationKind::Hole, {identity ? c : support[static_cast<std::size_t>(c)], y});
            }
        }
    }

    if (type.empty()) return report;
    auto expected = expand(type);
    std::sort(expected.begin(), expected.end());
    std::vector<Vec2> scratch;
    for (std::size_t pi = 0; pi < paths.size(); ++pi) {
        const auto steps = paths[pi].step_vectors();
        if (window == 0) {
            scratch = steps;
            std::sort(scratch.begin(), scratch.end());
            if (scratch != expected) report.add(ViolationKind::TypeMismatch, {static_cast<Int>(pi)});
            continue;
        }
        const auto w = static_cast<std::size_t>(window);
        if (steps.size() < w) {
            report.add(ViolationKind::ShortSequence, {static_cast<Int>(pi)},
                       std::to_string(steps.size()) + " steps < window " + std::to_string(w));
            continue;
        }
        for (std::size_t off = 0; off + w <= steps.size(); ++off) {
            scratch.assign(steps.begin() + static_cast<std::ptrdiff_t>(off),
                           steps.begin() + static_cast<std::ptrdiff_t>(off + w));
            std::sort(scratch.begin(), scratch.end());
            if (scratch != expected) {
                report.add(ViolationKind::WindowMismatch, {static_cast<Int>(pi), static_cast<Int>(off)});
            }
        }
    }
    return report;
}

}  // namespace

VerificationReport verify_partition(std::span<const Tile> tiles, Int length, std::size_t cap) {
    VerificationReport report(cap);
    if (length <= 0) {
        report.add(ViolationKind::OutOfRange, {length}, "interval length must be positive");
        return report;
    }

    Int max_span = 0;
    bool sorted = true;
    for (std::size_t i = 0; i < tiles.size(); ++i) {
        max_span = std::max(max_span, tiles[i].back() - tiles[i].front());
        if (i && tiles[i].front() < tiles[i - 1].front()) sorted = false;
    }
    std::vector<std::size_t> order;
    if (!sorted) {
        order.resize(tiles.size());
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return tiles[a].front() < tiles[b].front(); });
    }

    CoverageRing ring(max_span);
    Int cursor = 0;  // every point below cursor is final
    auto finalize_until = [&](Int limit) {
        limit = std::min(limit, length);
        for (; cursor < limit; ++cursor) {
            if (!ring.test(cursor)) report.add(ViolationKind::Hole, {cursor});
            ring.clear(cursor);
        }
    };

    for (std::size_t k = 0; k < tiles.size(); ++k) {
        const Tile& tile = tiles[sorted ? k : order[k]];
        finalize_until(tile.front());
        for (Int q : tile.points()) {
            if (q < 0 || q >= length) {
                report.add(ViolationKind::OutOfRange, {q});
            } else if (ring.test(q)) {
                report.add(ViolationKind::Overlap, {q});
            } else {
                ring.set(q);
            }
        }
    }
    finalize_until(length);
    return report;
}

VerificationReport verify_interval_tiling(const IntervalTiling& tiling, const GapSet& gaps, std::size_t cap) {
    auto report = verify_partition(tiling.tiles, tiling.length, cap);
    const auto expected = gaps.expanded();
    std::vector<Int> scratch;
    for (std::size_t i = 0; i < tiling.tiles.size(); ++i) {
        const auto g = tiling.tiles[i].gaps();
        if (!same_gaps(g, expected, scratch)) {
            report.add(ViolationKind::GapMismatch, {static_cast<Int>(i)}, describe_gaps(g));
        }
    }
    return report;
}

VerificationReport verify_boundary_prefix(const IntervalTiling& tiling, Int d1, Int count, std::size_t cap) {
    VerificationReport report(cap);
    if (count <= 0) return report;
    const Int lo = tiling.length - d1;
    for (std::size_t i = 0; i < tiling.tiles.size(); ++i) {
        const Tile& tile = tiling.tiles[i];
        if (tile.back() < lo || tile.back() >= tiling.length) continue;
        const auto& pts = tile.points();
        for (Int j = 0; j < count; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            if (uj + 1 >= pts.size()) {
                report.add(ViolationKind::BoundaryPrefixViolation, {static_cast<Int>(i), j}, "tile too short");
                break;
            }
            const Int gap = pts[uj + 1] - pts[uj];
            if (gap != d1) {
                report.add(ViolationKind::BoundaryPrefixViolation, {static_cast<Int>(i), j},
                           "gap " + std::to_string(gap) + " != " + std::to_string(d1));
                break;
            }
        }
    }
    return report;
}

VerificationReport verify_homogeneous(std::span<const Tile> sequences, Int length, const GapSet& gaps,
                                      std::size_t cap) {
    auto report = verify_partition(sequences, length, cap);
    const auto expected = gaps.expanded();
    const auto w = expected.size();
    std::vector<Int> scratch;
    for (std::size_t i = 0; i < sequences.size(); ++i) {
        const auto g = sequences[i].gaps();
        if (g.size() < w) {
            report.add(ViolationKind::ShortSequence, {static_cast<Int>(i)},
                       std::to_string(sequences[i].size()) + " points");
            continue;
        }
        for (std::size_t off = 0; off + w <= g.size(); ++off) {
            if (!same_gaps(std::span<const Int>(g).subspan(off, w), expected, scratch)) {
                report.add(ViolationKind::WindowMismatch, {static_cast<Int>(i), static_cast<Int>(off)});
            }
        }
    }
    return report;
}

VerificationReport verify_rectangle_tiling(const RectangleTiling& tiling, std::size_t cap) {
    return verify_paths({}, tiling.width, tiling.height, tiling.paths, tiling.step_type, tiling.window, cap);
}

VerificationReport verify_lifted_tiling(const LiftedTiling& tiling, std::size_t cap) {
    VerificationReport report(cap);
    if (tiling.support.empty()) {
        report.add(ViolationKind::OutOfRange, {0, tiling.height}, "empty support");
        return report;
    }
    for (std::size_t i = 1; i < tiling.support.size(); ++i) {
        if (tiling.support[i] <= tiling.support[i - 1]) {
            report.add(ViolationKind::OutOfRange, {tiling.support[i]}, "support not strictly increasing");
            return report;
        }
    }
    return verify_paths(tiling.support, static_cast<Int>(tiling.support.size()), tiling.height, tiling.paths,
                        tiling.step_type, tiling.window, cap);
}

}  // namespace gaptile
