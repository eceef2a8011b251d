#pragma once

// Slow reference searches used only to cross-check the exact-cover engine.
// Placements are precomputed as bitmasks and the branching point is the one
// with the fewest live placements, unlike the engine's leftmost-cell rule.

#include <algorithm>
#include <bitset>
#include <cstdint>
#include <set>
#include <vector>

#include "gaptile/types.hpp"

namespace naive {

using Mask = std::bitset<256>;

inline std::uint64_t count_covers(const std::vector<Mask>& placements, std::size_t cells, Mask covered,
                                  std::uint64_t limit) {
    if (covered.count() == cells) return 1;
    // Most constrained uncovered cell.
    std::size_t best = cells;
    std::size_t best_count = SIZE_MAX;
    for (std::size_t c = 0; c < cells; ++c) {
        if (covered[c]) continue;
        std::size_t n = 0;
        for (const auto& p : placements) {
            if (p[c] && (p & covered).none()) ++n;
        }
        if (n < best_count) {
            best_count = n;
            best = c;
        }
        if (n == 0) return 0;
    }
    std::uint64_t total = 0;
    for (const auto& p : placements) {
        if (!p[best] || (p & covered).any()) continue;
        total += count_covers(placements, cells, covered | p, limit - total);
        if (total >= limit) return total;
    }
    return total;
}

inline std::vector<Mask> interval_placements(const gaptile::GapSet& gaps, gaptile::Int n) {
    auto order = gaps.expanded();
    std::set<std::vector<gaptile::Int>> seen;
    std::vector<Mask> out;
    std::sort(order.begin(), order.end());
    do {
        for (gaptile::Int s = 0; s < n; ++s) {
            std::vector<gaptile::Int> pts{s};
            for (auto g : order) pts.push_back(pts.back() + g);
            if (pts.back() >= n || !seen.insert(pts).second) continue;
            Mask m;
            for (auto p : pts) m.set(static_cast<std::size_t>(p));
            out.push_back(m);
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return out;
}

/// Number of distinct tilings of {0..n-1}, capped at `limit`.
inline std::uint64_t count_interval_tilings(const gaptile::GapSet& gaps, gaptile::Int n,
                                            std::uint64_t limit = UINT64_MAX) {
    return count_covers(interval_placements(gaps, n), static_cast<std::size_t>(n), Mask{}, limit);
}

/// Whether [0,w-1] x [0,h-1] is tiled by paths with k unit right and l unit
/// up steps. Requires w*h <= 256.
inline bool rectangle_tileable(gaptile::Int k, gaptile::Int l, gaptile::Int w, gaptile::Int h) {
    std::vector<int> order(static_cast<std::size_t>(k), 0);
    order.insert(order.end(), static_cast<std::size_t>(l), 1);
    std::vector<Mask> placements;
    do {
        for (gaptile::Int y0 = 0; y0 < h; ++y0) {
            for (gaptile::Int x0 = 0; x0 < w; ++x0) {
                gaptile::Int x = x0, y = y0;
                Mask m;
                m.set(static_cast<std::size_t>(y * w + x));
                bool ok = true;
                for (int s : order) {
                    (s == 0 ? x : y) += 1;
                    if (x >= w || y >= h) {
                        ok = false;
                        break;
                    }
                    m.set(static_cast<std::size_t>(y * w + x));
                }
                if (ok) placements.push_back(m);
            }
        }
    } while (std::next_permutation(order.begin(), order.end()));
    return count_covers(placements, static_cast<std::size_t>(w * h), Mask{}, 1) > 0;
}

}  // namespace naive
