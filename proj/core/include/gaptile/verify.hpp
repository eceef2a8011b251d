#pragma once

#include <span>

#include "gaptile/types.hpp"

namespace gaptile {

// All verifiers are pure and never trust construction metadata: they look at
// the explicit point lists only. Stored violations are capped at `cap`, the
// ok flag always reflects the full check.

/// Checks that `tiles` partition {0, ..., length-1}. One streaming pass in
/// order of tile minimum, with a coverage window bounded by the largest tile
/// span. Reports Overlap, Hole and OutOfRange.
VerificationReport verify_partition(std::span<const Tile> tiles, Int length,
                                    std::size_t cap = VerificationReport::kDefaultCap);

/// Partition check plus GapMismatch(tile index) for every tile whose gap
/// multiset differs from `gaps`.
VerificationReport verify_interval_tiling(const IntervalTiling& tiling, const GapSet& gaps,
                                          std::size_t cap = VerificationReport::kDefaultCap);

/// Every tile whose last point lies in the last `d1` points of the interval
/// must start with `count` gaps equal to `d1`.
VerificationReport verify_boundary_prefix(const IntervalTiling& tiling, Int d1, Int count,
                                          std::size_t cap = VerificationReport::kDefaultCap);

/// Partition check plus: every |gaps|+1 consecutive points of every sequence
/// form a tile with gap multiset `gaps`.
VerificationReport verify_homogeneous(std::span<const Tile> sequences, Int length, const GapSet& gaps,
                                      std::size_t cap = VerificationReport::kDefaultCap);

/// Partition of the rectangle plus the per-path step condition (uniform or
/// windowed, see RectangleTiling).
VerificationReport verify_rectangle_tiling(const RectangleTiling& tiling,
                                           std::size_t cap = VerificationReport::kDefaultCap);

/// Same as verify_rectangle_tiling for a tiling of support x [0,height-1].
VerificationReport verify_lifted_tiling(const LiftedTiling& tiling,
                                        std::size_t cap = VerificationReport::kDefaultCap);

}  // namespace gaptile
