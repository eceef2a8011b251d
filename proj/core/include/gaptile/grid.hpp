#pragma once

#include <span>

#include "gaptile/types.hpp"

namespace gaptile::grid {

/// Tiling of [0,k+l] x [0,l] by the l+1 paths
///   W_i = (i,0) -> (i,l-i) -> (k+i,l-i) -> (k+i,l),  i = 0..l,
/// each of type {e1^(k), e2^(l)}. The path ending at (k+l,l) starts with k
/// horizontal steps.
RectangleTiling stair_tiling(Int k, Int l);

/// Tiling of [0,m] x [0,m+kv] by paths that alternate n horizontal and kv
/// vertical unit steps, cut by the lines x+y = m + t(n+kv) and
/// x+y = m + tn + (t+1)kv. Declared windowed with window n+kv.
/// Requires n < m < 2n.
RectangleTiling diagonal_stripe_tiling(Int n, Int kv, Int m);

/// A rectangle tiling meant to be repeated vertically.
struct ColumnTiling {
    RectangleTiling base;
    Int period = 0;
};

RectangleTiling stack_to_height(const ColumnTiling& column, Int height);
RectangleTiling stack_to_height(const RectangleTiling& base, Int height);
LiftedTiling stack_to_height(const LiftedTiling& base, Int height);

/// Horizontal concatenation; all blocks must share the same height.
RectangleTiling concat_columns(std::span<const RectangleTiling> blocks);

/// Applies (x,y) -> (xs[x], y). Unit horizontal steps become gaps of xs.
/// The declared step type of the result is `declared` (empty if not given)
/// and the window is carried over.
LiftedTiling lift_over_points(const RectangleTiling& tiling, std::span<const Int> xs,
                              const StepType& declared = {});

/// lift_over_points with xs = (offset, offset+d, offset+2d, ...); the step
/// type is scaled along x.
LiftedTiling dilate_x(const RectangleTiling& tiling, Int d, Int offset);

/// Overlays t residue copies (offsets 0..t-1) of `wide` dilated by d1 with
/// d1-t residue copies (offsets t..d1-1) of `narrow` dilated by d1. With
/// narrow of width a and wide of width a+1 the result is a rectangle of width
/// a*d1 + t.
RectangleTiling residue_interleave(const RectangleTiling& wide, const RectangleTiling& narrow, Int d1, Int t);

/// Merges lifted tilings whose supports partition [0,width-1] into one
/// rectangle tiling.
RectangleTiling merge_lifted(std::span<const LiftedTiling> parts, Int width, const StepType& type, Int window);

/// Maps (x,y) -> x + y*width. Tiles come out sorted by their first point.
/// gap_set is the image of the declared step type; a windowed tiling is
/// annotated as homogeneous for that gap set.
IntervalTiling flatten(const RectangleTiling& tiling, Int width);

/// Inverse of flatten: p -> (p mod width, p div width).
RectangleTiling unflatten(const IntervalTiling& tiling, Int width);

struct ColumnRun {
    const RectangleTiling* block = nullptr;
    Int copies = 0;
};

/// Equivalent to flatten(concat_columns(runs expanded)) without
/// materializing the concatenated rectangle.
IntervalTiling flatten_columns(std::span<const ColumnRun> runs);

}  // namespace gaptile::grid
