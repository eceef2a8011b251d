#pragma once

#include <cstdint>
#include <string>

#include "gaptile/json_io.hpp"

namespace gaptile::cli {

enum class RenderTarget { Ascii, Svg };

struct RenderSpec {
    RenderTarget target = RenderTarget::Svg;
    int cell = 24;
    std::uint64_t seed = 1;
    /// Interval tilings show only the first `window` points.
    Int window = 200;
    /// Rectangles larger than this in either direction are cropped.
    Int max_side = 200;
};

/// Throws TilingError(InvalidInput) for documents with nothing to draw.
std::string render(const TilingDocument& doc, const RenderSpec& spec);

/// Color of item `index` under `seed`, as #rrggbb.
std::string palette_color(std::uint64_t seed, std::size_t index);

}  // namespace gaptile::cli
