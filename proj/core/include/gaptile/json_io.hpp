#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <variant>

#include "gaptile/types.hpp"

namespace gaptile {

// Canonical tiling documents:
//   {"kind":"interval","length":N,"gap_set":[[d,k],...],"tiles":[[p0,p1,...],...],"annotations":{...}}
//   {"kind":"rectangle","width":W,"height":H,"step_type":[[[dx,dy],k],...],"paths":[[[x,y],...],...]}
// Rectangle documents carry an optional "window" (steps) for windowed tilings;
// "lifted" documents add a "support" array in place of "width".

using TilingDocument = std::variant<IntervalTiling, RectangleTiling, LiftedTiling>;

std::string to_json_string(const IntervalTiling& tiling);
std::string to_json_string(const RectangleTiling& tiling);
std::string to_json_string(const LiftedTiling& tiling);
std::string to_json_string(const TilingDocument& doc);
std::string to_json_string(const VerificationReport& report);

/// Throws TilingError(InvalidInput) on malformed documents.
TilingDocument parse_tiling(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
/// Writes to a sibling temporary file, then renames over `path`.
void write_text_file_atomic(const std::filesystem::path& path, std::string_view content);

TilingDocument read_tiling_file(const std::filesystem::path& path);

/// Gap-list syntax "d:k,d:k,...". Entries with the same distance are kept
/// separate so callers can reject them; use GapSet to merge.
std::vector<GapEntry> parse_gap_list(std::string_view text);
std::string format_gap_list(const GapSet& gaps);

}  // namespace gaptile
