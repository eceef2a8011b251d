#pragma once

// Internal JSON conversions shared by the core translation units.

#include <json.hpp>

#include "gaptile/json_io.hpp"

namespace gaptile::detail {

nlohmann::json gaps_to_json(const GapSet& gaps);
GapSet gaps_from_json(const nlohmann::json& j);
nlohmann::json steps_to_json(const StepType& steps);
StepType steps_from_json(const nlohmann::json& j);
nlohmann::json paths_to_json(const std::vector<LatticePath>& paths);
std::vector<LatticePath> paths_from_json(const nlohmann::json& j);

nlohmann::json to_json(const IntervalTiling& t);
nlohmann::json to_json(const RectangleTiling& r);
nlohmann::json to_json(const LiftedTiling& r);
nlohmann::json to_json(const VerificationReport& report);
TilingDocument from_json(const nlohmann::json& j);

}  // namespace gaptile::detail
