#include "gaptile/json_io.hpp"

#include <fstream>
#include <sstream>

#include "json_detail.hpp"

namespace gaptile {

using nlohmann::json;

namespace detail {

json gaps_to_json(const GapSet& gaps) {
    json arr = json::array();
    for (const auto& e : gaps.entries()) arr.push_back({e.distance, e.multiplicity});
    return arr;
}

GapSet gaps_from_json(const json& j) {
    std::vector<GapEntry> entries;
    for (const auto& e : j) entries.push_back({e.at(0).get<Int>(), e.at(1).get<Int>()});
    return GapSet(std::move(entries));
}

json steps_to_json(const StepType& steps) {
    json arr = json::array();
    for (const auto& e : steps.entries()) arr.push_back({{e.step.x, e.step.y}, e.multiplicity});
    return arr;
}

StepType steps_from_json(const json& j) {
    std::vector<StepEntry> entries;
    for (const auto& e : j) entries.push_back({{e.at(0).at(0).get<Int>(), e.at(0).at(1).get<Int>()}, e.at(1).get<Int>()});
    return StepType(std::move(entries));
}

json paths_to_json(const std::vector<LatticePath>& paths) {
    json arr = json::array();
    for (const auto& path : paths) {
        json pts = json::array();
        for (const auto& p : path.points()) pts.push_back({p.x, p.y});
        arr.push_back(std::move(pts));
    }
    return arr;
}

std::vector<LatticePath> paths_from_json(const json& j) {
    std::vector<LatticePath> out;
    for (const auto& path : j) {
        std::vector<Vec2> pts;
        for (const auto& p : path) pts.push_back({p.at(0).get<Int>(), p.at(1).get<Int>()});
        out.emplace_back(std::move(pts));
    }
    return out;
}

json to_json(const IntervalTiling& t) {
    json j;
    j["kind"] = "interval";
    j["length"] = t.length;
    j["gap_set"] = t.gap_set ? gaps_to_json(*t.gap_set) : json::array();
    json tiles = json::array();
    for (const auto& tile : t.tiles) tiles.push_back(tile.points());
    j["tiles"] = std::move(tiles);
    json ann = json::object();
    if (t.annotations.boundary_prefix_count) ann["boundary_prefix_count"] = *t.annotations.boundary_prefix_count;
    if (t.annotations.homogeneous_for) ann["homogeneous_for"] = gaps_to_json(*t.annotations.homogeneous_for);
    j["annotations"] = std::move(ann);
    return j;
}

json to_json(const RectangleTiling& r) {
    json j;
    j["kind"] = "rectangle";
    j["width"] = r.width;
    j["height"] = r.height;
    j["step_type"] = steps_to_json(r.step_type);
    if (r.window > 0) j["window"] = r.window;
    j["paths"] = paths_to_json(r.paths);
    return j;
}

json to_json(const LiftedTiling& r) {
    json j;
    j["kind"] = "lifted";
    j["support"] = r.support;
    j["height"] = r.height;
    j["step_type"] = steps_to_json(r.step_type);
    if (r.window > 0) j["window"] = r.window;
    j["paths"] = paths_to_json(r.paths);
    return j;
}

json to_json(const VerificationReport& report) {
    json j;
    j["ok"] = report.ok();
    j["total_violations"] = report.total();
    json arr = json::array();
    for (const auto& v : report.violations()) {
        json e;
        e["kind"] = to_string(v.kind);
        e["location"] = v.location;
        if (!v.detail.empty()) e["detail"] = v.detail;
        arr.push_back(std::move(e));
    }
    j["violations"] = std::move(arr);
    return j;
}

TilingDocument from_json(const json& j) {
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "interval") {
        IntervalTiling t;
        t.length = j.at("length").get<Int>();
        if (j.contains("gap_set") && !j.at("gap_set").empty()) t.gap_set = gaps_from_json(j.at("gap_set"));
        for (const auto& tile : j.at("tiles")) t.tiles.emplace_back(tile.get<std::vector<Int>>());
        if (j.contains("annotations")) {
            const auto& ann = j.at("annotations");
            if (ann.contains("boundary_prefix_count")) {
                t.annotations.boundary_prefix_count = ann.at("boundary_prefix_count").get<Int>();
            }
            if (ann.contains("homogeneous_for")) {
                t.annotations.homogeneous_for = gaps_from_json(ann.at("homogeneous_for"));
            }
        }
        return t;
    }
    if (kind == "rectangle") {
        RectangleTiling r;
        r.width = j.at("width").get<Int>();
        r.height = j.at("height").get<Int>();
        if (j.contains("step_type")) r.step_type = steps_from_json(j.at("step_type"));
        r.window = j.value("window", Int{0});
        r.paths = paths_from_json(j.at("paths"));
        return r;
    }
    if (kind == "lifted") {
        LiftedTiling r;
        r.support = j.at("support").get<std::vector<Int>>();
        r.height = j.at("height").get<Int>();
        if (j.contains("step_type")) r.step_type = steps_from_json(j.at("step_type"));
        r.window = j.value("window", Int{0});
        r.paths = paths_from_json(j.at("paths"));
        return r;
    }
    throw TilingError(ErrorKind::InvalidInput, "unknown tiling kind '" + kind + "'");
}

}  // namespace detail

std::string to_json_string(const IntervalTiling& tiling) { return detail::to_json(tiling).dump(); }
std::string to_json_string(const RectangleTiling& tiling) { return detail::to_json(tiling).dump(); }
std::string to_json_string(const LiftedTiling& tiling) { return detail::to_json(tiling).dump(); }

std::string to_json_string(const TilingDocument& doc) {
    return std::visit([](const auto& t) { return to_json_string(t); }, doc);
}

std::string to_json_string(const VerificationReport& report) { return detail::to_json(report).dump(2); }

TilingDocument parse_tiling(std::string_view text) {
    try {
        return detail::from_json(json::parse(text));
    } catch (const json::exception& e) {
        throw TilingError(ErrorKind::InvalidInput, std::string("malformed tiling document: ") + e.what());
    }
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw TilingError(ErrorKind::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw TilingError(ErrorKind::Io, "cannot write " + tmp.string());
        out.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!out) throw TilingError(ErrorKind::Io, "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw TilingError(ErrorKind::Io, "cannot rename " + tmp.string() + ": " + ec.message());
}

TilingDocument read_tiling_file(const std::filesystem::path& path) { return parse_tiling(read_text_file(path)); }

std::vector<GapEntry> parse_gap_list(std::string_view text) {
    std::vector<GapEntry> out;
    auto fail = [&] { throw TilingError(ErrorKind::InvalidInput, "bad gap list '" + std::string(text) + "'"); };
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        const auto item = text.substr(pos, comma - pos);
        const auto colon = item.find(':');
        try {
            std::size_t used = 0;
            GapEntry e;
            if (colon == std::string_view::npos) {
                e.distance = std::stoll(std::string(item), &used);
                if (used != item.size()) fail();
                e.multiplicity = 1;
            } else {
                const std::string d(item.substr(0, colon));
                const std::string k(item.substr(colon + 1));
                e.distance = std::stoll(d, &used);
                if (used != d.size()) fail();
                e.multiplicity = std::stoll(k, &used);
                if (used != k.size()) fail();
            }
            if (e.distance < 1 || e.multiplicity < 1) fail();
            out.push_back(e);
        } catch (const std::logic_error&) {
            fail();
        }
        pos = comma + 1;
    }
    if (out.empty()) fail();
    return out;
}

std::string format_gap_list(const GapSet& gaps) {
    std::ostringstream os;
    for (std::size_t i = 0; i < gaps.entries().size(); ++i) {
        if (i) os << ',';
        os << gaps.entries()[i].distance << ':' << gaps.entries()[i].multiplicity;
    }
    return os.str();
}

}  // namespace gaptile
