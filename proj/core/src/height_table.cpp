#include "gaptile/height_table.hpp"

#include <cstdlib>
#include <mutex>
#include <sstream>

#include "gaptile/grid.hpp"
#include "gaptile/verify.hpp"
#include "json_detail.hpp"

namespace gaptile::grid {
namespace {

std::string key_string(Int k, Int l, Int m) {
    std::ostringstream os;
    os << k << ',' << l << ',' << m;
    return os.str();
}

std::string witness_name(Int k, Int l, Int m) {
    std::ostringstream os;
    os << "witness_" << k << '_' << l << '_' << m << ".json";
    return os.str();
}

bool witness_ok(Int k, Int l, Int m, const HeightEntry& e) {
    const auto& w = e.witness;
    return w.width == m && w.height == e.f && w.window == 0 && w.step_type == StepType::unit(k, l) &&
           verify_rectangle_tiling(w).ok();
}

}  // namespace

HeightTable::HeightTable(std::filesystem::path directory) : directory_(std::move(directory)) {
    std::filesystem::create_directories(*directory_);
    load();
}

HeightTable& HeightTable::shared() {
    static HeightTable table = [] {
        if (const char* dir = std::getenv(kCacheEnv); dir != nullptr && *dir != '\0') {
            return HeightTable(std::filesystem::path(dir));
        }
        return HeightTable();
    }();
    return table;
}

void HeightTable::load() {
    const auto index_path = *directory_ / kIndexFile;
    if (!std::filesystem::exists(index_path)) return;
    nlohmann::json index;
    try {
        index = nlohmann::json::parse(read_text_file(index_path));
    } catch (const std::exception&) {
        return;
    }
    for (const auto& [key, value] : index.items()) {
        try {
            Int k = 0, l = 0, m = 0;
            char c1 = 0, c2 = 0;
            std::istringstream ks(key);
            ks >> k >> c1 >> l >> c2 >> m;
            if (!ks || c1 != ',' || c2 != ',') continue;
            HeightEntry e;
            e.f = value.at("f").get<Int>();
            e.proven_minimal = value.value("minimal", false);
            auto doc = read_tiling_file(*directory_ / value.at("witness_path").get<std::string>());
            if (!std::holds_alternative<RectangleTiling>(doc)) continue;
            e.witness = std::get<RectangleTiling>(std::move(doc));
            if (witness_ok(k, l, m, e)) entries_[{k, l, m}] = std::move(e);
        } catch (const std::exception&) {
            continue;
        }
    }
}

void HeightTable::persist_locked() const {
    nlohmann::json index = nlohmann::json::object();
    const auto index_path = *directory_ / kIndexFile;
    if (std::filesystem::exists(index_path)) {
        try {
            index = nlohmann::json::parse(read_text_file(index_path));
        } catch (const std::exception&) {
            index = nlohmann::json::object();
        }
    }
    for (const auto& [key, e] : entries_) {
        const auto [k, l, m] = key;
        const auto name = witness_name(k, l, m);
        if (!std::filesystem::exists(*directory_ / name)) {
            write_text_file_atomic(*directory_ / name, to_json_string(e.witness));
        }
        index[key_string(k, l, m)] = {{"f", e.f}, {"witness_path", name}, {"minimal", e.proven_minimal}};
    }
    write_text_file_atomic(index_path, index.dump(2));
}

std::optional<HeightEntry> HeightTable::lookup(Int k, Int l, Int m) const {
    std::shared_lock lock(mutex_);
    auto it = entries_.find({k, l, m});
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

void HeightTable::store(Int k, Int l, Int m, const HeightEntry& entry) {
    std::unique_lock lock(mutex_);
    entries_[{k, l, m}] = entry;
    if (directory_) persist_locked();
}

std::size_t HeightTable::size() const {
    std::shared_lock lock(mutex_);
    return entries_.size();
}

HeightEntry min_height_rect(Int k, Int l, Int m, HeightTable& table, const MinHeightOptions& options) {
    if (k < 1 || l < 1) throw TilingError(ErrorKind::RangeError, "min_height_rect needs k, l >= 1");
    if (m < k + 1 || m > k + l + 1) {
        throw TilingError(ErrorKind::RangeError,
                          "min_height_rect needs k+1 <= m <= k+l+1 (got k=" + std::to_string(k) +
                              ", l=" + std::to_string(l) + ", m=" + std::to_string(m) + ")",
                          k + l + 1, m);
    }
    if (auto hit = table.lookup(k, l, m)) return *hit;

    HeightEntry entry;
    if (m == k + l + 1) {
        // Each path spans l+1 rows, so l+1 is a lower bound as well.
        entry.f = l + 1;
        entry.witness = stair_tiling(k, l);
        entry.proven_minimal = true;
    } else {
        const Int points = k + l + 1;
        const auto type = StepType::unit(k, l);
        bool exhaustive = true;
        for (Int f = 1; f <= options.max_height; ++f) {
            if ((m * f) % points != 0) continue;
            auto outcome = oracle::solve_rectangle(type, m, f, options.search);
            if (outcome.status == oracle::SearchStatus::Found) {
                entry.f = f;
                entry.witness = std::move(outcome.witnesses.front());
                entry.proven_minimal = exhaustive;
                break;
            }
            if (outcome.status == oracle::SearchStatus::BudgetExceeded) exhaustive = false;
        }
        if (entry.f == 0) {
            throw TilingError(ErrorKind::SearchExhausted,
                              "no rectangle height up to " + std::to_string(options.max_height) + " for (k,l,m)=(" +
                                  std::to_string(k) + "," + std::to_string(l) + "," + std::to_string(m) + ")");
        }
    }
    if (!witness_ok(k, l, m, entry)) {
        throw TilingError(ErrorKind::VerificationFailed, "min_height_rect witness failed verification");
    }
    table.store(k, l, m, entry);
    return entry;
}

}  // namespace gaptile::grid
