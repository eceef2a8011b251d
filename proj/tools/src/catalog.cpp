#include "gaptile/cli/catalog.hpp"

#include <json.hpp>

#include <atomic>
#include <chrono>
#include <condition_variable>
#include <fstream>
#include <functional>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "gaptile/json_io.hpp"
#include "gaptile/oracle.hpp"
#include "gaptile/verify.hpp"

namespace gaptile::cli {
namespace {

void extend_sets(Int max_distance, Int remaining, Int min_distance, std::vector<Int>& current,
                 std::vector<GapSet>& out) {
    if (remaining == 0) {
        out.push_back(GapSet::from_gaps(current));
        return;
    }
    for (Int d = min_distance; d <= max_distance; ++d) {
        current.push_back(d);
        extend_sets(max_distance, remaining - 1, d, current, out);
        current.pop_back();
    }
}

std::string witness_name(const GapSet& gaps) {
    std::string name = "witness";
    for (const auto& e : gaps.entries()) name += "_" + std::to_string(e.distance) + "x" + std::to_string(e.multiplicity);
    return name + ".json";
}

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

// Returns the byte offset just past the last complete line and the parsed
// records in it.
std::pair<std::size_t, std::vector<nlohmann::json>> read_existing(const std::filesystem::path& file) {
    std::vector<nlohmann::json> rows;
    if (!std::filesystem::exists(file)) return {0, rows};
    const auto text = read_text_file(file);
    std::size_t good = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const auto nl = text.find('\n', pos);
        if (nl == std::string::npos) break;
        try {
            rows.push_back(nlohmann::json::parse(text.substr(pos, nl - pos)));
        } catch (const std::exception&) {
            break;
        }
        pos = nl + 1;
        good = pos;
    }
    return {good, rows};
}

}  // namespace

std::vector<GapSet> enumerate_gap_sets(Int max_distance, Int max_total) {
    std::vector<GapSet> out;
    std::vector<Int> current;
    for (Int total = 2; total <= max_total; ++total) extend_sets(max_distance, total, 1, current, out);
    return out;
}

std::string config_hash(const CatalogConfig& cfg) {
    std::ostringstream os;
    os << "D=" << cfg.max_distance << ";K=" << cfg.max_multiplicity << ";N=" << cfg.max_length
       << ";nodes=" << cfg.max_nodes << ";timing=" << cfg.record_timing;
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(os.str())));
    return buf;
}

std::string to_jsonl(const CatalogRecord& r, Int max_length) {
    nlohmann::json j;
    j["index"] = r.index;
    j["gap_set"] = format_gap_list(r.gaps);
    j["method"] = "oracle";
    if (r.min_length) {
        j["outcome"] = "found";
        j["min_length"] = *r.min_length;
        j["witness"] = r.witness;
    } else {
        j["outcome"] = "not-found";
        j["min_length"] = nullptr;
        j["witness"] = nullptr;
        j["flag"] = "candidate";
    }
    j["max_length"] = max_length;
    j["exhaustive"] = r.exhaustive;
    if (r.wall_time) j["wall_time_s"] = *r.wall_time;
    j["config_hash"] = r.hash;
    return j.dump();
}

CatalogSummary run_catalog(const CatalogConfig& cfg, const std::filesystem::path& file, std::ostream& log,
                           std::optional<std::size_t> stop_after) {
    const auto sets = enumerate_gap_sets(cfg.max_distance, cfg.max_multiplicity);
    const auto hash = config_hash(cfg);
    const auto dir = file.has_parent_path() ? file.parent_path() : std::filesystem::path(".");
    const auto witness_dir = cfg.witness_dir.empty() ? dir / "witnesses" : cfg.witness_dir;
    std::filesystem::create_directories(witness_dir);

    CatalogSummary summary;
    summary.total = sets.size();

    auto [good, rows] = read_existing(file);
    for (const auto& row : rows) {
        if (row.value("config_hash", std::string()) != hash) {
            throw TilingError(ErrorKind::Io, "catalog " + file.string() + " was written with another configuration");
        }
        if (row.at("index").get<std::size_t>() != summary.resumed_from) {
            throw TilingError(ErrorKind::Io, "catalog " + file.string() + " has out-of-order records");
        }
        if (row.at("outcome") == "not-found") summary.not_found.push_back(summary.resumed_from);
        ++summary.resumed_from;
    }
    if (std::filesystem::exists(file) && std::filesystem::file_size(file) != good) {
        std::filesystem::resize_file(file, good);
    }

    std::ofstream out(file, std::ios::app | std::ios::binary);
    if (!out) throw TilingError(ErrorKind::Io, "cannot open " + file.string());

    const std::size_t end = stop_after ? std::min(sets.size(), summary.resumed_from + *stop_after) : sets.size();
    std::mutex mutex;
    std::condition_variable ready;
    std::map<std::size_t, CatalogRecord> done;
    std::atomic<std::size_t> next{summary.resumed_from};
    std::exception_ptr failure;

    auto compute = [&](std::size_t i) {
        CatalogRecord rec;
        rec.index = i;
        rec.gaps = sets[i];
        rec.hash = hash;
        const auto t0 = std::chrono::steady_clock::now();
        oracle::SearchConfig sc;
        sc.max_nodes = cfg.max_nodes;
        auto res = oracle::min_interval(sets[i], cfg.max_length, sc);
        rec.exhaustive = res.exhaustive;
        if (res.status == oracle::MinIntervalStatus::Found) {
            rec.min_length = res.length;
            const auto name = witness_name(sets[i]);
            write_text_file_atomic(witness_dir / name, to_json_string(*res.witness));
            rec.witness = std::filesystem::relative(witness_dir / name, dir).generic_string();
        }
        if (cfg.record_timing) {
            rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        }
        return rec;
    };

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= end) return;
            try {
                auto rec = compute(i);
                std::lock_guard lock(mutex);
                done.emplace(i, std::move(rec));
            } catch (...) {
                std::lock_guard lock(mutex);
                if (!failure) failure = std::current_exception();
            }
            ready.notify_all();
        }
    };

    std::vector<std::thread> pool;
    const unsigned n = std::max(1u, cfg.threads);
    for (unsigned t = 0; t < n; ++t) pool.emplace_back(worker);

    // Single appender, canonical order.
    for (std::size_t i = summary.resumed_from; i < end; ++i) {
        CatalogRecord rec;
        {
            std::unique_lock lock(mutex);
            ready.wait(lock, [&] { return done.count(i) > 0 || failure; });
            if (failure && done.count(i) == 0) break;
            rec = std::move(done.at(i));
            done.erase(i);
        }
        out << to_jsonl(rec, cfg.max_length) << '\n';
        out.flush();
        ++summary.written;
        if (!rec.min_length) {
            summary.not_found.push_back(i);
            log << "CANDIDATE " << format_gap_list(rec.gaps) << ": no tiling up to length " << cfg.max_length
                << (rec.exhaustive ? "" : " (budget hit)") << '\n';
        }
    }
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
    if (!out) throw TilingError(ErrorKind::Io, "write to " + file.string() + " failed");
    return summary;
}

}  // namespace gaptile::cli
