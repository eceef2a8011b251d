#include "gaptile/oracle.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "gaptile/verify.hpp"

namespace gaptile::oracle {

const char* to_string(SearchStatus status) {
    switch (status) {
        case SearchStatus::Found: return "Found";
        case SearchStatus::ExhaustedNoSolution: return "ExhaustedNoSolution";
        case SearchStatus::BudgetExceeded: return "BudgetExceeded";
    }
    return "Unknown";
}

namespace {

using Placement = std::vector<Vec2>;

struct SharedState {
    std::atomic<std::uint64_t> nodes{0};
    std::atomic<std::size_t> found{0};
    std::atomic<bool> budget_hit{false};
    std::uint64_t max_nodes = 0;
    std::size_t max_solutions = 1;
};

// Leftmost-cell exact cover over a width x height grid. Intervals are the
// height-1 special case with horizontal steps.
class Engine {
public:
    Engine(Int width, Int height, std::vector<Vec2> kinds, std::vector<Int> counts, SharedState& shared)
        : width_(width),
          height_(height),
          area_(width * height),
          kinds_(std::move(kinds)),
          counts_(counts),
          full_counts_(std::move(counts)),
          shared_(shared) {
        steps_per_tile_ = 0;
        for (Int c : counts_) steps_per_tile_ += c;
        occupied_.assign(static_cast<std::size_t>(area_ + 63) / 64, 0);
    }

    void run() { search(0); }

    void run_with_root(const Placement& root) {
        for (const auto& p : root) set(p);
        placed_.push_back(root);
        search(1);
        placed_.pop_back();
        for (const auto& p : root) reset(p);
    }

    std::vector<Placement> root_placements() {
        collecting_roots_ = true;
        current_.assign(1, Vec2{0, 0});
        set({0, 0});
        extend({0, 0}, 0);
        reset({0, 0});
        collecting_roots_ = false;
        return std::move(roots_);
    }

    std::vector<std::vector<Placement>>& solutions() { return solutions_; }

private:
    std::size_t index(Vec2 p) const { return static_cast<std::size_t>(p.y * width_ + p.x); }
    bool test(Vec2 p) const {
        const auto i = index(p);
        return (occupied_[i >> 6] >> (i & 63)) & 1u;
    }
    bool test_index(Int i) const {
        const auto u = static_cast<std::size_t>(i);
        return (occupied_[u >> 6] >> (u & 63)) & 1u;
    }
    void set(Vec2 p) {
        const auto i = index(p);
        occupied_[i >> 6] |= std::uint64_t{1} << (i & 63);
    }
    void reset(Vec2 p) {
        const auto i = index(p);
        occupied_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }

    bool should_stop() const {
        return shared_.budget_hit.load(std::memory_order_relaxed) ||
               shared_.found.load(std::memory_order_relaxed) >= shared_.max_solutions;
    }

    // Returns true when the whole search must stop.
    bool search(Int from) {
        Int idx = from;
        while (idx < area_ && test_index(idx)) ++idx;
        if (idx == area_) {
            solutions_.push_back(placed_);
            shared_.found.fetch_add(1, std::memory_order_relaxed);
            return should_stop();
        }
        const Vec2 start{idx % width_, idx / width_};
        auto saved = counts_;
        counts_ = full_counts_;
        set(start);
        current_.assign(1, start);
        const bool stop = extend(start, 0);
        reset(start);
        counts_ = std::move(saved);
        return stop;
    }

    bool extend(Vec2 pos, Int depth) {
        if (depth == steps_per_tile_) {
            if (collecting_roots_) {
                roots_.push_back(current_);
                return false;
            }
            placed_.push_back(current_);
            const Int next = static_cast<Int>(index(placed_.back().front())) + 1;
            const bool stop = search(next);
            current_ = std::move(placed_.back());
            placed_.pop_back();
            return stop;
        }
        for (std::size_t k = 0; k < kinds_.size(); ++k) {
            if (counts_[k] == 0) continue;
            const Vec2 np = pos + kinds_[k];
            if (np.x >= width_ || np.y >= height_ || test(np)) continue;
            const auto n = shared_.nodes.fetch_add(1, std::memory_order_relaxed) + 1;
            if (n > shared_.max_nodes) {
                shared_.budget_hit.store(true, std::memory_order_relaxed);
                return true;
            }
            --counts_[k];
            set(np);
            current_.push_back(np);
            const bool stop = extend(np, depth + 1);
            current_.pop_back();
            reset(np);
            ++counts_[k];
            if (stop || should_stop()) return true;
        }
        return false;
    }

    Int width_;
    Int height_;
    Int area_;
    std::vector<Vec2> kinds_;
    std::vector<Int> counts_;
    std::vector<Int> full_counts_;
    Int steps_per_tile_ = 0;
    SharedState& shared_;
    std::vector<std::uint64_t> occupied_;
    Placement current_;
    std::vector<Placement> placed_;
    std::vector<std::vector<Placement>> solutions_;
    bool collecting_roots_ = false;
    std::vector<Placement> roots_;
};

struct RawOutcome {
    SearchStatus status = SearchStatus::ExhaustedNoSolution;
    std::vector<std::vector<Placement>> solutions;
    std::uint64_t nodes = 0;
};

RawOutcome run_search(Int width, Int height, const StepType& steps, const SearchConfig& cfg) {
    std::vector<Vec2> kinds;
    std::vector<Int> counts;
    for (const auto& e : steps.entries()) {
        if (cfg.canonicalize) {
            kinds.push_back(e.step);
            counts.push_back(e.multiplicity);
        } else {
            for (Int i = 0; i < e.multiplicity; ++i) {
                kinds.push_back(e.step);
                counts.push_back(1);
            }
        }
    }

    SharedState shared;
    shared.max_nodes = cfg.max_nodes;
    shared.max_solutions = std::max<std::size_t>(cfg.max_solutions, 1);

    RawOutcome out;
    if (cfg.parallel_width == 0) {
        Engine engine(width, height, kinds, counts, shared);
        engine.run();
        out.solutions = std::move(engine.solutions());
    } else {
        std::vector<Placement> roots;
        {
            Engine probe(width, height, kinds, counts, shared);
            roots = probe.root_placements();
        }
        std::vector<std::vector<std::vector<Placement>>> per_root(roots.size());
        std::atomic<std::size_t> next{0};
        auto worker = [&] {
            Engine engine(width, height, kinds, counts, shared);
            for (;;) {
                const std::size_t r = next.fetch_add(1);
                if (r >= roots.size()) break;
                if (shared.budget_hit.load() || shared.found.load() >= shared.max_solutions) break;
                engine.run_with_root(roots[r]);
                per_root[r] = std::move(engine.solutions());
                engine.solutions().clear();
            }
        };
        std::vector<std::thread> threads;
        for (unsigned i = 0; i < cfg.parallel_width; ++i) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
        for (auto& sols : per_root) {
            for (auto& s : sols) out.solutions.push_back(std::move(s));
        }
    }
    if (out.solutions.size() > shared.max_solutions) out.solutions.resize(shared.max_solutions);
    out.nodes = std::min(shared.nodes.load(), cfg.max_nodes);
    if (!out.solutions.empty()) {
        out.status = SearchStatus::Found;
    } else if (shared.budget_hit.load()) {
        out.status = SearchStatus::BudgetExceeded;
    }
    return out;
}

}  // namespace

IntervalSearchOutcome solve_interval(const GapSet& gaps, Int length, const SearchConfig& cfg) {
    IntervalSearchOutcome out;
    if (gaps.empty() || length <= 0 || length % gaps.points_per_tile() != 0) return out;

    std::vector<StepEntry> entries;
    for (const auto& e : gaps.entries()) entries.push_back({{e.distance, 0}, e.multiplicity});
    auto raw = run_search(length, 1, StepType(std::move(entries)), cfg);
    out.status = raw.status;
    out.nodes_explored = raw.nodes;
    for (auto& sol : raw.solutions) {
        IntervalTiling t;
        t.length = length;
        t.gap_set = gaps;
        for (auto& placement : sol) {
            std::vector<Int> pts;
            pts.reserve(placement.size());
            for (const auto& p : placement) pts.push_back(p.x);
            t.tiles.emplace_back(std::move(pts));
        }
        if (!verify_interval_tiling(t, gaps).ok()) {
            throw TilingError(ErrorKind::VerificationFailed, "oracle produced an invalid interval witness");
        }
        out.witnesses.push_back(std::move(t));
    }
    return out;
}

MinIntervalOutcome min_interval(const GapSet& gaps, Int max_length, const SearchConfig& cfg) {
    MinIntervalOutcome out;
    if (gaps.empty()) return out;
    const Int step = gaps.points_per_tile();
    SearchConfig one = cfg;
    one.max_solutions = 1;
    for (Int n = step; n <= max_length; n += step) {
        auto r = solve_interval(gaps, n, one);
        out.nodes_explored += r.nodes_explored;
        if (r.status == SearchStatus::Found) {
            out.status = MinIntervalStatus::Found;
            out.length = n;
            out.witness = std::move(r.witnesses.front());
            return out;
        }
        if (r.status == SearchStatus::BudgetExceeded) out.exhaustive = false;
    }
    return out;
}

RectangleSearchOutcome solve_rectangle(const StepType& steps, Int width, Int height, const SearchConfig& cfg) {
    RectangleSearchOutcome out;
    if (steps.empty() || width <= 0 || height <= 0) return out;
    if (checked_mul(width, height) % (steps.size() + 1) != 0) return out;

    auto raw = run_search(width, height, steps, cfg);
    out.status = raw.status;
    out.nodes_explored = raw.nodes;
    for (auto& sol : raw.solutions) {
        RectangleTiling r;
        r.width = width;
        r.height = height;
        r.step_type = steps;
        for (auto& placement : sol) r.paths.emplace_back(std::move(placement));
        if (!verify_rectangle_tiling(r).ok()) {
            throw TilingError(ErrorKind::VerificationFailed, "oracle produced an invalid rectangle witness");
        }
        out.witnesses.push_back(std::move(r));
    }
    return out;
}

}  // namespace gaptile::oracle
