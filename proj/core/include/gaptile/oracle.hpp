#pragma once

#include <cstdint>
#include <optional>

#include "gaptile/types.hpp"

namespace gaptile::oracle {

struct SearchConfig {
    std::uint64_t max_nodes = 200'000'000;
    std::size_t max_solutions = 1;
    /// Branch over distinct orderings of the step multiset only. With this off,
    /// equal steps are treated as distinguishable and every tiling is
    /// reported once per ordering of its repeated steps.
    bool canonicalize = true;
    /// Worker threads splitting the root branches; 0 runs sequentially.
    unsigned parallel_width = 0;
};

enum class SearchStatus { Found, ExhaustedNoSolution, BudgetExceeded };

const char* to_string(SearchStatus status);

struct IntervalSearchOutcome {
    SearchStatus status = SearchStatus::ExhaustedNoSolution;
    std::vector<IntervalTiling> witnesses;
    std::uint64_t nodes_explored = 0;
};

struct RectangleSearchOutcome {
    SearchStatus status = SearchStatus::ExhaustedNoSolution;
    std::vector<RectangleTiling> witnesses;
    std::uint64_t nodes_explored = 0;
};

/// Exact-cover search for a tiling of {0..length-1} by tiles with gap
/// multiset `gaps`. The least uncovered point is always the minimum of the
/// next tile; branches are the distinct gap orderings in lexicographic order.
/// ExhaustedNoSolution proves that no tiling of this length exists.
IntervalSearchOutcome solve_interval(const GapSet& gaps, Int length, const SearchConfig& cfg = {});

enum class MinIntervalStatus { Found, NotFoundWithinBound };

struct MinIntervalOutcome {
    MinIntervalStatus status = MinIntervalStatus::NotFoundWithinBound;
    Int length = 0;
    std::optional<IntervalTiling> witness;
    /// False if some shorter length hit the node budget, so minimality (or
    /// absence) is not proven.
    bool exhaustive = true;
    std::uint64_t nodes_explored = 0;
};

/// Scans lengths that are multiples of |gaps|+1 up to max_length and returns
/// the first one that tiles.
MinIntervalOutcome min_interval(const GapSet& gaps, Int max_length, const SearchConfig& cfg = {});

/// Exact-cover search for a tiling of [0,width-1] x [0,height-1] by lattice
/// paths whose step multiset is `steps`. The least uncovered point in
/// row-major order is always the start of the next path.
RectangleSearchOutcome solve_rectangle(const StepType& steps, Int width, Int height, const SearchConfig& cfg = {});

}  // namespace gaptile::oracle
