#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gaptile/construct.hpp"
#include "gaptile/types.hpp"

namespace gaptile {

enum class ConditionStatus { Satisfied, NotSatisfied, NotApplicable };

const char* to_string(ConditionStatus status);

struct ConditionResult {
    std::string name;
    ConditionStatus status = ConditionStatus::NotApplicable;
    std::string witness;
    bool satisfied() const noexcept { return status == ConditionStatus::Satisfied; }
};

/// r >= 63 max(p,q)^2 for the three gaps p, q <= r.
bool cjk_holds(Int p, Int q, Int r);

/// The three two-distance conditions for {p^(k), q^(l)}.
bool nakamigawa_case1(Int p, Int k, Int q, Int l);
bool nakamigawa_case2(Int p, Int k, Int q, Int l);
bool nakamigawa_case3(Int p, Int k, Int q, Int l);

/// Table of which values in [0, limit] are sums c_1(k+1) + ... + c_{l+1}(k+l+1)
/// with c_i >= 0.
std::vector<bool> representable_sums(Int k, Int l, Int limit);

/// All a in [1, limit] with both a and a+1 representable over the coins
/// k+1, ..., k+l+1.
std::vector<Int> admissible_a(Int k, Int l, Int limit);

/// Some admissible a with a*p <= q <= (a+1)*p, if any.
std::optional<Int> representation_window(Int p, Int k, Int q, Int l);

/// Evaluates every known sufficient condition that applies to the shape of T.
/// Without a split, each split returned by auto_split is tried in turn.
std::vector<ConditionResult> check_sufficient_conditions(const GapSet& gaps,
                                                         std::optional<SplitSpec> split = std::nullopt,
                                                         const construct::Options& options = {});

std::string to_json_string(const std::vector<ConditionResult>& results);

}  // namespace gaptile
