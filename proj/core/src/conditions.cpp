#include "gaptile/conditions.hpp"

#include <algorithm>
#include <functional>

#include "json_detail.hpp"

namespace gaptile {

const char* to_string(ConditionStatus status) {
    switch (status) {
        case ConditionStatus::Satisfied: return "satisfied";
        case ConditionStatus::NotSatisfied: return "not-satisfied";
        case ConditionStatus::NotApplicable: return "not-applicable";
    }
    return "?";
}

bool cjk_holds(Int p, Int q, Int r) {
    const Int m = std::max(p, q);
    return r >= checked_mul(63, checked_mul(m, m));
}

bool nakamigawa_case1(Int, Int k, Int, Int) { return k == 1; }

bool nakamigawa_case2(Int p, Int k, Int q, Int) { return checked_mul(checked_mul(k, k + 1), p) <= q; }

bool nakamigawa_case3(Int p, Int k, Int q, Int l) { return k <= l && checked_mul(k + 1, p) <= q; }

std::vector<bool> representable_sums(Int k, Int l, Int limit) {
    std::vector<bool> ok(static_cast<std::size_t>(limit + 1), false);
    ok[0] = true;
    for (Int coin = k + 1; coin <= k + l + 1; ++coin) {
        for (Int v = coin; v <= limit; ++v) {
            if (ok[static_cast<std::size_t>(v - coin)]) ok[static_cast<std::size_t>(v)] = true;
        }
    }
    return ok;
}

std::vector<Int> admissible_a(Int k, Int l, Int limit) {
    const auto ok = representable_sums(k, l, limit + 1);
    std::vector<Int> out;
    for (Int a = 1; a <= limit; ++a) {
        if (ok[static_cast<std::size_t>(a)] && ok[static_cast<std::size_t>(a + 1)]) out.push_back(a);
    }
    return out;
}

std::optional<Int> representation_window(Int p, Int k, Int q, Int l) {
    // a*p <= q <= (a+1)*p leaves a = floor(q/p) or ceil(q/p) - 1.
    const Int hi = q / p;
    const Int lo = (q + p - 1) / p - 1;
    const auto ok = representable_sums(k, l, hi + 1);
    for (Int a : {lo, hi}) {
        if (a >= 1 && ok[static_cast<std::size_t>(a)] && ok[static_cast<std::size_t>(a + 1)]) return a;
    }
    return std::nullopt;
}

namespace {

std::string pair_label(Int p, Int k, Int q, Int l) {
    return "p=" + std::to_string(p) + " k=" + std::to_string(k) + " q=" + std::to_string(q) + " l=" + std::to_string(l);
}

ConditionResult two_distance(const std::string& name, const GapSet& gaps,
                             const std::function<std::optional<std::string>(Int, Int, Int, Int)>& test) {
    ConditionResult r{name, ConditionStatus::NotApplicable, {}};
    if (gaps.distinct() != 2) return r;
    const auto& e = gaps.entries();
    r.status = ConditionStatus::NotSatisfied;
    // Either distance may play the role of p.
    for (int swap = 0; swap < 2; ++swap) {
        const auto& a = e[swap == 0 ? 0 : 1];
        const auto& b = e[swap == 0 ? 1 : 0];
        if (auto w = test(a.distance, a.multiplicity, b.distance, b.multiplicity)) {
            r.status = ConditionStatus::Satisfied;
            r.witness = *w;
            return r;
        }
    }
    return r;
}

ConditionResult growth_conditions(const GapSet& gaps, SplitSpec split, const construct::Options& options) {
    ConditionResult r{"growth s=" + std::to_string(split.s) + " p=" + std::to_string(split.p),
                      ConditionStatus::NotSatisfied, {}};
    const auto& e = gaps.entries();
    try {
        construct::check_split(gaps, split);
        const Int base = construct::base_threshold(e[0].distance, e[0].multiplicity, e[1].multiplicity);
        if (e[1].distance < base) {
            r.witness = "d2 >= " + std::to_string(base) + " fails";
            return r;
        }
        std::string detail = "d2 >= " + std::to_string(base);
        // Each stage threshold is computed from the distances before it.
        for (std::size_t m = 2; m < e.size(); ++m) {
            const GapSet prefix(std::vector<GapEntry>(e.begin(), e.begin() + static_cast<std::ptrdiff_t>(m)));
            const auto report = construct::thresholds(prefix, split, e[m].multiplicity, options);
            const Int required = report.entries.back().required;
            if (e[m].distance < required) {
                r.witness = "d" + std::to_string(m + 1) + " >= " + std::to_string(required) + " fails";
                return r;
            }
            detail += ", d" + std::to_string(m + 1) + " >= " + std::to_string(required);
        }
        r.status = ConditionStatus::Satisfied;
        r.witness = detail;
    } catch (const TilingError& err) {
        r.witness = err.what();
    }
    return r;
}

}  // namespace

std::vector<ConditionResult> check_sufficient_conditions(const GapSet& gaps, std::optional<SplitSpec> split,
                                                         const construct::Options& options) {
    std::vector<ConditionResult> out;

    ConditionResult cjk{"cjk", ConditionStatus::NotApplicable, {}};
    if (gaps.size() == 3) {
        const auto g = gaps.expanded();
        cjk.status = cjk_holds(g[0], g[1], g[2]) ? ConditionStatus::Satisfied : ConditionStatus::NotSatisfied;
        cjk.witness = "r=" + std::to_string(g[2]) + " vs 63*" + std::to_string(std::max(g[0], g[1])) + "^2";
    }
    out.push_back(std::move(cjk));

    out.push_back(two_distance("nakamigawa-1", gaps, [](Int p, Int k, Int q, Int l) -> std::optional<std::string> {
        if (nakamigawa_case1(p, k, q, l)) return pair_label(p, k, q, l);
        return std::nullopt;
    }));
    out.push_back(two_distance("nakamigawa-2", gaps, [](Int p, Int k, Int q, Int l) -> std::optional<std::string> {
        if (nakamigawa_case2(p, k, q, l)) return pair_label(p, k, q, l);
        return std::nullopt;
    }));
    out.push_back(two_distance("nakamigawa-3", gaps, [](Int p, Int k, Int q, Int l) -> std::optional<std::string> {
        if (nakamigawa_case3(p, k, q, l)) return pair_label(p, k, q, l);
        return std::nullopt;
    }));
    out.push_back(two_distance("nakamigawa-representation", gaps,
                               [](Int p, Int k, Int q, Int l) -> std::optional<std::string> {
                                   if (auto a = representation_window(p, k, q, l)) {
                                       return pair_label(p, k, q, l) + " a=" + std::to_string(*a) + " window [" +
                                              std::to_string(*a * p) + ", " + std::to_string((*a + 1) * p) + "]";
                                   }
                                   return std::nullopt;
                               }));

    if (gaps.distinct() < 2) {
        out.push_back({"growth", ConditionStatus::NotApplicable, "needs two distinct distances"});
        return out;
    }
    if (split) {
        out.push_back(growth_conditions(gaps, *split, options));
        return out;
    }
    std::vector<SplitSpec> splits;
    try {
        splits = construct::auto_split(gaps);
    } catch (const TilingError& err) {
        out.push_back({"growth", ConditionStatus::NotSatisfied, err.what()});
        return out;
    }
    for (const auto& s : splits) out.push_back(growth_conditions(gaps, s, options));
    return out;
}

std::string to_json_string(const std::vector<ConditionResult>& results) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : results) {
        arr.push_back({{"name", r.name}, {"status", to_string(r.status)}, {"witness", r.witness}});
    }
    return arr.dump(2);
}

}  // namespace gaptile
