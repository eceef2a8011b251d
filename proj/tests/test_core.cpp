#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "gaptile/conditions.hpp"
#include "gaptile/grid.hpp"
#include "gaptile/json_io.hpp"
#include "gaptile/verify.hpp"

using namespace gaptile;

namespace {

IntervalTiling interval(Int n, std::vector<std::vector<Int>> tiles) {
    IntervalTiling t;
    t.length = n;
    for (auto& pts : tiles) t.tiles.emplace_back(std::move(pts));
    return t;
}

bool has_kind(const VerificationReport& r, ViolationKind kind, std::vector<Int> location) {
    for (const auto& v : r.violations()) {
        if (v.kind == kind && v.location == location) return true;
    }
    return false;
}

}  // namespace

TEST_CASE("gap multiset of a tile") {
    CHECK(gap_multiset(Tile({0, 1, 3})) == GapSet({{1, 1}, {2, 1}}));
    CHECK(gap_multiset(Tile({0, 2, 3, 5})) == GapSet({{1, 1}, {2, 2}}));
    CHECK(gap_multiset(Tile({0, 1, 3, 7})) == GapSet({{1, 1}, {2, 1}, {4, 1}}));
}

TEST_CASE("gap set normalization") {
    const GapSet g({{9, 1}, {1, 2}, {9, 3}});
    REQUIRE(g.distinct() == 2);
    CHECK(g.entries()[0] == GapEntry{1, 2});
    CHECK(g.entries()[1] == GapEntry{9, 4});
    CHECK(g.size() == 6);
    CHECK(g.points_per_tile() == 7);
    CHECK(g.multiplicity_of(9) == 4);
    CHECK(g.multiplicity_of(5) == 0);
    CHECK(g.expanded() == std::vector<Int>{1, 1, 9, 9, 9, 9});
    CHECK(g.with(100, 2).size() == 8);
    CHECK_THROWS_AS(GapSet({{0, 1}}), TilingError);
    CHECK_THROWS_AS(GapSet({{2, 0}}), TilingError);
}

TEST_CASE("tile validation") {
    CHECK_THROWS_AS(Tile({3}), TilingError);
    CHECK_THROWS_AS(Tile({0, 2, 2}), TilingError);
    CHECK_THROWS_AS(Tile({3, 1}), TilingError);
    // Sum of multiplicities is one less than the point count.
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Int> pts{static_cast<Int>(rng() % 10)};
        const auto n = 2 + rng() % 6;
        while (pts.size() < n) pts.push_back(pts.back() + 1 + static_cast<Int>(rng() % 5));
        const Tile t(pts);
        CHECK(gap_multiset(t).size() == static_cast<Int>(t.size()) - 1);
    }
}

TEST_CASE("lattice path validation") {
    CHECK_NOTHROW(LatticePath({{0, 0}, {1, 0}, {1, 2}}));
    CHECK_THROWS_AS(LatticePath({{0, 0}, {0, 0}}), TilingError);
    CHECK_THROWS_AS(LatticePath({{1, 0}, {0, 1}}), TilingError);
}

TEST_CASE("interval verifier") {
    const GapSet t12({{1, 1}, {2, 1}});
    CHECK(verify_interval_tiling(interval(6, {{0, 1, 3}, {2, 4, 5}}), t12).ok());

    const auto overlap = verify_partition(interval(4, {{0, 1}, {1, 2, 3}}).tiles, 4);
    CHECK_FALSE(overlap.ok());
    CHECK(has_kind(overlap, ViolationKind::Overlap, {1}));

    const auto mismatch = verify_interval_tiling(interval(3, {{0, 1, 2}}), t12);
    CHECK(has_kind(mismatch, ViolationKind::GapMismatch, {0}));

    const auto hole = verify_partition(interval(4, {{0, 1}, {3, 4}}).tiles, 4);
    CHECK(has_kind(hole, ViolationKind::Hole, {2}));
    CHECK(has_kind(hole, ViolationKind::OutOfRange, {4}));

    // Unsorted input gives the same verdict.
    CHECK(verify_interval_tiling(interval(6, {{2, 4, 5}, {0, 1, 3}}), t12).ok());
}

TEST_CASE("verifier report cap keeps the true verdict") {
    IntervalTiling t = interval(200, {});
    for (Int i = 0; i < 100; ++i) t.tiles.emplace_back(std::vector<Int>{2 * i, 2 * i + 2});
    const auto r = verify_partition(t.tiles, 200, 5);
    CHECK_FALSE(r.ok());
    CHECK(r.violations().size() == 5);
    CHECK(r.total() > 5);
}

TEST_CASE("boundary prefix verifier") {
    const auto bad = verify_boundary_prefix(interval(6, {{0, 2, 3}, {1, 4, 5}}), 1, 1);
    CHECK_FALSE(bad.ok());
    CHECK(has_kind(bad, ViolationKind::BoundaryPrefixViolation, {1, 0}));
    CHECK(verify_boundary_prefix(interval(6, {{0, 2, 3}, {1, 4, 5}}), 1, 0).ok());
    CHECK(verify_boundary_prefix(interval(6, {{0, 2, 3}, {1, 4, 5}}), 2, 0).ok());
}

TEST_CASE("homogeneous verifier") {
    const GapSet t12({{1, 1}, {2, 1}});
    const auto short_seq = verify_homogeneous(interval(6, {{0, 1, 3, 4}, {2, 5}}).tiles, 6, t12);
    CHECK(has_kind(short_seq, ViolationKind::ShortSequence, {1}));
    auto ok_seq = std::vector<Tile>{Tile({0, 1, 3, 4})};
    auto r = verify_homogeneous(ok_seq, 5, t12);
    CHECK(has_kind(r, ViolationKind::Hole, {2}));
    for (const auto& v : r.violations()) CHECK(v.kind != ViolationKind::WindowMismatch);

    auto bad_seq = std::vector<Tile>{Tile({0, 1, 3, 5})};
    CHECK(has_kind(verify_homogeneous(bad_seq, 6, t12), ViolationKind::WindowMismatch, {0, 1}));

    // A sequence of |T|+1 points is homogeneous exactly when it is a tile.
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Int> pts{0};
        for (int i = 0; i < 3; ++i) pts.push_back(pts.back() + 1 + static_cast<Int>(rng() % 3));
        const GapSet target({{1, 1}, {2, 1}, {3, 1}});
        const std::vector<Tile> seqs{Tile(pts)};
        const auto hom = verify_homogeneous(seqs, pts.back() + 1, target);
        const bool window_ok = std::none_of(hom.violations().begin(), hom.violations().end(), [](const Violation& v) {
            return v.kind == ViolationKind::WindowMismatch || v.kind == ViolationKind::ShortSequence;
        });
        CHECK(window_ok == (gap_multiset(seqs[0]) == target));
    }
}

TEST_CASE("rectangle verifier") {
    RectangleTiling r;
    r.width = 2;
    r.height = 1;
    r.step_type = StepType::unit(1, 0);
    r.paths.emplace_back(std::vector<Vec2>{{0, 0}, {1, 0}});
    CHECK(verify_rectangle_tiling(r).ok());

    RectangleTiling missing = r;
    missing.paths = {LatticePath({{0, 0}})};
    missing.step_type = StepType{};
    CHECK(has_kind(verify_rectangle_tiling(missing), ViolationKind::Hole, {1, 0}));

    RectangleTiling wrong = r;
    wrong.step_type = StepType::unit(0, 1);
    CHECK(has_kind(verify_rectangle_tiling(wrong), ViolationKind::TypeMismatch, {0}));

    CHECK(verify_rectangle_tiling(grid::stair_tiling(3, 4)).ok());
}

TEST_CASE("windowed check with the full step count matches the uniform check") {
    // Random small tilings whose paths all have exactly `window` steps, plus
    // mislabeled variants that must fail both ways.
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 100; ++trial) {
        const Int k = 1 + static_cast<Int>(rng() % 3);
        const Int l = 1 + static_cast<Int>(rng() % 3);
        RectangleTiling base = grid::stair_tiling(k, l);
        if (rng() % 2) base.step_type = StepType::unit(l, k);  // wrong type half the time
        RectangleTiling windowed = base;
        windowed.window = k + l;
        CHECK(verify_rectangle_tiling(base).ok() == verify_rectangle_tiling(windowed).ok());
    }
}

TEST_CASE("verifiers are pure") {
    const auto t = interval(6, {{0, 2, 3}, {1, 4, 5}});
    const GapSet g({{1, 1}, {2, 1}});
    CHECK(to_json_string(verify_interval_tiling(t, g)) == to_json_string(verify_interval_tiling(t, g)));
    const auto r = grid::stair_tiling(2, 3);
    CHECK(verify_rectangle_tiling(r) == verify_rectangle_tiling(r));
}

TEST_CASE("json round trip") {
    const auto r = grid::stair_tiling(3, 4);
    const auto doc = parse_tiling(to_json_string(r));
    REQUIRE(std::holds_alternative<RectangleTiling>(doc));
    CHECK(std::get<RectangleTiling>(doc) == r);

    auto t = interval(6, {{0, 1, 3}, {2, 4, 5}});
    t.gap_set = GapSet({{1, 1}, {2, 1}});
    t.annotations.boundary_prefix_count = 1;
    const auto doc2 = parse_tiling(to_json_string(t));
    REQUIRE(std::holds_alternative<IntervalTiling>(doc2));
    CHECK(std::get<IntervalTiling>(doc2) == t);

    const auto lifted = grid::dilate_x(grid::stair_tiling(1, 1), 3, 1);
    const auto doc3 = parse_tiling(to_json_string(lifted));
    REQUIRE(std::holds_alternative<LiftedTiling>(doc3));
    CHECK(std::get<LiftedTiling>(doc3) == lifted);

    CHECK_THROWS_AS(parse_tiling("{}"), TilingError);
    CHECK_THROWS_AS(parse_tiling("not json"), TilingError);
    CHECK_THROWS_AS(parse_tiling(R"({"kind":"interval","length":3,"tiles":[[2,1]]})"), TilingError);
}

TEST_CASE("gap list syntax") {
    const auto e = parse_gap_list("1:1,9:2");
    REQUIRE(e.size() == 2);
    CHECK(e[1] == GapEntry{9, 2});
    CHECK(format_gap_list(GapSet(e)) == "1:1,9:2");
    CHECK(parse_gap_list("3:1,3:1").size() == 2);
    CHECK_THROWS_AS(parse_gap_list("1-1"), TilingError);
    CHECK_THROWS_AS(parse_gap_list("0:1"), TilingError);
    CHECK_THROWS_AS(parse_gap_list(""), TilingError);
}

TEST_CASE("checked arithmetic") {
    CHECK(lcm_checked(4, 6) == 12);
    CHECK_THROWS_AS(checked_mul(INT64_MAX / 2, 3), TilingError);
    CHECK_THROWS_AS(checked_add(INT64_MAX, 1), TilingError);
}

TEST_CASE("cjk predicate") {
    CHECK(cjk_holds(1, 1, 63));
    CHECK_FALSE(cjk_holds(1, 2, 63));
    CHECK(cjk_holds(1, 2, 252));
    for (Int p = 1; p <= 4; ++p) {
        for (Int q = 1; q <= 4; ++q) {
            for (Int r = 1; r <= 1100; r += 7) {
                const Int m = std::max(p, q);
                CHECK(cjk_holds(p, q, r) == (r >= 63 * m * m));
            }
        }
    }
    const auto res = check_sufficient_conditions(GapSet({{1, 2}, {63, 1}}));
    CHECK(res[0].name == "cjk");
    CHECK(res[0].status == ConditionStatus::Satisfied);
    const auto res2 = check_sufficient_conditions(GapSet({{1, 1}, {2, 1}, {63, 1}}));
    CHECK(res2[0].status == ConditionStatus::NotSatisfied);
    const auto res3 = check_sufficient_conditions(GapSet({{1, 1}, {2, 1}}));
    CHECK(res3[0].status == ConditionStatus::NotApplicable);
}

TEST_CASE("two-distance conditions") {
    for (Int p = 1; p <= 6; ++p) {
        for (Int q = 1; q <= 6; ++q) {
            for (Int l = 1; l <= 4; ++l) {
                CHECK(nakamigawa_case1(p, 1, q, l));
                if (p == q) continue;
                const auto res = check_sufficient_conditions(GapSet({{p, 1}, {q, l}}));
                CHECK(res[1].status == ConditionStatus::Satisfied);
            }
        }
    }
    CHECK(nakamigawa_case2(1, 2, 6, 1));
    CHECK_FALSE(nakamigawa_case2(1, 2, 5, 1));
    CHECK(nakamigawa_case3(1, 2, 3, 2));
    CHECK_FALSE(nakamigawa_case3(1, 3, 4, 2));
    const auto none = check_sufficient_conditions(GapSet({{1, 1}, {2, 1}, {5, 1}}));
    CHECK(none[1].status == ConditionStatus::NotApplicable);
}

TEST_CASE("representation window") {
    // Independent scan over c1*2 + c2*3.
    auto scan = [](Int v) {
        for (Int c1 = 0; 2 * c1 <= v; ++c1) {
            if ((v - 2 * c1) % 3 == 0) return true;
        }
        return false;
    };
    const auto ok = representable_sums(1, 1, 50);
    for (Int v = 0; v <= 50; ++v) CHECK(ok[static_cast<std::size_t>(v)] == scan(v));
    const auto adm = admissible_a(1, 1, 10);
    CHECK(std::find(adm.begin(), adm.end(), 2) != adm.end());
    CHECK(std::find(adm.begin(), adm.end(), 1) == adm.end());
    REQUIRE(representation_window(1, 1, 2, 1).has_value());
    CHECK(*representation_window(1, 1, 2, 1) == 2);
    CHECK(representation_window(5, 1, 11, 1).has_value());   // 2*5 <= 11 <= 15
    CHECK_FALSE(representation_window(5, 1, 7, 1).has_value());  // only a = 1 fits
}

TEST_CASE("growth condition needs a split that fits") {
    const auto res = check_sufficient_conditions(GapSet({{1, 1}, {9, 1}}), SplitSpec{2, 0});
    CHECK(res.back().status == ConditionStatus::Satisfied);
    const auto low = check_sufficient_conditions(GapSet({{1, 1}, {8, 1}}), SplitSpec{2, 0});
    CHECK(low.back().status == ConditionStatus::NotSatisfied);
    const auto three = check_sufficient_conditions(GapSet({{1, 1}, {9, 1}, {2970, 1}}));
    CHECK(three.back().name == "growth s=2 p=1");
    CHECK(three.back().status == ConditionStatus::Satisfied);
    const auto short3 = check_sufficient_conditions(GapSet({{1, 1}, {9, 1}, {2969, 1}}));
    CHECK(short3.back().status == ConditionStatus::NotSatisfied);
}
