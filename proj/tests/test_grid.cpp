#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "gaptile/grid.hpp"
#include "gaptile/height_table.hpp"
#include "gaptile/json_io.hpp"
#include "gaptile/verify.hpp"
#include "naive_oracle.hpp"

using namespace gaptile;

namespace {

LatticePath corners(std::vector<Vec2> corners_list) {
    std::vector<Vec2> pts{corners_list.front()};
    for (std::size_t i = 1; i < corners_list.size(); ++i) {
        const Vec2 target = corners_list[i];
        while (pts.back() != target) {
            Vec2 p = pts.back();
            if (p.x < target.x) {
                ++p.x;
            } else {
                ++p.y;
            }
            pts.push_back(p);
        }
    }
    return LatticePath(std::move(pts));
}

bool contains_path(const RectangleTiling& r, const LatticePath& p) {
    return std::find(r.paths.begin(), r.paths.end(), p) != r.paths.end();
}

std::size_t count_steps(const LatticePath& p, Vec2 step) {
    const auto v = p.step_vectors();
    return static_cast<std::size_t>(std::count(v.begin(), v.end(), step));
}

}  // namespace

TEST_CASE("stair tiling follows the W_i formula") {
    for (Int k = 1; k <= 8; ++k) {
        for (Int l = 1; l <= 8; ++l) {
            const auto r = grid::stair_tiling(k, l);
            CHECK(r.width == k + l + 1);
            CHECK(r.height == l + 1);
            REQUIRE(r.paths.size() == static_cast<std::size_t>(l + 1));
            for (Int i = 0; i <= l; ++i) {
                const auto w = corners({{i, 0}, {i, l - i}, {k + i, l - i}, {k + i, l}});
                CHECK(contains_path(r, w));
                CHECK(r.paths[static_cast<std::size_t>(i)].front() == Vec2{i, 0});
            }
            CHECK(verify_rectangle_tiling(r).ok());
            // The path ending in the top right corner starts with k unit right steps.
            for (const auto& p : r.paths) {
                if (p.back() != Vec2{k + l, l}) continue;
                const auto steps = p.step_vectors();
                for (Int j = 0; j < k; ++j) CHECK(steps[static_cast<std::size_t>(j)] == kE1);
            }
        }
    }
    const auto small = grid::stair_tiling(1, 1);
    CHECK(contains_path(small, LatticePath({{0, 0}, {0, 1}, {1, 1}})));
    CHECK(contains_path(small, LatticePath({{1, 0}, {2, 0}, {2, 1}})));
}

TEST_CASE("diagonal stripe tiling of the 11 x 13 example") {
    const auto r = grid::diagonal_stripe_tiling(6, 2, 11);
    CHECK(r.width == 12);
    CHECK(r.height == 14);
    CHECK(r.window == 8);
    CHECK(verify_rectangle_tiling(r).ok());
    CHECK(contains_path(r, corners({{5, 0}, {11, 0}, {11, 2}})));
    CHECK(contains_path(r, corners({{0, 11}, {0, 13}, {6, 13}})));
    CHECK_THROWS_AS(grid::diagonal_stripe_tiling(6, 2, 6), TilingError);
    CHECK_THROWS_AS(grid::diagonal_stripe_tiling(6, 2, 12), TilingError);
}

TEST_CASE("diagonal stripe path length bounds") {
    for (Int n = 2; n <= 8; ++n) {
        for (Int kv = 1; kv <= 4; ++kv) {
            for (Int m = n + 1; m < 2 * n; ++m) {
                const auto r = grid::diagonal_stripe_tiling(n, kv, m);
                CAPTURE(n);
                CAPTURE(kv);
                CAPTURE(m);
                REQUIRE(verify_rectangle_tiling(r).ok());
                const auto p = corners({{m - n, 0}, {m, 0}, {m, kv}});
                const auto q = corners({{0, m}, {0, m + kv}, {n, m + kv}});
                CHECK(contains_path(r, p));
                CHECK(contains_path(r, q));
                for (const auto& path : r.paths) {
                    const auto steps = static_cast<Int>(path.steps());
                    CHECK(steps <= m + 2 * kv);
                    if (path != p && path != q) CHECK(steps > n + kv);
                    if (path.back() == Vec2{m, m + kv}) CHECK(steps > n + kv);
                    // Every window of n+kv steps has kv vertical steps.
                    const auto v = path.step_vectors();
                    for (std::size_t off = 0; off + static_cast<std::size_t>(n + kv) <= v.size(); ++off) {
                        const auto ups = std::count(v.begin() + static_cast<std::ptrdiff_t>(off),
                                                    v.begin() + static_cast<std::ptrdiff_t>(off + n + kv), kE2);
                        CHECK(ups == kv);
                    }
                }
            }
        }
    }
}

TEST_CASE("lift over points") {
    RectangleTiling r;
    r.width = 4;
    r.height = 1;
    r.step_type = StepType::unit(3, 0);
    r.paths = {LatticePath({{0, 0}, {1, 0}, {2, 0}, {3, 0}})};
    const std::vector<Int> xs{0, 1, 3, 7};
    const auto lifted = grid::lift_over_points(r, xs);
    REQUIRE(lifted.paths.size() == 1);
    const auto steps = lifted.paths[0].step_vectors();
    CHECK(steps == std::vector<Vec2>{{1, 0}, {2, 0}, {4, 0}});

    const std::vector<Int> identity{0, 1, 2, 3};
    const auto same = grid::lift_over_points(r, identity);
    CHECK(same.paths == r.paths);

    const std::vector<Int> short_xs{0, 1};
    CHECK_THROWS_AS(grid::lift_over_points(r, short_xs), TilingError);

    // Projecting a lifted path onto the x axis gives consecutive support entries.
    const auto stair = grid::stair_tiling(2, 3);
    const std::vector<Int> support{0, 2, 3, 7, 8, 20};
    const auto big = grid::lift_over_points(stair, support);
    CHECK(big.paths.size() == stair.paths.size());
    for (std::size_t i = 0; i < big.paths.size(); ++i) {
        CHECK(big.paths[i].size() == stair.paths[i].size());
        std::vector<Int> xs_seen;
        for (const auto& p : big.paths[i].points()) {
            if (xs_seen.empty() || xs_seen.back() != p.x) xs_seen.push_back(p.x);
        }
        const auto first = std::find(support.begin(), support.end(), xs_seen.front());
        REQUIRE(first != support.end());
        CHECK(std::equal(xs_seen.begin(), xs_seen.end(), first));
    }
}

TEST_CASE("dilation") {
    const auto r = grid::stair_tiling(1, 1);
    const auto same = grid::dilate_x(r, 1, 0);
    CHECK(same.paths == r.paths);
    const auto narrow = grid::stair_tiling(1, 1);
    RectangleTiling two;
    two.width = 2;
    two.height = 1;
    two.step_type = StepType::unit(1, 0);
    two.paths = {LatticePath({{0, 0}, {1, 0}})};
    const auto d = grid::dilate_x(two, 3, 1);
    CHECK(d.support == std::vector<Int>{1, 4});
    CHECK_THROWS_AS(grid::dilate_x(two, 3, 3), TilingError);
    const auto wide = grid::dilate_x(narrow, 5, 2);
    for (std::size_t i = 0; i < wide.paths.size(); ++i) {
        CHECK(count_steps(wide.paths[i], {5, 0}) == count_steps(narrow.paths[i], kE1));
        CHECK(count_steps(wide.paths[i], kE2) == count_steps(narrow.paths[i], kE2));
    }
}

TEST_CASE("stacking and concatenation") {
    const auto base = grid::min_height_rect(1, 1, 2).witness;
    REQUIRE(base.height == 3);
    CHECK(grid::stack_to_height(base, 3) == base);
    const auto six = grid::stack_to_height(grid::ColumnTiling{base, 3}, 6);
    CHECK(six.height == 6);
    CHECK(six.paths.size() == 2 * base.paths.size());
    CHECK(verify_rectangle_tiling(six).ok());
    CHECK_THROWS_AS(grid::stack_to_height(base, 4), TilingError);

    const std::vector<RectangleTiling> one{base};
    CHECK(grid::concat_columns(one) == base);
    const auto three = grid::min_height_rect(1, 1, 3).witness;  // 3 x 2
    const std::vector<RectangleTiling> pair{grid::stack_to_height(base, 6), grid::stack_to_height(three, 6)};
    const auto joined = grid::concat_columns(pair);
    CHECK(joined.width == 5);
    CHECK(verify_rectangle_tiling(joined).ok());
    const std::vector<RectangleTiling> mixed{base, three};
    CHECK_THROWS_AS(grid::concat_columns(mixed), TilingError);
}

TEST_CASE("residue interleave") {
    const auto narrow_unit = grid::min_height_rect(1, 1, 2).witness;  // width 2, height 3
    const auto wide_unit = grid::min_height_rect(1, 1, 3).witness;    // width 3, height 2
    const auto narrow = grid::stack_to_height(narrow_unit, 6);
    const auto wide = grid::stack_to_height(wide_unit, 6);
    const auto one = grid::residue_interleave(wide, narrow, 1, 0);
    CHECK(one.width == 2);
    CHECK(verify_rectangle_tiling(one).ok());
    for (Int d1 = 2; d1 <= 5; ++d1) {
        for (Int t = 0; t < d1; ++t) {
            const auto r = grid::residue_interleave(wide, narrow, d1, t);
            CHECK(r.width == 2 * d1 + t);
            CHECK(verify_rectangle_tiling(r).ok());
            std::vector<bool> used(static_cast<std::size_t>(r.width), false);
            for (const auto& p : r.paths) {
                for (const auto& q : p.points()) used[static_cast<std::size_t>(q.x)] = true;
            }
            CHECK(std::all_of(used.begin(), used.end(), [](bool b) { return b; }));
        }
    }
    CHECK_THROWS_AS(grid::residue_interleave(wide, narrow, 2, 2), TilingError);
    CHECK_THROWS_AS(grid::residue_interleave(wide_unit, narrow, 2, 1), TilingError);
}

TEST_CASE("flattening") {
    const auto stair = grid::stair_tiling(1, 1);
    const auto flat = grid::flatten(stair, 3);
    CHECK(flat.length == 6);
    REQUIRE(flat.tiles.size() == 2);
    CHECK(flat.tiles[0].points() == std::vector<Int>{0, 3, 4});
    CHECK(flat.tiles[1].points() == std::vector<Int>{1, 2, 5});
    REQUIRE(flat.gap_set.has_value());
    CHECK(*flat.gap_set == GapSet({{1, 1}, {3, 1}}));
    CHECK(verify_interval_tiling(flat, *flat.gap_set).ok());
    CHECK(grid::unflatten(flat, 3).paths.size() == 2);
    const auto back = grid::flatten(grid::unflatten(flat, 3), 3);
    CHECK(back.length == flat.length);
    CHECK(back.tiles == flat.tiles);
    CHECK_THROWS_AS(grid::flatten(stair, 4), TilingError);

    for (Int k = 1; k <= 4; ++k) {
        for (Int l = 1; l <= 4; ++l) {
            const auto r = grid::stair_tiling(k, l);
            const auto f = grid::flatten(r, r.width);
            CHECK(f.tiles.size() == r.paths.size());
            CHECK(verify_interval_tiling(f, *f.gap_set).ok());
            // The top right cell maps to the last point.
            bool last = false;
            for (const auto& t : f.tiles) last = last || t.back() == f.length - 1;
            CHECK(last);
        }
    }
}

TEST_CASE("flatten_columns equals flatten of the concatenation") {
    const auto a = grid::stack_to_height(grid::min_height_rect(1, 1, 2).witness, 6);
    const auto b = grid::stack_to_height(grid::min_height_rect(1, 1, 3).witness, 6);
    const std::vector<grid::ColumnRun> runs{{&a, 2}, {&b, 1}};
    const std::vector<RectangleTiling> blocks{a, a, b};
    CHECK(grid::flatten_columns(runs) == grid::flatten(grid::concat_columns(blocks), 7));
}

TEST_CASE("minimal rectangle heights for small k + l") {
    grid::HeightTable table;
    const auto f112 = grid::min_height_rect(1, 1, 2, table);
    CHECK(f112.f == 3);
    CHECK(f112.proven_minimal);
    CHECK_THROWS_AS(grid::min_height_rect(1, 1, 4, table), TilingError);
    CHECK_THROWS_AS(grid::min_height_rect(2, 1, 2, table), TilingError);
    for (Int k = 1; k <= 5; ++k) {
        for (Int l = 1; k + l <= 6; ++l) {
            for (Int m = k + 1; m <= k + l + 1; ++m) {
                CAPTURE(k);
                CAPTURE(l);
                CAPTURE(m);
                const auto e = grid::min_height_rect(k, l, m, table);
                CHECK((m * e.f) % (k + l + 1) == 0);
                CHECK(e.witness.width == m);
                CHECK(e.witness.height == e.f);
                CHECK(e.witness.step_type == StepType::unit(k, l));
                CHECK(verify_rectangle_tiling(e.witness).ok());
                if (m == k + l + 1) CHECK(e.f == l + 1);
                // No smaller admissible height tiles, by an independent search.
                for (Int f = 1; f < e.f; ++f) {
                    if ((m * f) % (k + l + 1) != 0 || m * f > 256) continue;
                    CHECK_FALSE(naive::rectangle_tileable(k, l, m, f));
                }
                if (m * e.f <= 256) CHECK(naive::rectangle_tileable(k, l, m, e.f));
            }
        }
    }
}

TEST_CASE("height table persists and reloads") {
    const auto dir = std::filesystem::temp_directory_path() / "gaptile_height_table_test";
    std::filesystem::remove_all(dir);
    {
        grid::HeightTable table(dir);
        CHECK(grid::min_height_rect(1, 2, 3, table).f == 8);
        CHECK(std::filesystem::exists(dir / grid::HeightTable::kIndexFile));
    }
    {
        grid::HeightTable table(dir);
        CHECK(table.size() == 1);
        const auto hit = table.lookup(1, 2, 3);
        REQUIRE(hit.has_value());
        CHECK(hit->f == 8);
        CHECK(verify_rectangle_tiling(hit->witness).ok());
    }
    // A corrupted witness is dropped on load.
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
        if (entry.path().filename().string().rfind("witness_", 0) == 0) {
            write_text_file_atomic(entry.path(), R"({"kind":"rectangle","width":3,"height":8,"step_type":[],"paths":[]})");
        }
    }
    {
        grid::HeightTable table(dir);
        CHECK(table.size() == 0);
    }
    std::filesystem::remove_all(dir);
}
