#include "gaptile/cli/app.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#include "gaptile/cli/catalog.hpp"
#include "gaptile/cli/render.hpp"
#include "gaptile/conditions.hpp"
#include "gaptile/construct.hpp"
#include "gaptile/grid.hpp"
#include "gaptile/height_table.hpp"
#include "gaptile/json_io.hpp"
#include "gaptile/oracle.hpp"
#include "gaptile/verify.hpp"

namespace gaptile::cli {
namespace fs = std::filesystem;

namespace {

GapSet parse_gaps(const std::string& text) {
    auto entries = parse_gap_list(text);
    for (std::size_t i = 0; i < entries.size(); ++i) {
        for (std::size_t j = i + 1; j < entries.size(); ++j) {
            if (entries[i].distance == entries[j].distance) {
                throw TilingError(ErrorKind::InvalidInput,
                                  "distance " + std::to_string(entries[i].distance) + " appears twice");
            }
        }
    }
    return GapSet(std::move(entries));
}

SplitSpec parse_split(const std::string& text) {
    const auto comma = text.find(',');
    if (comma == std::string::npos) throw TilingError(ErrorKind::InvalidInput, "split must be written s,p");
    try {
        return {std::stoi(text.substr(0, comma)), std::stoi(text.substr(comma + 1))};
    } catch (const std::exception&) {
        throw TilingError(ErrorKind::InvalidInput, "split must be written s,p");
    }
}

int exit_code_for(const TilingError& e) {
    if (e.is_hypothesis_violation()) return kExitHypothesis;
    switch (e.kind()) {
        case ErrorKind::VerificationFailed: return kExitVerification;
        case ErrorKind::SearchExhausted: return kExitNotFound;
        case ErrorKind::NoRepresentation:
        case ErrorKind::RangeError:
        case ErrorKind::PreconditionError: return kExitHypothesis;
        default: return kExitIo;
    }
}

std::string describe(const TilingError& e) {
    std::string msg = e.what();
    if (!e.stage().empty() && msg.rfind(e.stage(), 0) != 0) msg = e.stage() + ": " + msg;
    return msg;
}

void write_file(const fs::path& path, const std::string& content) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    write_text_file_atomic(path, content);
}

void print_report(std::ostream& out, const std::string& what, const VerificationReport& report) {
    out << what << ": " << (report.ok() ? "ok" : report.summary()) << '\n';
}

std::unique_ptr<grid::HeightTable> open_table(const std::string& cache_dir) {
    if (cache_dir.empty()) return nullptr;
    return std::make_unique<grid::HeightTable>(fs::path(cache_dir));
}

// ---------------------------------------------------------------------------

struct ConstructArgs {
    std::string gaps;
    std::string split;
    std::string out_dir = ".";
    bool thresholds_only = false;
    Int next_multiplicity = 1;
    bool save_stages = false;
    std::string cache_dir;
};

void print_thresholds(std::ostream& out, const std::string& heading, const construct::ThresholdReport& report) {
    out << heading << '\n';
    for (const auto& e : report.entries) {
        out << "  " << e.stage << ": required d >= " << e.required;
        if (e.achieved) {
            out << ", have " << *e.achieved << (e.satisfied() ? "" : " (too small)");
        } else {
            out << " [next]";
        }
        out << "  (" << e.rule << ")\n";
    }
}

int cmd_construct(const ConstructArgs& a, std::ostream& out) {
    const auto gaps = parse_gaps(a.gaps);
    auto table = open_table(a.cache_dir);
    construct::Options options;
    options.table = table.get();

    if (a.thresholds_only) {
        const int m = static_cast<int>(gaps.distinct());
        std::vector<SplitSpec> splits;
        if (!a.split.empty()) {
            splits.push_back(parse_split(a.split));
        } else {
            // Both ways to continue with one more distance.
            splits.push_back({m + 1, 0});
            splits.push_back({m, 1});
        }
        for (const auto& s : splits) {
            const auto report = construct::thresholds(gaps, s, a.next_multiplicity, options);
            std::ostringstream heading;
            heading << "split s=" << s.s << " p=" << s.p << " (next multiplicity " << a.next_multiplicity << ")";
            print_thresholds(out, heading.str(), report);
        }
        return kExitOk;
    }

    const SplitSpec split = a.split.empty() ? construct::auto_split(gaps).front() : parse_split(a.split);
    const fs::path dir(a.out_dir);
    if (a.save_stages) {
        options.on_stage = [&](const std::string& stage, const IntervalTiling& t) {
            std::string name = stage;
            for (auto& c : name) {
                if (c == ' ') c = '_';
            }
            write_file(dir / (name + ".json"), to_json_string(t));
        };
    }
    const auto result = construct::construct(gaps, split, options);
    write_file(dir / "tiling.json", to_json_string(result.tiling));
    write_file(dir / "trace.json", construct::to_json_string(result.trace));
    write_file(dir / "thresholds.json", construct::to_json_string(result.thresholds));

    const auto report = verify_interval_tiling(result.tiling, gaps);
    out << "split s=" << split.s << " p=" << split.p << (result.boundary_only ? " (lemma1-only)" : "") << '\n';
    out << "length " << result.tiling.length << '\n';
    out << "tiles " << result.tiling.tiles.size() << '\n';
    print_report(out, "verification", report);
    return report.ok() ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------------------

struct SearchArgs {
    std::string gaps;
    Int length = 0;
    Int max_length = 0;
    std::string out;
    std::uint64_t max_nodes = 200'000'000;
    unsigned threads = 0;
};

void print_tiles(std::ostream& out, const IntervalTiling& t) {
    for (const auto& tile : t.tiles) {
        out << '(';
        for (std::size_t i = 0; i < tile.size(); ++i) out << (i ? "," : "") << tile[i];
        out << ")\n";
    }
}

int cmd_solve(const SearchArgs& a, std::ostream& out) {
    const auto gaps = parse_gaps(a.gaps);
    oracle::SearchConfig cfg;
    cfg.max_nodes = a.max_nodes;
    cfg.parallel_width = a.threads;
    const auto res = oracle::solve_interval(gaps, a.length, cfg);
    out << oracle::to_string(res.status) << " nodes=" << res.nodes_explored << '\n';
    if (res.status != oracle::SearchStatus::Found) return kExitNotFound;
    print_tiles(out, res.witnesses.front());
    if (!a.out.empty()) write_file(a.out, to_json_string(res.witnesses.front()));
    return kExitOk;
}

int cmd_minlen(const SearchArgs& a, std::ostream& out) {
    const auto gaps = parse_gaps(a.gaps);
    oracle::SearchConfig cfg;
    cfg.max_nodes = a.max_nodes;
    cfg.parallel_width = a.threads;
    const auto res = oracle::min_interval(gaps, a.max_length, cfg);
    if (res.status != oracle::MinIntervalStatus::Found) {
        out << "not found up to " << a.max_length << (res.exhaustive ? "" : " (budget hit)") << '\n';
        return kExitNotFound;
    }
    out << res.length << '\n';
    if (!res.exhaustive) out << "note: a shorter length hit the node budget\n";
    if (!a.out.empty()) write_file(a.out, to_json_string(*res.witness));
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct VerifyArgs {
    std::string file;
    std::string boundary;
    bool homogeneous = false;
    std::string gaps;
    bool json = false;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out) {
    const auto doc = read_tiling_file(a.file);
    VerificationReport total;
    auto add = [&](const std::string& what, const VerificationReport& r) {
        if (a.json) {
            out << "{\"check\":\"" << what << "\",\"report\":" << to_json_string(r) << "}\n";
        } else {
            print_report(out, what, r);
        }
        total.merge(r);
    };

    if (const auto* t = std::get_if<IntervalTiling>(&doc)) {
        std::optional<GapSet> gaps = t->gap_set;
        if (!a.gaps.empty()) gaps = parse_gaps(a.gaps);
        const auto homogeneous_for = gaps ? gaps : t->annotations.homogeneous_for;
        const bool homogeneous = a.homogeneous || (!t->gap_set && t->annotations.homogeneous_for);
        if (homogeneous) {
            if (!homogeneous_for) throw TilingError(ErrorKind::InvalidInput, "no gap set to check homogeneity");
            add("homogeneous", verify_homogeneous(t->tiles, t->length, *homogeneous_for));
        } else if (gaps) {
            add("interval", verify_interval_tiling(*t, *gaps));
        } else {
            add("partition", verify_partition(t->tiles, t->length));
        }
        if (!a.boundary.empty()) {
            const auto comma = a.boundary.find(',');
            if (comma == std::string::npos) throw TilingError(ErrorKind::InvalidInput, "--boundary takes d1,count");
            const Int d1 = std::stoll(a.boundary.substr(0, comma));
            const Int count = std::stoll(a.boundary.substr(comma + 1));
            add("boundary", verify_boundary_prefix(*t, d1, count));
        }
    } else if (const auto* r = std::get_if<RectangleTiling>(&doc)) {
        add("rectangle", verify_rectangle_tiling(*r));
    } else {
        add("lifted", verify_lifted_tiling(std::get<LiftedTiling>(doc)));
    }
    return total.ok() ? kExitOk : kExitVerification;
}

// ---------------------------------------------------------------------------

struct RenderArgs {
    std::string file;
    std::string format = "svg";
    std::string out;
    int cell = 24;
    std::uint64_t seed = 1;
    Int window = 200;
};

int cmd_render(const RenderArgs& a, std::ostream& out) {
    const auto doc = read_tiling_file(a.file);
    RenderSpec spec;
    spec.target = a.format == "ascii" ? RenderTarget::Ascii : RenderTarget::Svg;
    spec.cell = a.cell;
    spec.seed = a.seed;
    spec.window = a.window;
    const auto text = render(doc, spec);
    if (a.out.empty()) {
        out << text;
    } else {
        write_file(a.out, text);
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct CatalogArgs {
    CatalogConfig cfg;
    std::string out = "catalog.jsonl";
    std::size_t stop_after = 0;
};

int cmd_catalog(const CatalogArgs& a, std::ostream& out, std::ostream& err) {
    const auto summary = run_catalog(a.cfg, a.out, err,
                                     a.stop_after ? std::optional<std::size_t>(a.stop_after) : std::nullopt);
    out << "records " << summary.resumed_from + summary.written << " of " << summary.total << " (resumed "
        << summary.resumed_from << ", wrote " << summary.written << ")\n";
    if (!summary.not_found.empty()) {
        out << "NOT FOUND within length " << a.cfg.max_length << ": " << summary.not_found.size() << " gap sets\n";
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct FvalueArgs {
    Int k = 1;
    Int l = 1;
    Int m = 0;
    std::string out;
    std::string cache_dir;
    Int max_height = 400;
};

int cmd_fvalue(const FvalueArgs& a, std::ostream& out) {
    auto table = open_table(a.cache_dir);
    auto& t = table ? *table : grid::HeightTable::shared();
    grid::MinHeightOptions options;
    options.max_height = a.max_height;
    const Int lo = a.m ? a.m : a.k + 1;
    const Int hi = a.m ? a.m : a.k + a.l + 1;
    for (Int m = lo; m <= hi; ++m) {
        const auto e = grid::min_height_rect(a.k, a.l, m, t, options);
        out << "f(" << a.k << "," << a.l << "," << m << ") = " << e.f << (e.proven_minimal ? "" : " (not proven minimal)")
            << '\n';
        if (!a.out.empty() && a.m) write_file(a.out, to_json_string(e.witness));
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct ShapeArgs {
    std::string kind;
    Int k = 1;
    Int l = 1;
    Int n = 0;
    Int kv = 0;
    Int m = 0;
    std::string out;
};

int cmd_shape(const ShapeArgs& a, std::ostream& out) {
    RectangleTiling r;
    if (a.kind == "stair") {
        r = grid::stair_tiling(a.k, a.l);
    } else if (a.kind == "stripe") {
        r = grid::diagonal_stripe_tiling(a.n, a.kv, a.m);
    } else {
        throw TilingError(ErrorKind::InvalidInput, "unknown shape " + a.kind);
    }
    print_report(out, "rectangle " + std::to_string(r.width) + "x" + std::to_string(r.height),
                 verify_rectangle_tiling(r));
    if (a.out.empty()) {
        out << to_json_string(r) << '\n';
    } else {
        write_file(a.out, to_json_string(r));
    }
    return kExitOk;
}

// ---------------------------------------------------------------------------

struct ConditionsArgs {
    std::string gaps;
    std::string split;
    std::string cache_dir;
};

int cmd_conditions(const ConditionsArgs& a, std::ostream& out) {
    const auto gaps = parse_gaps(a.gaps);
    auto table = open_table(a.cache_dir);
    construct::Options options;
    options.table = table.get();
    std::optional<SplitSpec> split;
    if (!a.split.empty()) split = parse_split(a.split);
    const auto results = check_sufficient_conditions(gaps, split, options);
    out << to_json_string(results) << '\n';
    return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Interval tilings by gap-set translates", "gaptile"};
    app.require_subcommand(1);

    ConstructArgs ca;
    auto* construct_cmd = app.add_subcommand("construct", "Build a tiling of an interval for a gap set");
    construct_cmd->add_option("--gaps", ca.gaps, "Gap set d:k,d:k,...")->required();
    construct_cmd->add_option("--split", ca.split, "Split s,p (default: first feasible)");
    construct_cmd->add_option("--out-dir", ca.out_dir, "Directory for tiling.json, trace.json, thresholds.json");
    construct_cmd->add_flag("--thresholds-only", ca.thresholds_only, "Print stage thresholds and stop");
    construct_cmd->add_option("--next-k", ca.next_multiplicity, "Multiplicity of the next distance")
        ->check(CLI::PositiveNumber);
    construct_cmd->add_flag("--save-stages", ca.save_stages, "Also write every intermediate stage");
    construct_cmd->add_option("--cache-dir", ca.cache_dir, "Height table directory");

    SearchArgs sa;
    auto* solve_cmd = app.add_subcommand("solve", "Search for a tiling of a fixed length");
    solve_cmd->add_option("--gaps", sa.gaps, "Gap set d:k,d:k,...")->required();
    solve_cmd->add_option("--len", sa.length, "Interval length")->required()->check(CLI::PositiveNumber);
    solve_cmd->add_option("--out", sa.out, "Witness file");
    solve_cmd->add_option("--max-nodes", sa.max_nodes, "Node budget");
    solve_cmd->add_option("--threads", sa.threads, "Worker threads (0 = sequential)");

    auto* minlen_cmd = app.add_subcommand("minlen", "Find the shortest tiled interval");
    minlen_cmd->add_option("--gaps", sa.gaps, "Gap set d:k,d:k,...")->required();
    minlen_cmd->add_option("--max", sa.max_length, "Largest length tried")->required()->check(CLI::PositiveNumber);
    minlen_cmd->add_option("--out", sa.out, "Witness file");
    minlen_cmd->add_option("--max-nodes", sa.max_nodes, "Node budget per length");
    minlen_cmd->add_option("--threads", sa.threads, "Worker threads (0 = sequential)");

    VerifyArgs va;
    auto* verify_cmd = app.add_subcommand("verify", "Check a tiling file");
    verify_cmd->add_option("file", va.file, "Tiling JSON")->required();
    verify_cmd->add_option("--boundary", va.boundary, "Also check the boundary prefix: d1,count");
    verify_cmd->add_flag("--homogeneous", va.homogeneous, "Check sequences for homogeneity");
    verify_cmd->add_option("--gaps", va.gaps, "Gap set to check against (default: from file)");
    verify_cmd->add_flag("--json", va.json, "Print reports as JSON");

    RenderArgs ra;
    auto* render_cmd = app.add_subcommand("render", "Draw a tiling as SVG or ASCII");
    render_cmd->add_option("file", ra.file, "Tiling JSON")->required();
    render_cmd->add_option("--format", ra.format, "svg or ascii")->check(CLI::IsMember({"svg", "ascii"}));
    render_cmd->add_option("--out", ra.out, "Output file (default: stdout)");
    render_cmd->add_option("--cell", ra.cell, "Cell size in pixels")->check(CLI::Range(2, 400));
    render_cmd->add_option("--seed", ra.seed, "Color seed");
    render_cmd->add_option("--window", ra.window, "Points shown for interval tilings")->check(CLI::PositiveNumber);

    CatalogArgs cat;
    auto* catalog_cmd = app.add_subcommand("catalog", "Run the oracle over all small gap sets");
    catalog_cmd->add_option("--max-distance", cat.cfg.max_distance, "Largest distance D")->check(CLI::PositiveNumber);
    catalog_cmd->add_option("--max-gaps", cat.cfg.max_multiplicity, "Largest total multiplicity K")
        ->check(CLI::Range(2, 64));
    catalog_cmd->add_option("--max-len", cat.cfg.max_length, "Largest interval length")->check(CLI::PositiveNumber);
    catalog_cmd->add_option("--max-nodes", cat.cfg.max_nodes, "Node budget per length");
    catalog_cmd->add_option("--threads", cat.cfg.threads, "Worker threads");
    catalog_cmd->add_option("--out", cat.out, "JSONL file");
    catalog_cmd->add_option("--witness-dir", cat.cfg.witness_dir, "Witness directory");
    catalog_cmd->add_flag("--record-timing", cat.cfg.record_timing, "Store wall time per record");
    catalog_cmd->add_option("--stop-after", cat.stop_after, "Stop after this many new records");

    FvalueArgs fa;
    auto* fvalue_cmd = app.add_subcommand("fvalue", "Least rectangle heights for paths of type {e1^k, e2^l}");
    fvalue_cmd->add_option("--k", fa.k, "Horizontal steps")->required()->check(CLI::PositiveNumber);
    fvalue_cmd->add_option("--l", fa.l, "Vertical steps")->required()->check(CLI::PositiveNumber);
    fvalue_cmd->add_option("--m", fa.m, "Width (default: every width k+1..k+l+1)");
    fvalue_cmd->add_option("--out", fa.out, "Witness file (with --m)");
    fvalue_cmd->add_option("--cache-dir", fa.cache_dir, "Height table directory");
    fvalue_cmd->add_option("--max-height", fa.max_height, "Largest height tried")->check(CLI::PositiveNumber);

    ShapeArgs sh;
    auto* shape_cmd = app.add_subcommand("shape", "Write a stair or diagonal stripe rectangle tiling");
    shape_cmd->add_option("kind", sh.kind, "stair or stripe")->required()->check(CLI::IsMember({"stair", "stripe"}));
    shape_cmd->add_option("--k", sh.k, "stair: horizontal steps");
    shape_cmd->add_option("--l", sh.l, "stair: vertical steps");
    shape_cmd->add_option("--n", sh.n, "stripe: horizontal run");
    shape_cmd->add_option("--kv", sh.kv, "stripe: vertical run");
    shape_cmd->add_option("--m", sh.m, "stripe: size");
    shape_cmd->add_option("--out", sh.out, "Output file (default: stdout)");

    ConditionsArgs co;
    auto* conditions_cmd = app.add_subcommand("conditions", "Evaluate known sufficient conditions");
    conditions_cmd->add_option("--gaps", co.gaps, "Gap set d:k,d:k,...")->required();
    conditions_cmd->add_option("--split", co.split, "Split s,p");
    conditions_cmd->add_option("--cache-dir", co.cache_dir, "Height table directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitIo;
    }

    try {
        if (*construct_cmd) return cmd_construct(ca, out);
        if (*solve_cmd) return cmd_solve(sa, out);
        if (*minlen_cmd) return cmd_minlen(sa, out);
        if (*verify_cmd) return cmd_verify(va, out);
        if (*render_cmd) return cmd_render(ra, out);
        if (*catalog_cmd) return cmd_catalog(cat, out, err);
        if (*fvalue_cmd) return cmd_fvalue(fa, out);
        if (*shape_cmd) return cmd_shape(sh, out);
        if (*conditions_cmd) return cmd_conditions(co, out);
    } catch (const TilingError& e) {
        err << "error: " << describe(e) << '\n';
        return exit_code_for(e);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitIo;
    }
    return kExitIo;
}

}  // namespace gaptile::cli
