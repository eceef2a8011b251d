#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gaptile/cli/app.hpp"

namespace fs = std::filesystem;
using namespace gaptile::cli;

namespace {

struct Outcome {
    int code = 0;
    std::string out;
    std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "gaptile");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Outcome o;
    o.code = run(static_cast<int>(argv.size()), argv.data(), out, err);
    o.out = out.str();
    o.err = err.str();
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("gaptile_cli_" + name + "_" + std::to_string(::getpid()));
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

int run_binary(const std::string& args) {
    const std::string cmd = std::string(GAPTILE_BIN) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("exit codes") {
    CHECK(run_cli({"construct", "--gaps", "1:1,9:1", "--split", "2,0"}).code == kExitOk);
    auto bad = run_cli({"construct", "--gaps", "1:1,8:1", "--split", "2,0"});
    CHECK(bad.code == kExitHypothesis);
    CHECK(bad.err.find("stage 2") != std::string::npos);
    CHECK(bad.err.find("requires d2 >= 9") != std::string::npos);
    CHECK(run_cli({"construct", "--gaps", "1:1,1:2"}).code != kExitOk);
    CHECK(run_cli({"construct", "--gaps", "garbage"}).code == kExitIo);
    CHECK(run_cli({"solve", "--gaps", "1:1,2:1", "--len", "3"}).code == kExitNotFound);
    CHECK(run_cli({"solve", "--gaps", "1:1", "--len", "2"}).code == kExitOk);
    CHECK(run_cli({"verify", "/nonexistent/file.json"}).code == kExitIo);

    CHECK(run_binary("minlen --gaps 1:1,2:1 --max 30") == kExitOk);
    CHECK(run_binary("construct --gaps 1:1,8:1 --split 2,0") == kExitHypothesis);
    CHECK(run_binary("solve --gaps 1:1,2:1 --len 3") == kExitNotFound);
}

TEST_CASE("minlen output") {
    auto r = run_cli({"minlen", "--gaps", "1:1,2:1", "--max", "30"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find('6') != std::string::npos);
}

TEST_CASE("threshold printing") {
    auto r = run_cli({"construct", "--gaps", "1:1,9:1", "--thresholds-only"});
    CHECK(r.code == kExitOk);
    CHECK(r.out.find("3025") != std::string::npos);
    CHECK(r.out.find("2970") != std::string::npos);
}

TEST_CASE("written files verify and are deterministic") {
    const auto a = scratch("det_a");
    const auto b = scratch("det_b");
    for (const auto& dir : {a, b}) {
        auto r = run_cli({"construct", "--gaps", "1:1,9:1,2970:1", "--split", "2,1", "--out-dir", dir.string(),
                          "--save-stages"});
        REQUIRE(r.code == kExitOk);
    }
    for (const auto& entry : fs::directory_iterator(a)) {
        const auto name = entry.path().filename();
        REQUIRE(fs::exists(b / name));
        CHECK_MESSAGE(slurp(a / name) == slurp(b / name), name.string());
    }
    CHECK(run_cli({"verify", (a / "tiling.json").string()}).code == kExitOk);
    CHECK(run_cli({"verify", (a / "stage_2.json").string(), "--boundary", "1,1"}).code == kExitOk);
    CHECK(run_cli({"verify", (a / "homogeneous_base.json").string()}).code == kExitOk);

    // Swap one point between two tiles to break the tiling.
    auto text = slurp(a / "tiling.json");
    const auto pos = text.find("[0,");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 3, "[1,");
    std::ofstream(a / "broken.json", std::ios::binary) << text;
    CHECK(run_cli({"verify", (a / "broken.json").string()}).code == kExitVerification);

    for (const auto& args : std::vector<std::vector<std::string>>{
             {"render", (a / "stage_2.json").string(), "--format", "svg", "--out", "r.svg"},
             {"render", (a / "stage_2.json").string(), "--format", "ascii", "--out", "r.txt"},
             {"shape", "stripe", "--n", "6", "--kv", "2", "--m", "11", "--out", "s.json"},
             {"fvalue", "--k", "1", "--l", "2", "--m", "3", "--out", "f.json"},
             {"solve", "--gaps", "1:1,2:1", "--len", "12", "--out", "w.json"},
         }) {
        std::string first;
        for (const auto& dir : {a, b}) {
            auto full = args;
            for (auto& x : full) {
                if (x.size() > 3 && x.find('.') != std::string::npos && x.find('/') == std::string::npos) {
                    x = (dir / x).string();
                }
            }
            REQUIRE(run_cli(full).code == kExitOk);
            const auto written = slurp(full[full.size() - 1]);
            CHECK(!written.empty());
            if (first.empty()) first = written; else CHECK(first == written);
        }
    }
    CHECK(run_cli({"verify", (a / "s.json").string()}).code == kExitOk);
    CHECK(run_cli({"verify", (a / "f.json").string()}).code == kExitOk);
    CHECK(run_cli({"verify", (a / "w.json").string()}).code == kExitOk);
    fs::remove_all(a);
    fs::remove_all(b);
}

TEST_CASE("render rejects empty documents") {
    const auto dir = scratch("empty");
    std::ofstream(dir / "empty.json") << "{}";
    CHECK(run_cli({"render", (dir / "empty.json").string()}).code == kExitIo);
    fs::remove_all(dir);
}

TEST_CASE("catalog resume matches an uninterrupted run") {
    const auto dir = scratch("catalog");
    const auto whole = (dir / "whole.jsonl").string();
    const auto parts = (dir / "parts.jsonl").string();
    const std::vector<std::string> common{"catalog", "--max-distance", "4", "--max-gaps", "2", "--max-len", "40"};

    auto args = common;
    args.insert(args.end(), {"--out", whole});
    REQUIRE(run_cli(args).code == kExitOk);

    args = common;
    args.insert(args.end(), {"--out", parts, "--stop-after", "3"});
    REQUIRE(run_cli(args).code == kExitOk);
    // Simulate a crash mid-line.
    std::ofstream(parts, std::ios::app) << "{\"index\":3,\"gap";
    args = common;
    args.insert(args.end(), {"--out", parts});
    REQUIRE(run_cli(args).code == kExitOk);

    CHECK(slurp(whole) == slurp(parts));
    std::set<std::string> lines;
    std::istringstream in(slurp(parts));
    std::size_t count = 0;
    for (std::string line; std::getline(in, line); ++count) lines.insert(line);
    CHECK(lines.size() == count);
    CHECK(count == 10);

    args = {"catalog", "--max-distance", "5", "--max-gaps", "2", "--max-len", "40", "--out", parts};
    CHECK(run_cli(args).code != kExitOk);
    fs::remove_all(dir);
}
