#include <cstdlib>
#include <filesystem>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"
#include "rpsp/brute_force.hpp"
#include "rpsp/decomposition.hpp"
#include "rpsp/generate.hpp"
#include "rpsp/instance_io.hpp"
#include "rpsp/laminar.hpp"
#include "rpsp/treedp.hpp"
#include "test_support.hpp"

using namespace rpsp;
using rpsp::cli::run_cli;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
    const char* base = std::getenv("RPSP_TEST_TMP");
    fs::path dir = base && *base ? fs::path(base) : fs::temp_directory_path() / "rpsp_cli_test";
    dir /= name;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

std::string write(const fs::path& dir, const std::string& name, const Instance& inst) {
    auto path = (dir / name).string();
    write_instance_file(inst, path);
    return path;
}

}  // namespace

TEST_CASE("solve dispatch") {
    auto dir = scratch("solve");
    unsetenv("RPSP_SEED");

    auto lam = laminar::generate_laminar({9, 4});
    auto r = run({"solve", write(dir, "lam.json", lam)});
    REQUIRE(r.code == 0);
    auto rec = nlohmann::json::parse(r.out);
    CHECK(rec["algorithm"] == "laminar");
    CHECK(rec["value"].get<double>() == brute_force(lam).value);
    CHECK(rec["seed"].is_null());
    CHECK(rec["instance_digest"] == instance_digest(lam));
    for (const char* key : {"selection", "wall_time_ms"}) CHECK(rec.contains(key));

    auto cover = generate({6, 4, 4, 0.5, 3, ObjectiveMode::CoverRewardHitPenalty});
    r = run({"solve", write(dir, "cover.json", cover)});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["algorithm"] == "mincut");

    auto general = generate({8, 6, 6, 0.6, 10});
    REQUIRE_FALSE(laminar::is_laminar(general));
    r = run({"solve", write(dir, "general.json", general)});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["algorithm"] == "brute");

    auto big = generate({30, 10, 10, 0.3, 5});
    REQUIRE_FALSE(laminar::is_laminar(big));
    r = run({"solve", write(dir, "big.json", big)});
    CHECK(r.code == 3);
    CHECK(r.err.find("export-lp") != std::string::npos);

    auto c = treedp::generate_treedp_case({10, 2, 0.4, 7});
    auto inst_path = write(dir, "td.json", c.instance);
    auto td_path = (dir / "td.td").string();
    write_text_file(td_path, to_pace_td(c.decomposition, treedp::build_reduced_graph(c.instance).node_count()));
    r = run({"solve", inst_path, "--decomposition", td_path, "--algorithm", "treedp"});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["value"].get<double>() == brute_force(c.instance).value);

    setenv("RPSP_SEED", "77", 1);
    r = run({"solve", write(dir, "general2.json", general)});
    CHECK(nlohmann::json::parse(r.out)["seed"] == 77);
    unsetenv("RPSP_SEED");

    CHECK(run({"solve", (dir / "missing.json").string()}).code == 2);
    write_text_file((dir / "junk.json").string(), "{\"n\": 1, \"oops\": 2}");
    CHECK(run({"solve", (dir / "junk.json").string()}).code == 2);
}

TEST_CASE("solve output passes check") {
    auto dir = scratch("check");
    auto inst = generate({7, 5, 5, 0.5, 12});
    auto path = write(dir, "i.json", inst);
    auto rec_path = (dir / "rec.json").string();
    REQUIRE(run({"solve", path, "-o", rec_path}).code == 0);
    auto r = run({"check", path, rec_path});
    CHECK(r.code == 0);
    CHECK(r.out.find("value ") == 0);

    auto rec = nlohmann::json::parse(read_text_file(rec_path));
    rec["value"] = rec["value"].get<double>() + 1;
    write_text_file(rec_path, rec.dump());
    r = run({"check", path, rec_path});
    CHECK(r.code == 1);
    CHECK(r.err.find("mismatch") != std::string::npos);

    write_text_file(rec_path, R"({"members": [99]})");
    CHECK(run({"check", path, rec_path}).code == 2);
}

TEST_CASE("gen files") {
    auto dir = scratch("gen");
    auto a = dir / "a";
    auto b = dir / "b";
    fs::create_directories(a);
    fs::create_directories(b);
    unsetenv("RPSP_SEED");
    auto common = std::vector<std::string>{"gen", "--n", "12", "--r", "5", "--p", "5", "--beta", "0.5", "--seed", "9",
                                           "--count", "3", "--out-dir"};
    auto args_a = common;
    args_a.push_back(a.string());
    auto args_b = common;
    args_b.push_back(b.string());
    REQUIRE(run(args_a).code == 0);
    REQUIRE(run(args_b).code == 0);
    for (const char* name : {"instance_0000.json", "instance_0001.json", "instance_0002.json"})
        CHECK(read_text_file((a / name).string()) == read_text_file((b / name).string()));

    auto zero = dir / "zero";
    fs::create_directories(zero);
    CHECK(run({"gen", "--count", "0", "--out-dir", zero.string()}).code == 0);
    CHECK(fs::is_empty(zero));

    CHECK(run({"gen", "--n", "0", "--r", "1", "--out-dir", zero.string()}).code == 2);

    auto lam = dir / "lam";
    fs::create_directories(lam);
    REQUIRE(run({"gen", "--laminar", "--n", "10", "--count", "2", "--out-dir", lam.string()}).code == 0);
    CHECK(laminar::is_laminar(read_instance_file((lam / "instance_0001.json").string())));
}

TEST_CASE("bench output") {
    unsetenv("RPSP_SEED");
    auto r = run({"bench", "--config", "6,6,6,1.0", "--trials", "10"});
    CHECK(r.code == 0);
    auto first_line = r.out.substr(0, r.out.find('\n'));
    CHECK(first_line == "n,r,p,beta,delta_avg,delta_max,alpha_avg,alpha_min");
    CHECK(r.out.find("\n6,6,6,1,") != std::string::npos);

    r = run({"bench", "--config", "6,6,6,1.0", "--trials", "0"});
    CHECK(r.code == 0);
    CHECK(r.out == "n,r,p,beta,delta_avg,delta_max,alpha_avg,alpha_min\n");

    r = run({"bench", "--config", "100,100,100,0.25", "--trials", "5", "--exact", "brute"});
    CHECK(r.code == 3);
    CHECK(r.out.find("# reference 100,100,100,0.25,13.743,31,0.958,0.574") != std::string::npos);

    CHECK(run({"bench", "--config", "bad"}).code == 2);
}

TEST_CASE("export-lp") {
    auto dir = scratch("lp");
    auto inst = test::make_instance(2, {{{1, 2}, 3}}, {{{1}, 2}});
    auto path = write(dir, "i.json", inst);
    auto r = run({"export-lp", path});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("Binary") != std::string::npos);
    CHECK(r.out.find("Subject To") != std::string::npos);
    r = run({"export-lp", path, "--relaxed"});
    CHECK(r.out.find("Bounds") != std::string::npos);
    CHECK(r.out.find("Binary") == std::string::npos);

    auto empty = write(dir, "e.json", Instance{0, {}, {}, ObjectiveMode::HitRewardCoverPenalty});
    r = run({"export-lp", empty});
    CHECK(r.code == 0);
    CHECK(r.out.find("Subject To") == std::string::npos);
    CHECK(r.out.find("obj: 0") != std::string::npos);
}

TEST_CASE("graph and subgraph tools") {
    auto dir = scratch("graphs");
    auto inst = test::make_instance(3, {{{1}, 1}, {{2}, 1}}, {{{1, 2}, 1}, {{2, 3}, 1}});
    auto path = write(dir, "i.json", inst);
    auto td = (dir / "i.td").string();
    auto r = run({"reduced-graph", path, "--td", td});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("p tw 5 4", 0) == 0);
    CHECK(read_text_file(td).rfind("s td ", 0) == 0);

    auto gpath = (dir / "c4.gr").string();
    write_text_file(gpath, "p tw 4 4\ne 1 2\ne 2 3\ne 3 4\ne 1 4\n");
    r = run({"decompose", gpath});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("s td ", 0) == 0);

    auto star = (dir / "star.json").string();
    REQUIRE(run({"sgsp", "star", gpath, "-o", star}).code == 0);
    r = run({"sgsp", "solve", star});
    REQUIRE(r.code == 0);
    CHECK(nlohmann::json::parse(r.out)["value"].get<double>() == 7);
    r = run({"sgsp", "decompose", star});
    CHECK(r.code == 0);
    CHECK(r.out.rfind("c width ", 0) == 0);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    auto help = run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("Exit codes") != std::string::npos);
}
