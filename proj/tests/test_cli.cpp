#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "atcalc/cli_run.hpp"
#include "support/fixtures.hpp"

using namespace atc;
using testsupport::fixture_path;

namespace {

struct RunResult {
    int code;
    std::string text;
};

RunResult run_cli(RunConfig cfg) {
    std::ostringstream out;
    int code = run(cfg, out);
    return {code, out.str()};
}

RunConfig cmd(std::string command, std::vector<std::string> inputs) {
    RunConfig cfg;
    cfg.command = std::move(command);
    cfg.inputs = std::move(inputs);
    return cfg;
}

bool contains(const std::string& hay, const std::string& needle) {
    return hay.find(needle) != std::string::npos;
}

/* writes content to a throwaway file and hands back the path */
struct TempFile {
    std::string path;
    explicit TempFile(const std::string& content) {
        static int serial = 0;
        path = (std::filesystem::temp_directory_path() /
                ("atcalc_cli_" + std::to_string(++serial) + ".json"))
                   .string();
        std::ofstream(path) << content;
    }
    ~TempFile() { std::remove(path.c_str()); }
};

} // namespace

TEST_CASE("cli: validate") {
    SUBCASE("diagram, text") {
        auto r = run_cli(cmd("validate", {fixture_path("overtwisted_disk.json")}));
        CHECK(r.code == 0);
        CHECK(contains(r.text, "valid: yes"));
        CHECK(contains(r.text, "nice: yes"));
        CHECK(contains(r.text, "admissible: yes"));
    }
    SUBCASE("diagram, json") {
        auto cfg = cmd("validate", {fixture_path("overtwisted_disk.json")});
        cfg.output = "json";
        auto r = run_cli(cfg);
        CHECK(r.code == 0);
        auto j = nlohmann::json::parse(r.text);
        CHECK(j["command"] == "validate");
        CHECK(j["kind"] == "diagram");
        CHECK(j["valid"] == true);
        CHECK(j["violations"].empty());
        CHECK(j["nice"].empty());
        CHECK(j["admissible"] == true);
    }
    SUBCASE("complex fixture warns that differentials are unchecked") {
        auto r = run_cli(cmd("validate", {fixture_path("giroux_torsion.json")}));
        CHECK(r.code == 0);
        CHECK(contains(r.text, "unverified complex"));
    }
    SUBCASE("open book input assembles before validation") {
        auto cfg = cmd("validate", {fixture_path("pob_identity_annulus.json")});
        cfg.output = "json";
        auto r = run_cli(cfg);
        CHECK(r.code == 0);
        auto j = nlohmann::json::parse(r.text);
        CHECK(j["kind"] == "open book");
        CHECK(j["valid"] == true);
    }
    SUBCASE("invalid diagram lists violations and exits 1") {
        auto raw = testsupport::load_fixture("overtwisted_disk.json");
        raw["alpha"][0] = {"x"}; /* y no longer sits on an alpha curve */
        TempFile f(raw.dump());
        auto r = run_cli(cmd("validate", {f.path}));
        CHECK(r.code == 1);
        CHECK(contains(r.text, "valid: no"));
        CHECK(contains(r.text, "violation:"));
    }
    SUBCASE("unreadable file exits 1") {
        auto r = run_cli(cmd("validate", {"/nonexistent/nowhere.json"}));
        CHECK(r.code == 1);
        CHECK(contains(r.text, "error:"));
    }
    SUBCASE("malformed json exits 1") {
        TempFile f("{\"points\": [");
        auto r = run_cli(cmd("validate", {f.path}));
        CHECK(r.code == 1);
        CHECK(contains(r.text, "error:"));
    }
}

TEST_CASE("cli: generators") {
    auto cfg = cmd("generators", {fixture_path("ot_t1_union.json")});
    cfg.output = "json";
    auto r = run_cli(cfg);
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.text);
    CHECK(j["count"] == 2);
    CHECK(j["generators"].size() == 2);
    for (const auto& g : j["generators"]) {
        CHECK(g["cycles"] == 2);
        CHECK(contains(g["name"].get<std::string>(), ",p)"));
    }
}

TEST_CASE("cli: disks") {
    SUBCASE("overtwisted disk, text") {
        auto r = run_cli(cmd("disks", {fixture_path("overtwisted_disk.json")}));
        CHECK(r.code == 0);
        CHECK(contains(r.text, "J+"));
        CHECK(contains(r.text, "bigon"));
        CHECK(contains(r.text, "xy"));
    }
    SUBCASE("giroux fixture, json") {
        auto cfg = cmd("disks", {fixture_path("giroux_torsion.json")});
        cfg.output = "json";
        auto r = run_cli(cfg);
        CHECK(r.code == 0);
        auto j = nlohmann::json::parse(r.text);
        REQUIRE(j["disks"].size() == 13);
        int bigons = 0, rects = 0, jp2 = 0;
        for (const auto& row : j["disks"]) {
            long long two_n = row["two_nxny"].get<long long>();
            long long diff = row["cycle_diff"].get<long long>();
            long long jp = row["j_plus"].get<long long>();
            CHECK(two_n == jp + 1 - diff);
            if (row["shape"] == "bigon") ++bigons;
            if (row["shape"] == "rectangle") ++rects;
            if (jp == 2) ++jp2;
        }
        CHECK(bigons == 5);
        CHECK(rects == 8);
        CHECK(jp2 == 2);
    }
}

TEST_CASE("cli: at") {
    SUBCASE("overtwisted disk, json") {
        auto cfg = cmd("at", {fixture_path("overtwisted_disk.json")});
        cfg.output = "json";
        auto r = run_cli(cfg);
        CHECK(r.code == 0);
        auto j = nlohmann::json::parse(r.text);
        CHECK(j["kind"] == "finite");
        CHECK(j["value"] == 0);
        CHECK(j["eh"] == "x");
        REQUIRE(j["witness"].size() == 1);
        CHECK(j["witness"][0] == nlohmann::json::array({"y"}));
    }
    SUBCASE("giroux fixture, text") {
        auto r = run_cli(cmd("at", {fixture_path("giroux_torsion.json")}));
        CHECK(r.code == 0);
        CHECK(contains(r.text, "AT = 2"));
        CHECK(contains(r.text, "c0 ="));
        CHECK(contains(r.text, "c2 ="));
    }
    SUBCASE("zero differential is undetermined under a cap") {
        auto r = run_cli(cmd("at", {fixture_path("zero_differential.json")}));
        CHECK(r.code == 2);
        CHECK(contains(r.text, "undetermined"));
    }
    SUBCASE("zero differential is infinite with the exact backend") {
        auto cfg = cmd("at", {fixture_path("zero_differential.json")});
        cfg.exact = true;
        auto r = run_cli(cfg);
        CHECK(r.code == 0);
        CHECK(contains(r.text, "AT = infinity"));
    }
}

TEST_CASE("cli: pages") {
    auto cfg = cmd("pages", {fixture_path("overtwisted_disk.json")});
    cfg.output = "json";
    cfg.r_max = 2;
    cfg.p_max = 1;
    auto r = run_cli(cfg);
    CHECK(r.code == 0);
    auto j = nlohmann::json::parse(r.text);
    REQUIRE(j["dims"].size() == 3);
    CHECK(j["dims"][0] == nlohmann::json::array({2, 2}));
    CHECK(j["dims"][1] == nlohmann::json::array({0, 0}));
    CHECK(j["dims"][2] == nlohmann::json::array({0, 0}));
}

TEST_CASE("cli: glue") {
    std::vector<std::string> ot_union = {fixture_path("overtwisted_disk.json"),
                                         fixture_path("ot_t1_union.json"),
                                         fixture_path("map_ot_into_union.json")};
    SUBCASE("overtwisted into union holds") {
        auto cfg = cmd("glue", ot_union);
        cfg.output = "json";
        auto r = run_cli(cfg);
        CHECK(r.code == 0);
        auto j = nlohmann::json::parse(r.text);
        CHECK(j["embedding"] == "ok");
        CHECK(j["commutes"] == true);
        CHECK(j["verdict"] == "holds");
        CHECK(j["witness_transported"] == true);
    }
    SUBCASE("torus piece is inconclusive under a cap, holds exactly") {
        std::vector<std::string> t1 = {fixture_path("torus_once_punctured.json"),
                                       fixture_path("ot_t1_union.json"),
                                       fixture_path("map_t1_into_union.json")};
        auto r = run_cli(cmd("glue", t1));
        CHECK(r.code == 2);
        CHECK(contains(r.text, "inconclusive"));
        auto cfg = cmd("glue", t1);
        cfg.exact = true;
        auto rx = run_cli(cfg);
        CHECK(rx.code == 0);
        CHECK(contains(rx.text, "holds"));
        CHECK(contains(rx.text, "AT(sub) = infinity"));
    }
    SUBCASE("broken chain map exits 1") {
        auto cfg = cmd("glue", {fixture_path("overtwisted_disk.json"),
                                fixture_path("ot_chi_tweak.json"),
                                fixture_path("map_ot_identity.json")});
        auto r = run_cli(cfg);
        CHECK(r.code == 1);
        CHECK(contains(r.text, "chain map commutes: no"));
    }
    SUBCASE("glue rejects non-diagram inputs") {
        auto cfg = cmd("glue", {fixture_path("giroux_torsion.json"),
                                fixture_path("ot_t1_union.json"),
                                fixture_path("map_ot_into_union.json")});
        auto r = run_cli(cfg);
        CHECK(r.code == 1);
        CHECK(contains(r.text, "diagram"));
    }
}

TEST_CASE("cli: argument errors and determinism") {
    SUBCASE("wrong input count") {
        auto r = run_cli(cmd("at", {"a.json", "b.json"}));
        CHECK(r.code == 1);
        CHECK(contains(r.text, "error:"));
    }
    SUBCASE("unknown command") {
        auto r = run_cli(cmd("frobnicate", {fixture_path("overtwisted_disk.json")}));
        CHECK(r.code == 1);
        CHECK(contains(r.text, "error:"));
    }
    SUBCASE("byte identical reruns") {
        for (const char* command : {"validate", "generators", "disks", "at", "pages"}) {
            for (const char* output : {"text", "json"}) {
                auto cfg = cmd(command, {fixture_path("giroux_torsion.json")});
                cfg.output = output;
                auto a = run_cli(cfg);
                auto b = run_cli(cfg);
                CHECK(a.code == b.code);
                CHECK(a.text == b.text);
            }
        }
    }
}
