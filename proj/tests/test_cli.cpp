#include "doctest.h"

#include "rsm/report.hpp"
#include "rsm/suites.hpp"

#include "json.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

namespace fs = std::filesystem;
using rsm::report::Cell;
using rsm::report::Report;

namespace {

std::string verify_bin() {
    const char* p = std::getenv("RSM_VERIFY_BIN");
    return p ? p : "./verify";
}

int run(const std::string& args) {
    const std::string cmd = verify_bin() + " " + args + " >/dev/null 2>&1";
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() / ("rsm_cli_" + std::to_string(::getpid()));
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

}

TEST_CASE("csv and json writers") {
    Report r;
    r.suite = "demo";
    r.columns = {"a", "b,c"};
    CHECK(rsm::report::to_csv(r) == "a,\"b,c\"\r\n");

    r.add_row({1.0 / 3.0, std::string("say \"hi\"")});
    r.add_row({std::int64_t{7}, Cell{}});
    r.add_row({true, std::string("line\nbreak")});
    CHECK_THROWS_AS(r.add_row({1.0}), std::logic_error);
    CHECK(rsm::report::to_csv(r) ==
          "a,\"b,c\"\r\n"
          "0.33333333333333331,\"say \"\"hi\"\"\"\r\n"
          "7,\r\n"
          "true,\"line\nbreak\"\r\n");

    r.config = {{"x", 2.5}, {"name", std::string("q")}};
    r.summary = {{"worst", 1e-300}};
    r.pass = true;
    const auto j = nlohmann::json::parse(rsm::report::to_json(r));
    CHECK(j["suite"] == "demo");
    CHECK(j["pass"] == true);
    CHECK(j["config"]["x"] == 2.5);
    CHECK(j["rows"].size() == 3);
    CHECK(j["rows"][1]["b,c"].is_null());
    CHECK(j["rows"][0]["a"].get<double>() == 1.0 / 3.0);
    CHECK(r.summary_number("worst") == 1e-300);
    CHECK_THROWS_AS(r.summary_number("missing"), std::out_of_range);
}

TEST_CASE("suite registry and config errors") {
    const auto& names = rsm::suites::suite_names();
    CHECK(names.size() == 15);
    for (const char* s : {"stwist", "kloosterman-avg", "sieve-classical", "sieve-hybrid", "sieve-gallagher", "airy",
                          "stationary-phase", "fresnel", "y-transform", "ghat-log", "voronoi-phi", "hcheck", "afe-v",
                          "conductor", "coeffs"}) {
        CHECK(std::find(names.begin(), names.end(), s) != names.end());
    }
    using rsm::suites::ConfigError;
    CHECK_THROWS_AS(rsm::suites::run_suite({"nope", {}, 0, 1}), ConfigError);
    CHECK_THROWS_AS(rsm::suites::run_suite({"stwist", {{"cmx", "5"}}, 0, 1}), ConfigError);
    CHECK_THROWS_AS(rsm::suites::run_suite({"stwist", {{"cmax", "5x"}}, 0, 1}), ConfigError);
    CHECK_THROWS_AS(rsm::suites::run_suite({"stwist", {{"cmax", "2.5"}}, 0, 1}), ConfigError);
    CHECK_THROWS_AS(rsm::suites::run_suite({"conductor", {{"box", "round"}}, 0, 1}), ConfigError);

    const auto r = rsm::suites::run_suite({"stwist", {{"cmax", "12"}}, 0, 1});
    CHECK(r.pass);
    CHECK(r.rows.size() == 12);
    CHECK(r.summary_number("max_residual") <= 1e-9);
}

TEST_CASE("verify binary: exit codes and reports") {
    TempDir tmp;
    const std::string json = tmp.file("stwist.json");
    REQUIRE(run("stwist --cmax 50 --out " + json) == 0);
    const auto j = nlohmann::json::parse(slurp(json));
    CHECK(j["suite"] == "stwist");
    CHECK(j["config"]["cmax"] == 50.0);
    CHECK(j["config"]["seed"] == 0);
    CHECK(j["pass"] == true);
    CHECK(j["rows"].size() == 50);
    CHECK(j["summary"]["max_residual"].get<double>() <= 1e-9 * 50);

    // unknown suite / key / bad value: exit 1 and nothing written
    const std::string none = tmp.file("none.json");
    CHECK(run("no-such-suite --out " + none) == 1);
    CHECK(run("stwist --bogus 3 --out " + none) == 1);
    CHECK(run("stwist --cmax abc --out " + none) == 1);
    CHECK(run("stwist --cmax") == 1);
    CHECK(run("stwist --format xml") == 1);
    CHECK_FALSE(fs::exists(none));

    // contract failure: the (T, 2T] box has c2/c1 ~ 230 > 100; exit 2, report still written
    const std::string wide = tmp.file("wide.json");
    CHECK(run("conductor --box wide --out " + wide) == 2);
    const auto w = nlohmann::json::parse(slurp(wide));
    CHECK(w["pass"] == false);
    CHECK(w["summary"]["c2_over_c1"].get<double>() > 100.0);

    // csv sweep with its per-row flags
    const std::string csv = tmp.file("hcheck.csv");
    const int st = run("hcheck --T 10 --delta 4 --xmin 150 --xmax 400 --points 3 --out " + csv);
    CHECK((st == 0 || st == 2));
    const std::string text = slurp(csv);
    CHECK(text.rfind("x,oracle_re,oracle_im,leading,cosine,rel_deviation,included", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 4);

    // a passing run with --key=value syntax and explicit format
    CHECK(run("conductor --grid=5 --format csv --out " + tmp.file("c.txt")) == 0);
    CHECK(slurp(tmp.file("c.txt")).rfind("t,tj,q_re,q_im,ratio\r\n", 0) == 0);
}

TEST_CASE("verify binary: determinism") {
    TempDir tmp;
    for (const std::string args : {"sieve-classical --trials 200", "sieve-gallagher --trials 20 --Nmax 300",
                                   "kloosterman-avg --bmax 8 --vectors 5"}) {
        const std::string a = tmp.file("a.json"), b = tmp.file("b.json"), c = tmp.file("c.json");
        REQUIRE(run(args + " --seed 11 --jobs 1 --out " + a) == 0);
        REQUIRE(run(args + " --seed 11 --jobs 3 --out " + b) == 0);
        REQUIRE(run(args + " --seed 12 --out " + c) == 0);
        CHECK(slurp(a) == slurp(b));
        CHECK(slurp(a) != slurp(c));
    }
    const std::string a = tmp.file("a.csv"), b = tmp.file("b.csv");
    REQUIRE(run("sieve-hybrid --seeds 2 --trials 3 --M 200 --seed 5 --out " + a) == 0);
    REQUIRE(run("sieve-hybrid --seeds 2 --trials 3 --M 200 --seed 5 --jobs 2 --out " + b) == 0);
    CHECK(slurp(a) == slurp(b));
}
