#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>

#include "fillnorm/jobs.hpp"

using namespace fillnorm;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const char* tag) {
    fs::path d = fs::temp_directory_path() / (std::string("fillnorm-test-") + tag);
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
}

jobs::JobSpec unit_square_fill(const fs::path& out) {
    jobs::JobSpec j;
    j.task = "fill";
    j.complex_ref = "z2-torus";
    j.target = {{1, "e_x", ""}, {1, "e_y", "x"}, {-1, "e_x", "y"}, {-1, "e_y", ""}};
    j.dim = 1;
    j.radius = 3;
    j.out_dir = out.string();
    return j;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// CSV bodies must be byte-identical across runs; only the header line may
// carry a timestamp.
std::string csv_body(const std::string& csv) {
    auto nl = csv.find('\n');
    return nl == std::string::npos ? csv : csv.substr(nl + 1);
}

}  // namespace

TEST_CASE("a second identical job is served from the cache") {
    auto out = fresh_dir("cache");
    auto first = jobs::run_job(unit_square_fill(out));
    CHECK(!first.from_cache);
    CHECK(first.report.at("value") == 1);
    auto second = jobs::run_job(unit_square_fill(out));
    CHECK(second.from_cache);
    CHECK(second.cache_key == first.cache_key);
    CHECK(second.report == first.report);
}

TEST_CASE("cache keys separate distinct inputs") {
    auto out = fresh_dir("keys");
    auto base = unit_square_fill(out);
    auto k0 = jobs::cache_key(base);

    auto j = base;
    j.radius = 4;
    CHECK(jobs::cache_key(j) != k0);

    j = base;
    j.target[0].coef = -1;
    CHECK(jobs::cache_key(j) != k0);

    j = base;
    j.complex_ref = "z2-redundant";
    CHECK(jobs::cache_key(j) != k0);

    j = base;
    j.caps.max_ilp_nodes = 100;
    CHECK(jobs::cache_key(j) != k0);

    // the output directory is not part of the identity
    j = base;
    j.out_dir = (out / "elsewhere").string();
    CHECK(jobs::cache_key(j) == k0);
}

TEST_CASE("csv report bodies are byte-identical across runs") {
    auto out1 = fresh_dir("det1");
    auto out2 = fresh_dir("det2");
    auto make = [](const fs::path& out) {
        jobs::JobSpec j;
        j.task = "fv";
        j.complex_ref = "z2-torus";
        j.dim = 1;
        j.max_k = 4;
        j.radius = 3;
        j.format = "csv";
        j.out_dir = out.string();
        return j;
    };
    auto a = jobs::run_job(make(out1));
    auto b = jobs::run_job(make(out2));
    CHECK(!b.from_cache);  // different cache directories, so genuinely recomputed
    CHECK(csv_body(a.csv) == csv_body(b.csv));
    REQUIRE(!a.files_written.empty());
    REQUIRE(!b.files_written.empty());
    CHECK(csv_body(slurp(a.files_written.front())) == csv_body(slurp(b.files_written.front())));
    // the fv table ends with the k=4 row
    auto body = csv_body(a.csv);
    CHECK(body.find("4,1,exact,exhaustive") != std::string::npos);
}

TEST_CASE("json report bodies are byte-identical across runs") {
    auto out1 = fresh_dir("jdet1");
    auto out2 = fresh_dir("jdet2");
    auto a = jobs::run_job(unit_square_fill(out1));
    auto b = jobs::run_job(unit_square_fill(out2));
    CHECK(a.report.dump() == b.report.dump());
}

TEST_CASE("jobs may lower caps but need the override to raise them") {
    auto out = fresh_dir("caps");
    auto j = unit_square_fill(out);
    j.config_caps.max_ilp_nodes = 1000;
    j.caps.max_ilp_nodes = 5000;  // above the config ceiling
    auto r = jobs::run_job(j);
    CHECK(r.report.at("caps").at("max_ilp_nodes") == 1000);

    j.cap_override = true;
    j.out_dir = fresh_dir("caps2").string();
    auto r2 = jobs::run_job(j);
    CHECK(r2.report.at("caps").at("max_ilp_nodes") == 5000);
}

TEST_CASE("caps load from a config document") {
    auto out = fresh_dir("config");
    auto path = out / "caps.json";
    std::ofstream(path) << R"({"max_ball": 50000, "max_ilp_nodes": 123, "max_enumeration": 999})";
    auto caps = jobs::load_caps(path.string());
    CHECK(caps.max_ball == 50000);
    CHECK(caps.max_ilp_nodes == 123);
    CHECK(caps.max_enumeration == 999);
    // missing file falls back to defaults
    auto defaults = jobs::load_caps((out / "absent.json").string());
    CHECK(defaults.max_ilp_nodes == 200000);
    // unknown fields are configuration errors
    std::ofstream(path) << R"({"max_ball": 1, "typo": 2})";
    CHECK_THROWS_AS(jobs::load_caps(path.string()), ValidationError);
}

TEST_CASE("document-backed complexes run through the job layer") {
    auto out = fresh_dir("doc");
    auto path = out / "loop.json";
    std::ofstream(path) << R"({
      "version": 1, "name": "doc-gersten", "group": "trivial",
      "orbits": [
        {"id": "v", "dim": 0},
        {"id": "e", "dim": 1},
        {"id": "d2", "dim": 2, "boundary": [{"coef": 2, "target": "e"}]},
        {"id": "d4", "dim": 2, "boundary": [{"coef": 4, "target": "e"}]}
      ]})";
    jobs::JobSpec j;
    j.task = "fill";
    j.complex_ref = path.string();
    j.target = {{4, "e", ""}};
    j.dim = 1;
    j.radius = 0;
    j.out_dir = out.string();
    auto r = jobs::run_job(j);
    CHECK(r.report.at("value") == 1);
}

TEST_CASE("malformed documents fail job validation") {
    auto out = fresh_dir("bad");
    auto path = out / "bad.json";
    std::ofstream(path) << R"({"version": 1, "name": "bad"})";
    jobs::JobSpec j;
    j.task = "fv";
    j.complex_ref = path.string();
    j.out_dir = out.string();
    CHECK_THROWS_AS(jobs::run_job(j), ValidationError);
}

TEST_CASE("confluence jobs report the certified bound") {
    auto out = fresh_dir("confl");
    jobs::JobSpec j;
    j.task = "confluence";
    j.complex_ref = "z2";
    j.max_k = 4;
    j.out_dir = out.string();
    auto r = jobs::run_job(j);
    CHECK(r.report.at("confluent") == true);
}

#ifdef FILLNORM_CLI_PATH
TEST_CASE("the command line front end") {
    const std::string cli = FILLNORM_CLI_PATH;
    auto out = fresh_dir("cli");
    auto run = [&](const std::string& args) {
        std::string cmd = cli + " " + args + " > " + (out / "stdout").string() + " 2> " +
                          (out / "stderr").string();
        int code = std::system(cmd.c_str());
        return WEXITSTATUS(code);
    };

    SUBCASE("list-builtins names the shipped catalog") {
        CHECK(run("list-builtins --format json") == 0);
        auto text = slurp((out / "stdout").string());
        for (const char* name : {"z2-torus", "z3-cubes", "free2", "heisenberg3", "gersten(k)"})
            CHECK(text.find(name) != std::string::npos);
        CHECK(text.find("\"top_dim\": 3") != std::string::npos);
    }

    SUBCASE("a fill run succeeds and reports the value") {
        CHECK(run("fill --complex 'gersten(2)' --dim 1 --radius 0 "
                  "--target '[{\"coef\": 4, \"orbit\": \"e\"}]' --out " +
                  (out / "r").string()) == 0);
        CHECK(slurp((out / "stdout").string()).find("\"value\": 1") != std::string::npos);
    }

    SUBCASE("validation failures exit with 2") {
        CHECK(run("fill --complex no-such-complex --target '[{\"coef\": 1, \"orbit\": \"e\"}]'") == 2);
        CHECK(run("fv --complex z2-torus --mode bogus") == 2);
    }

    SUBCASE("resource exhaustion exits with 3") {
        CHECK(run("fv --complex z2-torus --dim 1 --max-k 6 --radius 3 --max-enum 2 --out " +
                  (out / "r3").string()) == 3);
    }
}
#endif
