#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <unistd.h>

#include "rcm/io.hpp"

// The CLI binary path arrives as the test's command-line argument.
static const char* rcm_cli_binary = nullptr;
static std::string cli_path() { return rcm_cli_binary; }

namespace {

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() /
               ("rcm_cli_test_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }
};

int run(const std::string& args) {
    int rc = std::system((cli_path() + " " + args + " > /dev/null 2>&1").c_str());
    return WEXITSTATUS(rc);
}

void write(const std::filesystem::path& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
}

}  // namespace

TEST_CASE("cli wiring" * doctest::skip(false)) {
    REQUIRE(rcm_cli_binary != nullptr);
    TempDir tmp;
    const std::string out = " --out-dir " + tmp.path.string();

    SUBCASE("exact: triangle Z grid") {
        write(tmp.path / "exact.cfg",
              "graph = triangle\np_values = 0.1,0.3,0.5,0.7,0.9\nq_values = 0.5,1,2,4,8\n");
        CHECK(run("exact --config " + (tmp.path / "exact.cfg").string() + out) == 0);
        std::string doc = rcm::read_file((tmp.path / "exact.json").string());
        CHECK(doc.find("\"partition\"") != std::string::npos);
        CHECK(doc.find("rank_polynomial") != std::string::npos);
        CHECK(doc.find("config_hash") != std::string::npos);
    }

    SUBCASE("exact: q=1 gives Z=1 rows") {
        write(tmp.path / "q1.cfg", "graph = cycle:4\np_values = 0.3\nq_values = 1\n");
        CHECK(run("exact --config " + (tmp.path / "q1.cfg").string() + out) == 0);
        std::string doc = rcm::read_file((tmp.path / "exact.json").string());
        CHECK(doc.find("\"value\": 1.0") != std::string::npos);
    }

    SUBCASE("sample: cftp dumps hex lines, identical bytes for same seed") {
        write(tmp.path / "s.cfg",
              "graph = box:3x3\nsampler = cftp\np = 0.6\nq = 2\nsamples = 50\n");
        CHECK(run("sample --config " + (tmp.path / "s.cfg").string() + " --seed 99" + out) == 0);
        std::string first = rcm::read_file((tmp.path / "samples.txt").string());
        CHECK(run("sample --config " + (tmp.path / "s.cfg").string() + " --seed 99" + out) == 0);
        CHECK(rcm::read_file((tmp.path / "samples.txt").string()) == first);
        // 3 header lines + 50 hex lines
        CHECK(std::count(first.begin(), first.end(), '\n') == 53);
    }

    SUBCASE("sample: cftp with q < 1 is refused") {
        write(tmp.path / "bad.cfg",
              "graph = triangle\nsampler = cftp\np = 0.5\nq = 0.5\nsamples = 1\nseed = 1\n");
        CHECK(run("sample --config " + (tmp.path / "bad.cfg").string() + out) == 2);
    }

    SUBCASE("sample: sw with non-integer q is an argument error") {
        write(tmp.path / "swq.cfg",
              "graph = triangle\nsampler = sw\np = 0.5\nq = 1.5\nsamples = 1\nseed = 1\n");
        CHECK(run("sample --config " + (tmp.path / "swq.cfg").string() + out) == 2);
    }

    SUBCASE("sample: missing seed is an error") {
        write(tmp.path / "noseed.cfg",
              "graph = triangle\nsampler = cftp\np = 0.5\nq = 2\nsamples = 1\n");
        CHECK(run("sample --config " + (tmp.path / "noseed.cfg").string() + out) == 2);
    }

    SUBCASE("scan: single grid point emits one data row") {
        write(tmp.path / "scan.cfg",
              "q = 2\np_values = 0.5\nboxes = 1\nsamples = 200\nseed = 5\n");
        CHECK(run("scan --config " + (tmp.path / "scan.cfg").string() + out) == 0);
        std::string csv = rcm::read_file((tmp.path / "scan.csv").string());
        CHECK(csv.find("# self_dual_point=") != std::string::npos);
        CHECK(csv.find("p,box,b,") != std::string::npos);
    }

    SUBCASE("meanfield: q=1 lambda=2 carries the theta prediction column") {
        write(tmp.path / "mf.cfg",
              "n = 400\nlambda = 2\nq = 1\nsamples = 4\nseed = 11\n");
        CHECK(run("meanfield --config " + (tmp.path / "mf.cfg").string() + out) == 0);
        std::string csv = rcm::read_file((tmp.path / "meanfield.csv").string());
        CHECK(csv.find("0.796812") != std::string::npos);
    }

    SUBCASE("dual: triangle verdict true") {
        write(tmp.path / "dual.cfg", "graph = triangle\np = 0.3\nq = 2\n");
        CHECK(run("dual --config " + (tmp.path / "dual.cfg").string() + out) == 0);
        std::string txt = rcm::read_file((tmp.path / "dual.txt").string());
        CHECK(txt.find("identity_check = true") != std::string::npos);
        CHECK(txt.find("bijection") != std::string::npos);
    }

    SUBCASE("unknown config key is rejected") {
        write(tmp.path / "junk.cfg", "graph = triangle\np = 0.3\nq = 2\nbogus = 1\n");
        CHECK(run("dual --config " + (tmp.path / "junk.cfg").string() + out) == 2);
    }

    SUBCASE("check: battery passes and writes verdicts") {
        CHECK(run(std::string("check") + out) == 0);
        std::string doc = rcm::read_file((tmp.path / "check.json").string());
        CHECK(doc.find("\"all_pass\": true") != std::string::npos);
    }
}

int main(int argc, char** argv) {
    if (argc > 1) rcm_cli_binary = argv[argc - 1];
    doctest::Context ctx;
    ctx.applyCommandLine(argc - (argc > 1 ? 1 : 0), argv);
    return ctx.run();
}

TEST_CASE("RCM_OUT_DIR provides the default output directory") {
    TempDir tmp;
    int rc = std::system(("RCM_OUT_DIR=" + tmp.path.string() + " " + cli_path() +
                          " check > /dev/null 2>&1")
                             .c_str());
    CHECK(WEXITSTATUS(rc) == 0);
    CHECK(std::filesystem::exists(tmp.path / "check.json"));
}
