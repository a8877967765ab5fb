#include <doctest.h>

#include <filesystem>
#include <cmath>
#include <sstream>
#include <unistd.h>
#include <string>

#include "cli_support.hpp"
#include "it2fuzzy/pendulum.hpp"

namespace fs = std::filesystem;
using cli_support::run_it2sim;
using cli_support::slurp;

namespace {

const fs::path kSource = IT2FUZZY_SOURCE_DIR;

struct TempDir {
    fs::path path;
    TempDir() : path(fs::temp_directory_path() / ("it2sim_cli_" + std::to_string(::getpid()))) {
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

std::string cfg(const char* name) { return "\"" + (kSource / "configs" / name).string() + "\""; }

}  // namespace

TEST_CASE("simulate writes a decaying trace and a metrics line") {
    TempDir tmp;
    const auto out = tmp.path / "t1.csv";
    REQUIRE(run_it2sim("simulate --config " + cfg("pendulum_t1.json") + " --controller t1 --out \"" + out.string() + "\"",
                       tmp.path / "log") == 0);
    CHECK(slurp(tmp.path / "log").find("settled=1") != std::string::npos);
    std::istringstream in(slurp(out));
    const auto rows = it2fuzzy::read_trace_csv(in);
    REQUIRE(rows.size() == 5001);
    CHECK(rows.front().y == 0.1);
    CHECK(std::abs(rows.back().y) < 0.005);
}

TEST_CASE("simulate is byte-identical for a fixed seed") {
    TempDir tmp;
    const std::string base = "simulate --config " + cfg("pendulum_it2.json") + " --controller it2 --noise-sigma 0.01 --seed 4 --out ";
    REQUIRE(run_it2sim(base + "\"" + (tmp.path / "a.csv").string() + "\"", tmp.path / "log") == 0);
    REQUIRE(run_it2sim(base + "\"" + (tmp.path / "b.csv").string() + "\"", tmp.path / "log") == 0);
    CHECK(slurp(tmp.path / "a.csv") == slurp(tmp.path / "b.csv"));
    REQUIRE(run_it2sim("simulate --config " + cfg("pendulum_it2.json") +
                           " --controller it2 --noise-sigma 0.01 --seed 5 --out \"" + (tmp.path / "c.csv").string() +
                           "\"",
                       tmp.path / "log") == 0);
    CHECK(slurp(tmp.path / "a.csv") != slurp(tmp.path / "c.csv"));
}

TEST_CASE("usage and config errors exit with 2") {
    TempDir tmp;
    CHECK(run_it2sim("simulate --config \"" + (tmp.path / "missing.json").string() + "\" --controller t1 --out x.csv",
                     tmp.path / "log") == 2);
    CHECK(slurp(tmp.path / "log").find("missing.json") != std::string::npos);
    CHECK(run_it2sim("simulate --config " + cfg("pendulum_t1.json") + " --controller t3 --out x.csv", tmp.path / "log") ==
          2);
    CHECK(run_it2sim("frobnicate", tmp.path / "log") == 2);
    CHECK(run_it2sim("simulate --config " + cfg("pendulum_t1.json") + " --controller t1 --noise-sigma -1 --out \"" +
                         (tmp.path / "x.csv").string() + "\"",
                     tmp.path / "log") == 2);
    CHECK(slurp(tmp.path / "log").find("--noise-sigma") != std::string::npos);
}

TEST_CASE("verify passes by default and fails with zero tolerance") {
    TempDir tmp;
    CHECK(run_it2sim("verify --cases 100", tmp.path / "log") == 0);
    CHECK(slurp(tmp.path / "log").find("all suites passed") != std::string::npos);
    CHECK(run_it2sim("verify --cases 100 --tolerance 0", tmp.path / "log") == 1);
    CHECK(slurp(tmp.path / "log").find("[FAIL]") != std::string::npos);
}

TEST_CASE("compare writes the report files and a gnuplot script") {
    TempDir tmp;
    const auto out = tmp.path / "nf";
    REQUIRE(run_it2sim("compare --spec \"" + (kSource / "experiments/noise_free.json").string() + "\" --plot --out \"" +
                           out.string() + "\"",
                       tmp.path / "log") == 0);
    for (const char* f : {"runs.csv", "summary.csv", "deltas.csv", "report.txt", "plot.gp", "traces/t1_seed1.csv",
                          "traces/it2_seed1.csv"}) {
        CHECK(fs::exists(out / f));
    }
    const std::string plot = slurp(out / "plot.gp");
    // Every data file the script references exists.
    std::size_t pos = 0;
    int refs = 0;
    while ((pos = plot.find("traces/", pos)) != std::string::npos) {
        const auto end = plot.find_first_of("'\"", pos);
        CHECK(fs::exists(out / plot.substr(pos, end - pos)));
        pos = end;
        ++refs;
    }
    CHECK(refs == 2);
    CHECK(slurp(out / "report.txt").find("PASS") != std::string::npos);
}

TEST_CASE("bench writes the declared CSV") {
    TempDir tmp;
    const auto out = tmp.path / "bench.csv";
    REQUIRE(run_it2sim("bench --cases 5 --grid-sizes 101,201 --out \"" + out.string() + "\"", tmp.path / "log") == 0);
    std::istringstream in(slurp(out));
    std::string line;
    std::getline(in, line);
    CHECK(line == "method,grid_size,case_id,y,iterations,nanoseconds");
    int combine = 0;
    int km = 0;
    while (std::getline(in, line)) {
        if (line.rfind("combine_centroid,", 0) == 0) {
            ++combine;
            CHECK(line.find(",n/a,") != std::string::npos);
        } else if (line.rfind("km_defuzz,", 0) == 0) {
            ++km;
            std::istringstream f(line);
            std::string cell;
            for (int i = 0; i < 5; ++i) std::getline(f, cell, ',');
            CHECK(std::stoi(cell) >= 1);
        }
    }
    CHECK(combine == 10);
    CHECK(km == 10);
}
